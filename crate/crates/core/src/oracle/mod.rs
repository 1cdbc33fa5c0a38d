//! Ground truth for Chow rings of small loopless matroids: exact linear
//! algebra on graded slices of the x-presentation, and an independent count
//! of a monomial basis along chains of flats.

mod lattice;
mod linalg;
mod ring;

pub use lattice::FlatsLattice;
pub use ring::{ChowRing, RingElement, XPolynomial, DEFAULT_COLUMN_LIMIT};

use crate::boolean::HilbertSeries;
use crate::poly::IntPolynomial;
use crate::Result;

/// Graded dimensions of `CH(M)` by row reduction.
pub fn hilbert_series(lattice: &FlatsLattice) -> Result<HilbertSeries> {
    ChowRing::new(lattice.clone()).hilbert_series()
}

/// Graded dimensions of the principal ideal generated by `h_E^m`.
pub fn principal_ideal_hilbert(lattice: &FlatsLattice, m: usize) -> Result<HilbertSeries> {
    ChowRing::new(lattice.clone()).principal_ideal_hilbert(m)
}

/// Counts monomials `∏ x_{F_i}^{a_i}` over chains `∅ = F_0 ⊊ F_1 ⊊ ... ⊊ F_k`
/// with `1 <= a_i <= rk F_i - rk F_{i-1} - 1`, by degree.
pub fn fy_chain_count(lattice: &FlatsLattice) -> HilbertSeries {
    let flats = lattice.flats();
    // ending[i]: generating function of admissible chains whose top flat is flats[i]
    let mut ending: Vec<IntPolynomial> = vec![IntPolynomial::zero(); flats.len()];
    ending[0] = IntPolynomial::one();
    for j in 1..flats.len() {
        let mut acc = IntPolynomial::zero();
        for i in 0..j {
            if !flats[i].is_proper_subset_of(flats[j]) || ending[i].is_zero() {
                continue;
            }
            let gap = lattice.rank_at(j) - lattice.rank_at(i);
            let exps: Vec<u64> = (0..gap).map(|e| u64::from(e >= 1)).collect();
            acc = &acc + &(&ending[i] * &IntPolynomial::from_counts(&exps));
        }
        ending[j] = acc;
    }
    ending.into_iter().sum()
}
