//! Eulerian and derangement polynomials, each by two enumerations.

use super::IntPolynomial;
use crate::ground::{
    ascents, is_derangement, par_fold_inversion_sequences, par_fold_permutations, GroundSet,
};
use crate::{check_enumeration_size, Error, Result};

fn add_tables(mut a: Vec<Vec<u64>>, b: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    for (ra, rb) in a.iter_mut().zip(b) {
        ra.iter_mut().zip(rb).for_each(|(x, y)| *x += y);
    }
    a
}

/// Histogram of `(e_n, asc(e))` over the inversion sequences accepted by `keep`.
fn last_ascent_table(n: usize, keep: fn(&[u8]) -> bool) -> Vec<Vec<u64>> {
    par_fold_inversion_sequences(
        n,
        vec![vec![0u64; n]; n],
        |mut acc, e| {
            let ent = e.entries();
            if keep(ent) {
                acc[ent[n - 1] as usize][ascents(ent)] += 1;
            }
            acc
        },
        add_tables,
    )
}

fn row_sum(table: &[Vec<u64>]) -> IntPolynomial {
    table.iter().map(|row| IntPolynomial::from_counts(row)).sum()
}

fn check(n: usize, min: usize, what: &str) -> Result<()> {
    if n < min {
        return Err(Error::Precondition(format!("{what} needs n >= {min}, got {n}")));
    }
    check_enumeration_size(what, n)
}

/// `A^i_n = Σ_{e ∈ I_n, e_n = i} t^{asc(e)}` for `i = 0, ..., n-1`.
pub fn eulerian_refined(n: usize) -> Result<Vec<IntPolynomial>> {
    check(n, 1, "eulerian polynomial")?;
    Ok(last_ascent_table(n, |_| true)
        .iter()
        .map(|row| IntPolynomial::from_counts(row))
        .collect())
}

/// `A_n = Σ_{e ∈ I_n} t^{asc(e)}`.
pub fn eulerian(n: usize) -> Result<IntPolynomial> {
    check(n, 1, "eulerian polynomial")?;
    Ok(row_sum(&last_ascent_table(n, |_| true)))
}

/// `A_n = Σ_{σ ∈ S_n} t^{des(σ)}`.
pub fn eulerian_by_descents(n: usize) -> Result<IntPolynomial> {
    check(n, 1, "eulerian polynomial")?;
    let ground = GroundSet::canonical(n)?;
    let hist = par_fold_permutations(
        &ground,
        vec![0u64; n],
        |mut acc, p| {
            acc[p.descents()] += 1;
            acc
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );
    Ok(IntPolynomial::from_counts(&hist))
}

/// `d^i_n = Σ_{e ∈ D_n, e_n = i} t^{asc(e)}` for `i = 0, ..., n-1`; `d^0_n = 0`.
pub fn derangement_refined(n: usize) -> Result<Vec<IntPolynomial>> {
    check(n, 2, "derangement polynomial")?;
    Ok(last_ascent_table(n, is_derangement)
        .iter()
        .map(|row| IntPolynomial::from_counts(row))
        .collect())
}

/// `d_n = Σ_{e ∈ D_n} t^{asc(e)}`.
pub fn derangement_poly(n: usize) -> Result<IntPolynomial> {
    check(n, 2, "derangement polynomial")?;
    Ok(row_sum(&last_ascent_table(n, is_derangement)))
}

/// `d_n = Σ_{σ derangement} t^{exc(σ)}`.
pub fn derangement_poly_by_excedance(n: usize) -> Result<IntPolynomial> {
    check(n, 2, "derangement polynomial")?;
    let ground = GroundSet::canonical(n)?;
    let hist = par_fold_permutations(
        &ground,
        vec![0u64; n],
        |mut acc, p| {
            let v = p.values();
            if v.iter().enumerate().all(|(i, &x)| x as usize != i + 1) {
                acc[v.iter().enumerate().filter(|(i, &x)| x as usize > i + 1).count()] += 1;
            }
            acc
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );
    Ok(IntPolynomial::from_counts(&hist))
}
