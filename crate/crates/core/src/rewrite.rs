//! The g-presentation of `CH(B_E)`: expansions of g-generators, the rewriting
//! map `g_n` (multiplication by `g_E = h_E`) on inversion sequences, the sets
//! `D^k_n` by iteration and by recursion, and uniform Chow polynomials.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boolean::{HilbertSeries, NormalMonomial};
use crate::ground::{
    ascents, first_zero, inversion_sequences, is_derangement, par_fold_inversion_sequences,
    GroundSet, InversionSequence, Subset,
};
use crate::poly::IntPolynomial;
use crate::{check_enumeration_size, Error, Result};

/// The generator `g_F` of a boolean matroid. Its generation is `max F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GGenerator {
    flat: Subset,
}

impl GGenerator {
    pub fn new(flat: Subset) -> Result<Self> {
        if flat.is_empty() {
            return Err(Error::Precondition("g-generators need a nonempty flat".into()));
        }
        Ok(Self { flat })
    }

    pub fn flat(&self) -> Subset {
        self.flat
    }

    pub fn generation(&self) -> u32 {
        self.flat.max().expect("nonempty")
    }

    /// Index set of the x-expansion, see [`g_expand`].
    pub fn expand(&self, ground: &GroundSet) -> Result<Vec<Subset>> {
        g_expand(self.flat, ground)
    }
}

/// `{F ∪ S : S ⊆ E_{>max F}}`, sorted by bitmask: `g_F` is the sum of `x_G` over it.
pub fn g_expand(f: Subset, ground: &GroundSet) -> Result<Vec<Subset>> {
    let all = ground.as_subset();
    let Some(top) = f.max() else {
        return Err(Error::Precondition("g_expand needs a nonempty flat".into()));
    };
    if !f.is_subset_of(all) {
        return Err(Error::Precondition(format!("{f} is not a subset of {all}")));
    }
    let mut out: Vec<Subset> = all.above(top).subsets().map(|s| f.union(s)).collect();
    out.sort();
    Ok(out)
}

/// Image of the rewriting map: a normal monomial's inversion sequence, or zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RewriteResult {
    Zero,
    Sequence(InversionSequence),
}

impl RewriteResult {
    pub fn is_zero(&self) -> bool {
        matches!(self, Self::Zero)
    }

    pub fn sequence(&self) -> Option<&InversionSequence> {
        match self {
            Self::Zero => None,
            Self::Sequence(e) => Some(e),
        }
    }
}

impl fmt::Display for RewriteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Zero => f.write_str("ZERO"),
            Self::Sequence(e) => e.fmt(f),
        }
    }
}

impl Serialize for RewriteResult {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Zero => serializer.serialize_str("ZERO"),
            Self::Sequence(e) => e.serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for RewriteResult {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Marker(String),
            Sequence(InversionSequence),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Marker(s) if s == "ZERO" => Ok(Self::Zero),
            Repr::Marker(s) => Err(serde::de::Error::custom(format!("unexpected marker '{s}'"))),
            Repr::Sequence(e) => Ok(Self::Sequence(e)),
        }
    }
}

/// Which branch of the rewriting map handles a sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteCase {
    /// `n = 1`: the product lands in degree 2 of a rank-1 ring.
    Base,
    /// No zero after position 1.
    NoZeroAfterFirst,
    /// `e_n = 0`.
    LastIsZero,
    /// The last zero sits at position `k` with `2 <= k < n`.
    InteriorZero(usize),
}

pub fn rewrite_case(e: &[u8]) -> RewriteCase {
    let n = e.len();
    if n <= 1 {
        return RewriteCase::Base;
    }
    if e[n - 1] == 0 {
        return RewriteCase::LastIsZero;
    }
    match e[1..].iter().rposition(|&x| x == 0) {
        None => RewriteCase::NoZeroAfterFirst,
        Some(p) => RewriteCase::InteriorZero(p + 2),
    }
}

pub(crate) fn g_map_entries(e: &[u8]) -> Option<Vec<u8>> {
    match rewrite_case(e) {
        RewriteCase::Base => None,
        RewriteCase::LastIsZero => {
            let mut out = Vec::with_capacity(e.len());
            out.push(0);
            out.extend(e[..e.len() - 1].iter().map(|&x| x + 1));
            Some(out)
        }
        RewriteCase::NoZeroAfterFirst => {
            let shifted: Vec<u8> = e[1..].iter().map(|&x| x - 1).collect();
            let inner = g_map_entries(&shifted)?;
            let mut out = Vec::with_capacity(e.len());
            out.push(0);
            out.extend(inner.into_iter().map(|x| x + 1));
            Some(out)
        }
        RewriteCase::InteriorZero(k) => {
            let mut out = g_map_entries(&e[..k - 1])?;
            out.extend_from_slice(&e[k - 1..]);
            Some(out)
        }
    }
}

/// The rewriting of `g_E · Ψ(L⁻¹(e))` as a normal monomial, in Lehmer coordinates.
pub fn g_map(e: &InversionSequence) -> RewriteResult {
    match g_map_entries(e.entries()) {
        None => RewriteResult::Zero,
        Some(out) => RewriteResult::Sequence(InversionSequence::from_entries_unchecked(out)),
    }
}

/// A set of inversion sequences of length `n` indexed by the power `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DSet {
    pub n: usize,
    pub k: usize,
    pub elements: BTreeSet<InversionSequence>,
}

impl DSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: &InversionSequence) -> bool {
        self.elements.contains(e)
    }

    /// `Σ t^{asc(e)}`.
    pub fn ascent_polynomial(&self) -> IntPolynomial {
        let mut hist = vec![0u64; self.n.max(1)];
        for e in &self.elements {
            hist[e.ascents()] += 1;
        }
        IntPolynomial::from_counts(&hist)
    }

    pub fn min_ascents(&self) -> Option<usize> {
        self.elements.iter().map(|e| e.ascents()).min()
    }
}

/// One application of `g_n` to a whole set.
#[derive(Debug, Clone)]
pub struct PowerStep {
    pub images: BTreeSet<Vec<u8>>,
    /// Preimages sent to zero.
    pub zeros: usize,
    /// Non-zero images minus distinct images; zero iff `g_n` was injective on the step.
    pub collisions: usize,
}

fn apply_g(domain: &[Vec<u8>]) -> PowerStep {
    let images: Vec<Vec<u8>> = domain.par_iter().filter_map(|e| g_map_entries(e)).collect();
    let zeros = domain.len() - images.len();
    let produced = images.len();
    let images: BTreeSet<Vec<u8>> = images.into_iter().collect();
    PowerStep {
        collisions: produced - images.len(),
        zeros,
        images,
    }
}

/// The steps `D^0 = I_n → D^1 → ... → D^{k_max}` of iterating `g_n`.
pub fn g_power_chain(n: usize, k_max: usize) -> Result<Vec<PowerStep>> {
    check_enumeration_size("inversion sequence enumeration", n)?;
    let mut current: Vec<Vec<u8>> = inversion_sequences(n).map(|e| e.into_entries()).collect();
    let mut steps = Vec::with_capacity(k_max);
    for _ in 0..k_max {
        let step = apply_g(&current);
        current = step.images.iter().cloned().collect();
        steps.push(step);
    }
    Ok(steps)
}

fn into_dset(n: usize, k: usize, elements: impl IntoIterator<Item = Vec<u8>>) -> DSet {
    DSet {
        n,
        k,
        elements: elements
            .into_iter()
            .map(InversionSequence::from_entries_unchecked)
            .collect(),
    }
}

/// `D^0 = I_n`, `D^k = g_n(D^{k-1}) \ {ZERO}`.
pub fn g_power_images(n: usize, k: usize) -> Result<DSet> {
    if k == 0 {
        check_enumeration_size("inversion sequence enumeration", n)?;
        return Ok(into_dset(n, 0, inversion_sequences(n).map(|e| e.into_entries())));
    }
    let last = g_power_chain(n, k)?.pop().expect("k >= 1 steps");
    Ok(into_dset(n, k, last.images))
}

/// Membership in the recursively defined `D^k_n`, `k >= 1`.
pub fn in_dset(e: &[u8], k: usize) -> bool {
    debug_assert!(k >= 1);
    if !is_derangement(e) {
        return false;
    }
    if k == 1 {
        return true;
    }
    // derangement sequences of length >= 2 have e_2 = 1, so fp is defined
    let fz = first_zero(e);
    let fp: Vec<u8> = e[1..fz - 1].iter().map(|&x| x - 1).collect();
    in_dset(&fp, k - 1)
}

fn check_dset_args(n: usize, k: usize) -> Result<()> {
    if n == 0 || k == 0 {
        return Err(Error::Precondition(format!(
            "D^k_n needs n >= 1 and k >= 1, got n = {n}, k = {k}"
        )));
    }
    check_enumeration_size("inversion sequence enumeration", n)
}

/// `D^k_n` from the first-zero / first-peak recursion.
pub fn dset_recursive(n: usize, k: usize) -> Result<DSet> {
    check_dset_args(n, k)?;
    let found = par_fold_inversion_sequences(
        n,
        Vec::new(),
        |mut acc: Vec<Vec<u8>>, e| {
            if in_dset(e.entries(), k) {
                acc.push(e.entries().to_vec());
            }
            acc
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    Ok(into_dset(n, k, found))
}

/// Histogram indexed by `(e_n, asc(e))` over `D^k_n`, without materializing the set.
fn dset_last_ascent_table(n: usize, k: usize) -> Result<Vec<Vec<u64>>> {
    check_dset_args(n, k)?;
    let empty = vec![vec![0u64; n.max(1)]; n.max(1)];
    Ok(par_fold_inversion_sequences(
        n,
        empty,
        |mut acc, e| {
            let ent = e.entries();
            if in_dset(ent, k) {
                acc[ent[n - 1] as usize][ascents(ent)] += 1;
            }
            acc
        },
        |mut a, b| {
            for (ra, rb) in a.iter_mut().zip(b) {
                ra.iter_mut().zip(rb).for_each(|(x, y)| *x += y);
            }
            a
        },
    ))
}

/// `Σ_{e ∈ D^k_n} t^{asc(e)}`.
pub fn dset_ascent_polynomial(n: usize, k: usize) -> Result<IntPolynomial> {
    let table = dset_last_ascent_table(n, k)?;
    let mut total = vec![0u64; n.max(1)];
    for row in table {
        total.iter_mut().zip(row).for_each(|(x, y)| *x += y);
    }
    Ok(IntPolynomial::from_counts(&total))
}

/// `H(U_{n-k,n}) = t^{-k} Σ_{e ∈ D^k_n} t^{asc(e)}`.
pub fn chow_uniform_via_dsets(n: usize, k: usize) -> Result<HilbertSeries> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::Precondition(format!(
            "need n >= 2 and 1 <= k <= n - 1, got n = {n}, k = {k}"
        )));
    }
    let table = dset_last_ascent_table(n, k)?;
    let mut total = vec![0u64; n];
    for row in table {
        total.iter_mut().zip(row).for_each(|(x, y)| *x += y);
    }
    if let Some(asc) = total[..k].iter().position(|&c| c > 0) {
        let witness = dset_recursive(n, k)?
            .elements
            .into_iter()
            .find(|e| e.ascents() == asc)
            .expect("histogram entry has a witness");
        return Err(Error::AscentBelowFloor {
            n,
            k,
            seq: witness.to_string(),
            asc,
        });
    }
    Ok(IntPolynomial::from_counts(&total[k..]))
}

/// `d^{k,i}_n` for `i = 0, ..., n-1`: the ascent polynomial of `D^k_n`
/// restricted to `e_n = i`, and for `i = 0` that of `D^k_{n-1}`.
pub fn dki_family(n: usize, k: usize) -> Result<Vec<IntPolynomial>> {
    if n < 2 || k == 0 || k >= n {
        return Err(Error::Precondition(format!(
            "need n >= 2 and 1 <= k <= n - 1, got n = {n}, k = {k}"
        )));
    }
    let table = dset_last_ascent_table(n, k)?;
    let mut out: Vec<IntPolynomial> = table.iter().map(|row| IntPolynomial::from_counts(row)).collect();
    out[0] = dset_ascent_polynomial(n - 1, k)?;
    Ok(out)
}

pub fn dki_polynomial(n: usize, k: usize, i: usize) -> Result<IntPolynomial> {
    if i >= n {
        return Err(Error::Precondition(format!("need i <= n - 1, got i = {i}, n = {n}")));
    }
    Ok(dki_family(n, k)?.swap_remove(i))
}

/// The monomial with parts `{F} ∪ {S ∪ F_{<= max S} : S ∈ m}` for a flat
/// `F ∋ max E`, `F ≠ E`, and `m` supported on `E \ F`.
pub fn psi_f_image(f: Subset, m: &NormalMonomial, ground: &GroundSet) -> Result<NormalMonomial> {
    let all = ground.as_subset();
    let top = ground
        .max()
        .ok_or_else(|| Error::Precondition("empty ground set".into()))?;
    if !f.is_subset_of(all) || !f.contains(top) || f == all {
        return Err(Error::Precondition(format!(
            "{f} must be a proper subset of {all} containing {top}"
        )));
    }
    let rest = all.difference(f);
    if !m.support().is_subset_of(rest) {
        return Err(Error::Precondition(format!("monomial {m} is not supported on {rest}")));
    }
    let mut parts = vec![f];
    for &s in m.parts() {
        parts.push(s.union(f.at_most(s.max().expect("parts are nonempty"))));
    }
    NormalMonomial::from_parts(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::enumerate_normal_monomials;
    use crate::ground::derangement_sequences;

    fn e(s: &str) -> InversionSequence {
        s.parse().unwrap()
    }

    fn s(labels: &[u32]) -> Subset {
        Subset::from_labels(labels.iter().copied()).unwrap()
    }

    fn set_of(list: &[&str]) -> BTreeSet<InversionSequence> {
        list.iter().map(|x| e(x)).collect()
    }

    #[test]
    fn g_expand_examples() {
        let g3 = GroundSet::canonical(3).unwrap();
        let g4 = GroundSet::canonical(4).unwrap();
        assert_eq!(g_expand(s(&[1, 3]), &g3).unwrap(), vec![s(&[1, 3])]);
        assert_eq!(
            g_expand(s(&[1, 2]), &g3).unwrap(),
            vec![s(&[1, 2]), s(&[1, 2, 3])]
        );
        assert_eq!(
            g_expand(s(&[2]), &g4).unwrap(),
            vec![s(&[2]), s(&[2, 3]), s(&[2, 4]), s(&[2, 3, 4])]
        );
        assert!(g_expand(Subset::EMPTY, &g3).is_err());
        assert_eq!(GGenerator::new(s(&[1, 3])).unwrap().generation(), 3);
    }

    #[test]
    fn g_map_examples() {
        let cases = [
            ("0,1,2,1,2,0", "0,1,2,3,2,3"),
            ("0,1,2,0,0,3", "0,1,2,3,0,3"),
            ("0,1,2,1,0,2", "0,1,2,3,0,2"),
            ("0,1", "ZERO"),
            ("0,0", "0,1"),
            ("0", "ZERO"),
        ];
        for (input, output) in cases {
            assert_eq!(g_map(&e(input)).to_string(), output, "{input}");
        }
    }

    #[test]
    fn cases_partition_inversion_sequences() {
        for n in 2..=9 {
            for seq in inversion_sequences(n) {
                let x = seq.entries();
                let zero_after_first = x[1..].contains(&0);
                let c1 = !zero_after_first;
                let c2 = x[n - 1] == 0;
                let c3 = zero_after_first && x[n - 1] != 0;
                assert_eq!([c1, c2, c3].iter().filter(|&&b| b).count(), 1);
                let expected = if c1 {
                    RewriteCase::NoZeroAfterFirst
                } else if c2 {
                    RewriteCase::LastIsZero
                } else {
                    RewriteCase::InteriorZero(x.iter().rposition(|&v| v == 0).unwrap() + 1)
                };
                assert_eq!(rewrite_case(x), expected);
            }
        }
    }

    #[test]
    fn images_are_inversion_sequences_of_the_same_length() {
        for n in 1..=8 {
            for seq in inversion_sequences(n) {
                if let RewriteResult::Sequence(img) = g_map(&seq) {
                    assert_eq!(img.len(), n);
                    assert!(InversionSequence::new(img.entries().to_vec()).is_ok());
                }
            }
        }
    }

    #[test]
    fn power_image_examples() {
        assert_eq!(g_power_images(3, 1).unwrap().elements, set_of(&["0,1,1", "0,1,2"]));
        assert_eq!(g_power_images(3, 2).unwrap().elements, set_of(&["0,1,2"]));
        assert!(g_power_images(2, 2).unwrap().is_empty());
        assert_eq!(g_power_images(3, 0).unwrap().len(), 6);
    }

    #[test]
    fn recursive_examples() {
        assert_eq!(dset_recursive(3, 1).unwrap().elements, set_of(&["0,1,1", "0,1,2"]));
        assert_eq!(dset_recursive(3, 2).unwrap().elements, set_of(&["0,1,2"]));
        assert!(dset_recursive(1, 1).unwrap().is_empty());
        for n in 2..=8 {
            let top = dset_recursive(n, n - 1).unwrap();
            assert_eq!(top.elements, BTreeSet::from([InversionSequence::staircase(n)]));
        }
        assert!(dset_recursive(3, 0).is_err());
    }

    #[test]
    fn first_power_is_the_derangement_set() {
        for n in 1..=8 {
            let d: BTreeSet<_> = derangement_sequences(n).collect();
            assert_eq!(dset_recursive(n, 1).unwrap().elements, d);
        }
    }

    #[test]
    fn dset_json_is_sorted() {
        let d = dset_recursive(3, 1).unwrap();
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"n":3,"k":1,"elements":[[0,1,1],[0,1,2]]}"#);
        let back: DSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn rewrite_result_json() {
        let z = serde_json::to_string(&RewriteResult::Zero).unwrap();
        assert_eq!(z, r#""ZERO""#);
        let r = g_map(&e("0,0"));
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, "[0,1]");
        assert_eq!(serde_json::from_str::<RewriteResult>(&json).unwrap(), r);
        assert_eq!(serde_json::from_str::<RewriteResult>(&z).unwrap(), RewriteResult::Zero);
    }

    #[test]
    fn uniform_examples() {
        assert_eq!(chow_uniform_via_dsets(3, 1).unwrap().to_string(), "1 + t");
        assert_eq!(chow_uniform_via_dsets(3, 2).unwrap().to_string(), "1");
        assert_eq!(chow_uniform_via_dsets(4, 1).unwrap().to_string(), "1 + 7*t + t^2");
        assert!(chow_uniform_via_dsets(3, 3).is_err());
    }

    #[test]
    fn dki_examples() {
        assert_eq!(dki_polynomial(3, 1, 1).unwrap().to_string(), "t");
        assert_eq!(dki_polynomial(3, 1, 2).unwrap().to_string(), "t^2");
        assert_eq!(dki_polynomial(3, 1, 0).unwrap().to_string(), "t");
        assert!(dki_polynomial(3, 1, 3).is_err());
    }

    #[test]
    fn dki_nonzero_parts_sum_to_the_shifted_uniform_polynomial() {
        for n in 2..=7 {
            for k in 1..n {
                let fam = dki_family(n, k).unwrap();
                let sum = fam[1..]
                    .iter()
                    .fold(IntPolynomial::zero(), |acc, p| &acc + p);
                let expected = chow_uniform_via_dsets(n, k).unwrap().shift(k);
                assert_eq!(sum, expected, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn psi_f_examples() {
        let g3 = GroundSet::canonical(3).unwrap();
        let g5 = GroundSet::canonical(5).unwrap();
        let one = NormalMonomial::one();
        assert_eq!(
            psi_f_image(s(&[1, 3]), &one, &g3).unwrap().parts(),
            &[s(&[1, 3])]
        );
        let m12 = NormalMonomial::from_parts(vec![s(&[1, 2])]).unwrap();
        let img = psi_f_image(s(&[3, 5]), &m12, &g5).unwrap();
        assert_eq!(
            img.parts().iter().copied().collect::<BTreeSet<_>>(),
            BTreeSet::from([s(&[3, 5]), s(&[1, 2])])
        );
        let m14 = NormalMonomial::from_parts(vec![s(&[1, 4])]).unwrap();
        let img = psi_f_image(s(&[3, 5]), &m14, &g5).unwrap();
        assert_eq!(
            img.parts().iter().copied().collect::<BTreeSet<_>>(),
            BTreeSet::from([s(&[3, 5]), s(&[1, 3, 4])])
        );
        assert!(psi_f_image(s(&[1, 2]), &one, &g3).is_err());
        assert!(psi_f_image(s(&[1, 2, 3]), &one, &g3).is_err());
    }

    #[test]
    fn psi_f_images_are_normal_and_distinct() {
        for n in 3..=6 {
            let g = GroundSet::canonical(n).unwrap();
            let all = g.as_subset();
            let top = g.max().unwrap();
            let mut seen = BTreeSet::new();
            for f in all.subsets() {
                if !f.contains(top) || f.len() < 2 || f == all {
                    continue;
                }
                let rest = GroundSet::from_subset(all.difference(f));
                for m in enumerate_normal_monomials(&rest).unwrap() {
                    let img = psi_f_image(f, &m, &g).unwrap();
                    assert_eq!(img.degree(), m.degree() + 1);
                    assert!(seen.insert(img));
                }
            }
        }
    }
}
