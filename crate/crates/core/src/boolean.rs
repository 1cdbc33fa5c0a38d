//! Normal monomials of the quadratic Gröbner basis of `CH(B_E)` in the
//! simplicial presentation, the order ⊲ on their parts, and the bijection
//! between permutations and normal monomials.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ground::{GroundSet, Permutation, Subset};
use crate::poly::IntPolynomial;
use crate::{check_enumeration_size, Error, Result};

/// Graded dimensions `c_k = dim CH^k`.
pub type HilbertSeries = IntPolynomial;

/// A squarefree monomial `∏ h_S`, stored as its parts sorted by ⊲.
///
/// Every part has at least two elements and every pair of parts is a
/// quadratic normal monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NormalMonomial {
    parts: Vec<Subset>,
}

impl NormalMonomial {
    /// The monomial `1`.
    pub fn one() -> Self {
        Self::default()
    }

    /// Validates normality and sorts the parts by ⊲.
    pub fn from_parts(mut parts: Vec<Subset>) -> Result<Self> {
        for &p in &parts {
            if p.len() < 2 {
                return Err(Error::SubsetTooSmall(p.to_string()));
            }
        }
        let raw = display_parts(&parts);
        for (i, &a) in parts.iter().enumerate() {
            for &b in &parts[i + 1..] {
                if a == b || !quad_normal(a, b)? {
                    return Err(Error::NotNormal(raw));
                }
            }
        }
        sort_by_triangle(&mut parts);
        Ok(Self { parts })
    }

    /// Parts already known to be normal and ⊲-sorted.
    pub(crate) fn from_sorted_unchecked(parts: Vec<Subset>) -> Self {
        debug_assert!(parts.windows(2).all(|w| triangle_less(w[0], w[1])));
        Self { parts }
    }

    pub fn parts(&self) -> &[Subset] {
        &self.parts
    }

    pub fn degree(&self) -> usize {
        self.parts.len()
    }

    /// Union of the parts.
    pub fn support(&self) -> Subset {
        self.parts.iter().fold(Subset::EMPTY, |acc, &p| acc.union(p))
    }
}

fn display_parts(parts: &[Subset]) -> String {
    if parts.is_empty() {
        return "1".to_string();
    }
    parts
        .iter()
        .map(|p| format!("h{p}"))
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for NormalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&display_parts(&self.parts))
    }
}

impl FromStr for NormalMonomial {
    type Err = Error;

    /// Parses `h{1,2,3}*h{1,2}` (any part order) or `1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::one());
        }
        let parts = s
            .split('*')
            .map(|tok| {
                let tok = tok.trim();
                let body = tok
                    .strip_prefix('h')
                    .filter(|b| b.trim_start().starts_with('{'))
                    .ok_or_else(|| Error::Parse(format!("expected h{{...}}, got '{tok}'")))?;
                body.parse::<Subset>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(parts)
    }
}

impl Serialize for NormalMonomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NormalMonomial {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<Subset>::deserialize(deserializer)?;
        Self::from_parts(parts).map_err(serde::de::Error::custom)
    }
}

/// Whether `h_a h_b` is normal with `a` in the initial-segment role: with
/// `S = a ∪ b`, `a` is the smallest initial segment `I` of `S` with
/// `I ∪ b = S`, and `|S \ b| >= 2` unless `b = S \ {max S}`.
fn quad_normal_ordered(a: Subset, b: Subset) -> bool {
    let whole = a.union(b);
    let missing = whole.difference(b);
    let Some(last_missing) = missing.max() else {
        // b already covers S; the smallest initial segment is {min S}, too small to be a part
        return false;
    };
    if a != whole.at_most(last_missing) {
        return false;
    }
    missing.len() >= 2 || b == whole.remove(whole.max().expect("nonempty"))
}

/// Whether the quadratic monomial `h_{s1} h_{s2}` is normal. The pair is unordered.
pub fn quad_normal(s1: Subset, s2: Subset) -> Result<bool> {
    for s in [s1, s2] {
        if s.len() < 2 {
            return Err(Error::SubsetTooSmall(s.to_string()));
        }
    }
    Ok(quad_normal_ordered(s1, s2) || quad_normal_ordered(s2, s1))
}

/// A monomial is normal iff all its quadratic submonomials are.
pub fn is_normal(parts: &[Subset]) -> bool {
    parts.iter().all(|p| p.len() >= 2)
        && parts.iter().enumerate().all(|(i, &a)| {
            parts[i + 1..]
                .iter()
                .all(|&b| a != b && quad_normal_ordered(a, b) || quad_normal_ordered(b, a))
        })
}

/// `s1 ⊲ s2`: `s1` is an initial segment of `s1 ∪ s2` and `max s1 ∉ s2`.
/// Irreflexive; total only on parts of a common normal monomial.
pub fn triangle_less(s1: Subset, s2: Subset) -> bool {
    match s1.max() {
        None => false,
        Some(m) => s1.is_initial_segment_of(s1.union(s2)) && !s2.contains(m),
    }
}

fn triangle_cmp(a: &Subset, b: &Subset) -> Ordering {
    if a == b {
        Ordering::Equal
    } else if triangle_less(*a, *b) {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

fn sort_by_triangle(parts: &mut [Subset]) {
    parts.sort_by(triangle_cmp);
}

/// Candidate parts (subsets of cardinality >= 2) and their pairwise normality table.
struct PartGraph {
    candidates: Vec<Subset>,
    compat: Vec<Vec<u64>>,
    words: usize,
}

impl PartGraph {
    fn new(ground: &GroundSet) -> Self {
        let candidates: Vec<Subset> = ground.subsets().filter(|s| s.len() >= 2).collect();
        let words = candidates.len().div_ceil(64).max(1);
        let compat = candidates
            .iter()
            .map(|&a| {
                let mut row = vec![0u64; words];
                for (j, &b) in candidates.iter().enumerate() {
                    if a != b && (quad_normal_ordered(a, b) || quad_normal_ordered(b, a)) {
                        row[j / 64] |= 1 << (j % 64);
                    }
                }
                row
            })
            .collect();
        Self {
            candidates,
            compat,
            words,
        }
    }

    /// Bitset of candidates with index > `i` compatible with `i`.
    fn later_compatible(&self, i: usize) -> Vec<u64> {
        let mut row = self.compat[i].clone();
        for (w, word) in row.iter_mut().enumerate() {
            let lo = w * 64;
            if lo + 64 <= i + 1 {
                *word = 0;
            } else if lo <= i {
                *word &= !((1u64 << (i + 1 - lo)) - 1);
            }
        }
        row
    }

    /// Depth-first search over pairwise-normal part sets whose smallest
    /// candidate index is `first`; chosen indices increase along each branch.
    fn walk_from<F: FnMut(&[usize])>(&self, first: usize, visit: &mut F) {
        let mut chosen = vec![first];
        let allowed = self.later_compatible(first);
        self.walk(&allowed, &mut chosen, visit);
    }

    fn walk<F: FnMut(&[usize])>(&self, allowed: &[u64], chosen: &mut Vec<usize>, visit: &mut F) {
        visit(chosen);
        for w in 0..self.words {
            let mut bits = allowed[w];
            while bits != 0 {
                let j = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let next: Vec<u64> = allowed
                    .iter()
                    .zip(&self.compat[j])
                    .enumerate()
                    .map(|(k, (a, c))| {
                        let mut v = a & c;
                        // only indices after j
                        if k < w {
                            v = 0;
                        } else if k == w {
                            let shift = j % 64 + 1;
                            v &= if shift == 64 { 0 } else { !((1u64 << shift) - 1) };
                        }
                        v
                    })
                    .collect();
                chosen.push(j);
                self.walk(&next, chosen, visit);
                chosen.pop();
            }
        }
    }
}

/// Every normal monomial over `ground`, each exactly once, sorted by degree
/// and then by parts.
pub fn enumerate_normal_monomials(ground: &GroundSet) -> Result<Vec<NormalMonomial>> {
    check_enumeration_size("normal monomial enumeration", ground.len())?;
    let graph = PartGraph::new(ground);
    let mut out = vec![NormalMonomial::one()];
    for first in 0..graph.candidates.len() {
        graph.walk_from(first, &mut |idx: &[usize]| {
            let mut parts: Vec<Subset> = idx.iter().map(|&i| graph.candidates[i]).collect();
            sort_by_triangle(&mut parts);
            out.push(NormalMonomial::from_sorted_unchecked(parts));
        });
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Degree histogram of the normal monomials of `CH(B_[n])`, i.e. its Chow polynomial.
pub fn hilbert_boolean(n: usize) -> Result<HilbertSeries> {
    if n == 0 {
        return Err(Error::Precondition("hilbert_boolean needs n >= 1".into()));
    }
    check_enumeration_size("normal monomial enumeration", n)?;
    let ground = GroundSet::canonical(n)?;
    let graph = PartGraph::new(&ground);
    let mut counts = (0..graph.candidates.len())
        .into_par_iter()
        .map(|first| {
            let mut hist = vec![0u64; n];
            graph.walk_from(first, &mut |idx: &[usize]| hist[idx.len()] += 1);
            hist
        })
        .reduce(
            || vec![0u64; n],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    counts[0] += 1;
    Ok(IntPolynomial::from_counts(&counts))
}

/// `S(σ, i) = {σ(j) : j >= i, σ(j) <= σ(i)}`.
fn descent_part(p: &Permutation, i: usize) -> Subset {
    let top = p.at(i);
    Subset::from_labels(p.values()[i - 1..].iter().copied().filter(|&v| v <= top))
        .expect("labels of a valid permutation")
}

/// `Ψ(σ) = ∏_{i ∈ Des(σ)} h_{S(σ,i)}`; the descent order is the ⊲ order.
pub fn psi(p: &Permutation) -> NormalMonomial {
    let parts = p.descent_set().into_iter().map(|i| descent_part(p, i)).collect();
    NormalMonomial::from_sorted_unchecked(parts)
}

/// Inverse of [`psi`]: concatenates `X_1, X_2 \ X_1, ...` and the remaining
/// labels, each block increasing, where `X_i = E_{<= max S_i} \ (S_i \ {max S_i})`.
pub fn phi(m: &NormalMonomial, ground: &GroundSet) -> Result<Permutation> {
    let all = ground.as_subset();
    if !m.support().is_subset_of(all) {
        return Err(Error::Precondition(format!(
            "monomial {m} is not supported on {all}"
        )));
    }
    if !is_normal(m.parts()) {
        return Err(Error::NotNormal(m.to_string()));
    }
    let mut used = Subset::EMPTY;
    let mut values = Vec::with_capacity(ground.len());
    for &part in m.parts() {
        let top = part.max().expect("parts are nonempty");
        let x = all.at_most(top).difference(part.remove(top));
        values.extend(x.difference(used).iter());
        used = used.union(x);
    }
    values.extend(all.difference(used).iter());
    Permutation::on(values, ground)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::permutations;
    use std::collections::HashSet;

    fn s(labels: &[u32]) -> Subset {
        Subset::from_labels(labels.iter().copied()).unwrap()
    }

    fn m(text: &str) -> NormalMonomial {
        text.parse().unwrap()
    }

    #[test]
    fn quad_normal_examples() {
        assert!(quad_normal(s(&[1, 2, 3]), s(&[1, 2])).unwrap());
        assert!(!quad_normal(s(&[1, 2]), s(&[1, 3])).unwrap());
        assert!(!quad_normal(s(&[2, 3]), s(&[1, 2, 3])).unwrap());
        assert!(matches!(
            quad_normal(s(&[1]), s(&[1, 2])),
            Err(Error::SubsetTooSmall(_))
        ));
    }

    #[test]
    fn is_normal_examples() {
        assert!(is_normal(&[]));
        assert!(is_normal(&[s(&[1, 2]), s(&[1, 2, 3])]));
        assert!(!is_normal(&[s(&[1, 2]), s(&[1, 3])]));
        assert!(!is_normal(&[s(&[1, 2]), s(&[1, 2])]));
    }

    #[test]
    fn triangle_examples() {
        assert!(triangle_less(s(&[1, 2, 3, 4, 5]), s(&[2, 3, 4])));
        // 3 lies in {2,3}, so the union is not shrunk; the pair is not co-normal anyway
        assert!(!triangle_less(s(&[1, 2, 3]), s(&[2, 3])));
        assert!(!triangle_less(s(&[2, 3]), s(&[1, 2, 3])));
        assert!(triangle_less(s(&[1, 2, 3]), s(&[1, 2])));
        assert!(triangle_less(s(&[1, 2]), s(&[1, 3])) && !triangle_less(s(&[1, 3]), s(&[1, 2])));
        assert!(!triangle_less(s(&[1, 2]), s(&[1, 2])));
    }

    #[test]
    fn normal_monomials_of_three() {
        let g = GroundSet::canonical(3).unwrap();
        let got: Vec<String> = enumerate_normal_monomials(&g)
            .unwrap()
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(
            got,
            vec!["1", "h{1,2}", "h{1,3}", "h{2,3}", "h{1,2,3}", "h{1,2,3}*h{1,2}"]
        );
        let g1 = GroundSet::canonical(1).unwrap();
        assert_eq!(enumerate_normal_monomials(&g1).unwrap(), vec![NormalMonomial::one()]);
    }

    #[test]
    fn hilbert_boolean_small() {
        assert_eq!(hilbert_boolean(1).unwrap().to_string(), "1");
        assert_eq!(hilbert_boolean(3).unwrap().to_string(), "1 + 4*t + t^2");
        assert_eq!(
            hilbert_boolean(4).unwrap().to_string(),
            "1 + 11*t + 11*t^2 + t^3"
        );
        assert!(hilbert_boolean(0).is_err());
    }

    #[test]
    fn psi_examples() {
        let cases = [
            ("5,1,4,3,2", "h{1,2,3,4,5}*h{2,3,4}*h{2,3}"),
            ("5,4,3,2,1", "h{1,2,3,4,5}*h{1,2,3,4}*h{1,2,3}*h{1,2}"),
            ("3,5,2,4,1", "h{1,2,4,5}*h{1,4}"),
            ("1,2,3", "1"),
        ];
        for (perm, mono) in cases {
            let p: Permutation = perm.parse().unwrap();
            assert_eq!(psi(&p).to_string(), mono);
            assert_eq!(psi(&p), m(mono));
        }
    }

    #[test]
    fn phi_examples() {
        let g5 = GroundSet::canonical(5).unwrap();
        let g3 = GroundSet::canonical(3).unwrap();
        assert_eq!(phi(&m("h{1,2,4,5}*h{1,4}"), &g5).unwrap().to_string(), "3,5,2,4,1");
        assert_eq!(phi(&m("h{1,4}*h{1,2,4,5}"), &g5).unwrap().to_string(), "3,5,2,4,1");
        assert_eq!(phi(&NormalMonomial::one(), &g3).unwrap().to_string(), "1,2,3");
        assert_eq!(phi(&m("h{1,2}*h{1,2,3}"), &g3).unwrap().to_string(), "3,2,1");
        assert!(phi(&m("h{1,2,4,5}*h{1,4}"), &g3).is_err());
    }

    #[test]
    fn parse_rejects_non_normal_and_malformed() {
        assert!(matches!(
            "h{1,2}*h{1,3}".parse::<NormalMonomial>(),
            Err(Error::NotNormal(_))
        ));
        assert!(matches!("h{1}".parse::<NormalMonomial>(), Err(Error::SubsetTooSmall(_))));
        assert!(matches!("x{1,2}".parse::<NormalMonomial>(), Err(Error::Parse(_))));
    }

    #[test]
    fn json_form_is_list_of_label_lists() {
        let mono = m("h{1,2,4,5}*h{1,4}");
        let json = serde_json::to_string(&mono).unwrap();
        assert_eq!(json, "[[1,2,4,5],[1,4]]");
        let back: NormalMonomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, mono);
        assert!(serde_json::from_str::<NormalMonomial>("[[1,2],[1,3]]").is_err());
    }

    #[test]
    fn psi_is_a_degree_preserving_bijection_onto_normal_monomials() {
        for n in 1..=7 {
            let g = GroundSet::canonical(n).unwrap();
            let nm: HashSet<NormalMonomial> =
                enumerate_normal_monomials(&g).unwrap().into_iter().collect();
            let mut image = HashSet::new();
            for p in permutations(&g) {
                let mono = psi(&p);
                assert_eq!(mono.degree(), p.descents());
                assert!(is_normal(mono.parts()));
                assert_eq!(phi(&mono, &g).unwrap(), p);
                assert!(image.insert(mono));
            }
            assert_eq!(image, nm, "n = {n}");
            for mono in &nm {
                assert_eq!(&psi(&phi(mono, &g).unwrap()), mono);
            }
        }
    }

    #[test]
    fn triangle_is_a_strict_total_order_on_normal_part_sets() {
        for n in 2..=6 {
            let g = GroundSet::canonical(n).unwrap();
            for mono in enumerate_normal_monomials(&g).unwrap() {
                let parts = mono.parts();
                for (i, &a) in parts.iter().enumerate() {
                    assert!(!triangle_less(a, a));
                    for (j, &b) in parts.iter().enumerate() {
                        if i != j {
                            assert_ne!(triangle_less(a, b), triangle_less(b, a));
                            assert_eq!(triangle_less(a, b), i < j);
                        }
                    }
                }
            }
        }
    }
}
