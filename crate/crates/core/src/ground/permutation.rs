use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::inversion::InversionSequence;
use super::subset::{parse_label_list, GroundSet, Subset};
use crate::{Error, Result};

/// A bijection `[n] -> E`, stored as its list of values `σ(1), ..., σ(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    /// Any list of distinct labels in `0..=63`; the ground set is their sorted set.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let mut seen = Subset::EMPTY;
        for &v in &values {
            let one = Subset::from_labels([v])?;
            if seen.intersection(one) != Subset::EMPTY {
                return Err(Error::InvalidPermutation(format!("repeated value {v}")));
            }
            seen = seen.union(one);
        }
        Ok(Self { values })
    }

    /// A permutation whose values must be exactly the labels of `ground`.
    pub fn on(values: Vec<u32>, ground: &GroundSet) -> Result<Self> {
        let p = Self::new(values)?;
        if p.ground_subset() != ground.as_subset() {
            return Err(Error::InvalidPermutation(format!(
                "values {p} are not a permutation of {}",
                ground.as_subset()
            )));
        }
        Ok(p)
    }

    pub fn identity(ground: &GroundSet) -> Self {
        Self {
            values: ground.labels().to_vec(),
        }
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.values[i - 1]
    }

    pub fn ground_subset(&self) -> Subset {
        Subset::from_labels(self.values.iter().copied()).expect("validated")
    }

    pub fn ground(&self) -> GroundSet {
        GroundSet::from_subset(self.ground_subset())
    }

    /// Lehmer code: `e_i = #{j < i : σ(j) > σ(i)}`.
    pub fn lehmer_code(&self) -> InversionSequence {
        let entries = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| self.values[..i].iter().filter(|&&w| w > v).count() as u8)
            .collect();
        InversionSequence::from_entries_unchecked(entries)
    }

    /// Descent positions `i ∈ [n-1]` with `σ(i) > σ(i+1)`, 1-based.
    pub fn descent_set(&self) -> Vec<usize> {
        self.values
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn descents(&self) -> usize {
        self.values.windows(2).filter(|w| w[0] > w[1]).count()
    }

    /// Number of `i` with `σ(i) > i`. Only defined on the canonical ground set `[n]`.
    pub fn excedance_count(&self) -> Result<usize> {
        self.require_canonical()?;
        Ok(self
            .values
            .iter()
            .enumerate()
            .filter(|(i, &v)| v as usize > i + 1)
            .count())
    }

    /// Whether `σ(i) != i` for all `i`. Only defined on `[n]`.
    pub fn is_derangement(&self) -> Result<bool> {
        self.require_canonical()?;
        Ok(self
            .values
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize != i + 1))
    }

    fn require_canonical(&self) -> Result<()> {
        if self.ground().is_canonical() {
            Ok(())
        } else {
            Err(Error::NonCanonicalGround)
        }
    }

    /// Rearranges to the lexicographic successor; returns false at the last permutation.
    pub(crate) fn advance(&mut self) -> bool {
        advance_lex(&mut self.values)
    }
}

pub(crate) fn advance_lex(v: &mut [u32]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<u32>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.values
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_comma_separated(f, self.values.iter())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses `5,1,4,3,2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Self::new(Vec::new());
        }
        Self::new(parse_label_list(s)?)
    }
}

pub(crate) fn write_comma_separated<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = T>,
) -> fmt::Result {
    for (i, x) in items.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}
