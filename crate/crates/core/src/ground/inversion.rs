use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::permutation::{write_comma_separated, Permutation};
use super::subset::GroundSet;
use crate::{Error, Result};

/// Integers `e_1, ..., e_n` with `0 <= e_i <= i - 1`.
///
/// Lexicographic `Ord` matches the enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct InversionSequence {
    entries: Vec<u8>,
}

impl InversionSequence {
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        if entries.len() > 64 {
            return Err(Error::InvalidInversionSequence(format!(
                "length {} exceeds 64",
                entries.len()
            )));
        }
        if let Some((i, &e)) = entries.iter().enumerate().find(|(i, &e)| e as usize > *i) {
            return Err(Error::InvalidInversionSequence(format!(
                "entry e_{} = {e} exceeds {i}",
                i + 1
            )));
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_entries_unchecked(entries: Vec<u8>) -> Self {
        debug_assert!(entries.iter().enumerate().all(|(i, &e)| e as usize <= i));
        Self { entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            entries: vec![0; n],
        }
    }

    /// `(0, 1, ..., n-1)`.
    pub fn staircase(n: usize) -> Self {
        Self {
            entries: (0..n as u8).collect(),
        }
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u8> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `e_i` for 1-based `i`.
    pub fn at(&self, i: usize) -> u8 {
        self.entries[i - 1]
    }

    pub fn last(&self) -> Option<u8> {
        self.entries.last().copied()
    }

    /// Positions `i ∈ [n-1]` with `e_i < e_{i+1}`, 1-based.
    pub fn ascent_set(&self) -> Vec<usize> {
        self.entries
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] < w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn ascents(&self) -> usize {
        ascents(&self.entries)
    }

    /// Membership in `D_n`: `e_n != 0` and no `i` with `e_i = e_{i+1} = 0`.
    pub fn is_derangement(&self) -> bool {
        is_derangement(&self.entries)
    }

    /// First zero strictly after position 1, or `n + 1` when there is none.
    pub fn first_zero(&self) -> usize {
        first_zero(&self.entries)
    }

    /// `fp(e)_i = e_{i+1} - 1` for `1 <= i <= fz(e) - 2`. Requires `n >= 2` and `e_2 = 1`.
    pub fn first_peak(&self) -> Result<InversionSequence> {
        if self.len() < 2 || self.entries[1] != 1 {
            return Err(Error::Precondition(format!(
                "first_peak needs n >= 2 and e_2 = 1, got ({self})"
            )));
        }
        let fz = self.first_zero();
        Ok(Self::from_entries_unchecked(
            self.entries[1..fz - 1].iter().map(|&e| e - 1).collect(),
        ))
    }

    /// Inverse Lehmer code on an arbitrary linearly ordered ground set.
    pub fn lehmer_inverse(&self, ground: &GroundSet) -> Result<Permutation> {
        let n = self.len();
        if n != ground.len() {
            return Err(Error::LengthMismatch {
                expected: ground.len(),
                found: n,
            });
        }
        let mut remaining = ground.labels().to_vec();
        let mut values = vec![0u32; n];
        for i in (0..n).rev() {
            // `remaining` holds σ(1..=i+1); exactly e_{i+1} of them exceed σ(i+1).
            let idx = i - self.entries[i] as usize;
            values[i] = remaining.remove(idx);
        }
        Permutation::new(values)
    }
}

pub(crate) fn ascents(entries: &[u8]) -> usize {
    entries.windows(2).filter(|w| w[0] < w[1]).count()
}

pub(crate) fn is_derangement(entries: &[u8]) -> bool {
    match entries.last() {
        None | Some(0) => false,
        Some(_) => !entries.windows(2).any(|w| w[0] == 0 && w[1] == 0),
    }
}

pub(crate) fn first_zero(entries: &[u8]) -> usize {
    entries
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, &e)| e == 0)
        .map(|(i, _)| i + 1)
        .unwrap_or(entries.len() + 1)
}

impl TryFrom<Vec<u8>> for InversionSequence {
    type Error = Error;

    fn try_from(entries: Vec<u8>) -> Result<Self> {
        Self::new(entries)
    }
}

impl From<InversionSequence> for Vec<u8> {
    fn from(e: InversionSequence) -> Self {
        e.entries
    }
}

impl fmt::Display for InversionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_comma_separated(f, self.entries.iter())
    }
}

impl FromStr for InversionSequence {
    type Err = Error;

    /// Parses `0,1,1,2,3`; surrounding parentheses are accepted.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(s)
            .trim();
        if s.is_empty() {
            return Self::new(Vec::new());
        }
        let entries = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<u8>()
                    .map_err(|_| Error::Parse(format!("invalid entry '{tok}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}
