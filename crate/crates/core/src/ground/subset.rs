use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest label a [`Subset`] can hold.
pub const MAX_LABEL: u32 = 63;

/// A finite linearly ordered ground set of integer labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroundSet {
    labels: Vec<u32>,
}

impl GroundSet {
    /// Builds a ground set from strictly increasing labels in `0..=63`.
    pub fn new(labels: Vec<u32>) -> Result<Self> {
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGroundSet(format!(
                "labels must be strictly increasing: {labels:?}"
            )));
        }
        if let Some(&l) = labels.iter().find(|&&l| l > MAX_LABEL) {
            return Err(Error::LabelOutOfRange(l));
        }
        Ok(Self { labels })
    }

    /// The canonical ground set `[n] = {1, ..., n}`.
    pub fn canonical(n: usize) -> Result<Self> {
        if n > MAX_LABEL as usize {
            return Err(Error::LabelOutOfRange(n as u32));
        }
        Ok(Self {
            labels: (1..=n as u32).collect(),
        })
    }

    pub fn from_subset(s: Subset) -> Self {
        Self {
            labels: s.iter().collect(),
        }
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Whether the labels are exactly `1..=n`.
    pub fn is_canonical(&self) -> bool {
        self.labels.iter().enumerate().all(|(i, &l)| l == i as u32 + 1)
    }

    pub fn as_subset(&self) -> Subset {
        Subset::from_labels(self.labels.iter().copied()).expect("labels validated on construction")
    }

    pub fn max(&self) -> Option<u32> {
        self.labels.last().copied()
    }

    pub fn contains(&self, label: u32) -> bool {
        self.labels.binary_search(&label).is_ok()
    }

    /// `E_{<= e}`.
    pub fn at_most(&self, e: u32) -> Subset {
        self.as_subset().at_most(e)
    }

    /// `E_{> e}`.
    pub fn above(&self, e: u32) -> Subset {
        self.as_subset().above(e)
    }

    /// Every subset of the ground set, in increasing bitmask order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> + '_ {
        self.as_subset().subsets()
    }
}

/// A subset of labels in `0..=63`, stored as a bitmask indexed by label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub fn from_labels<I: IntoIterator<Item = u32>>(labels: I) -> Result<Self> {
        let mut bits = 0u64;
        for l in labels {
            if l > MAX_LABEL {
                return Err(Error::LabelOutOfRange(l));
            }
            bits |= 1 << l;
        }
        Ok(Subset(bits))
    }

    pub fn singleton(label: u32) -> Self {
        debug_assert!(label <= MAX_LABEL);
        Subset(1 << label)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, label: u32) -> bool {
        label <= MAX_LABEL && self.0 >> label & 1 == 1
    }

    pub fn max(self) -> Option<u32> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros())
    }

    pub fn min(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros())
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn insert(self, label: u32) -> Subset {
        Subset(self.0 | 1 << label)
    }

    pub fn remove(self, label: u32) -> Subset {
        Subset(self.0 & !(1 << label))
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset_of(self, other: Subset) -> bool {
        self.is_subset_of(other) && self != other
    }

    pub fn is_comparable(self, other: Subset) -> bool {
        self.is_subset_of(other) || other.is_subset_of(self)
    }

    /// `S_{<= e}`.
    pub fn at_most(self, e: u32) -> Subset {
        if e >= 63 {
            self
        } else {
            Subset(self.0 & ((1u64 << (e + 1)) - 1))
        }
    }

    /// `S_{> e}`.
    pub fn above(self, e: u32) -> Subset {
        self.difference(self.at_most(e))
    }

    /// `S_{< e}`.
    pub fn below(self, e: u32) -> Subset {
        Subset(self.0 & ((1u64 << e) - 1))
    }

    /// Whether `self` is a nonempty initial segment of `whole`:
    /// `self = whole ∩ {i <= max self}`.
    pub fn is_initial_segment_of(self, whole: Subset) -> bool {
        match self.max() {
            None => false,
            Some(m) => self.is_subset_of(whole) && whole.at_most(m) == self,
        }
    }

    /// Labels in increasing order.
    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let l = bits.trailing_zeros();
                bits &= bits - 1;
                Some(l)
            }
        })
    }

    /// All subsets of `self` (including empty and `self`), increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(Subset(cur))
        })
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for Subset {
    type Err = Error;

    /// Parses `{2,3,4}`; braces are optional.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .unwrap_or(inner)
            .trim();
        if inner.is_empty() {
            return Ok(Subset::EMPTY);
        }
        let labels = parse_label_list(inner)?;
        Subset::from_labels(labels)
    }
}

impl Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<u32>::deserialize(deserializer)?;
        Subset::from_labels(labels).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn parse_label_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<u32>()
                .map_err(|_| Error::Parse(format!("invalid label '{tok}'")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(labels: &[u32]) -> Subset {
        Subset::from_labels(labels.iter().copied()).unwrap()
    }

    #[test]
    fn max_min_membership() {
        let a = s(&[2, 3, 7]);
        assert_eq!(a.max(), Some(7));
        assert_eq!(a.min(), Some(2));
        assert!(a.contains(3) && !a.contains(4));
        assert_eq!(Subset::EMPTY.max(), None);
        assert_eq!(a.at_most(3), s(&[2, 3]));
        assert_eq!(a.above(3), s(&[7]));
        assert_eq!(a.below(3), s(&[2]));
    }

    #[test]
    fn initial_segments() {
        let whole = s(&[1, 2, 3, 5]);
        assert!(s(&[1, 2]).is_initial_segment_of(whole));
        assert!(s(&[1, 2, 3, 5]).is_initial_segment_of(whole));
        assert!(!s(&[1, 3]).is_initial_segment_of(whole));
        assert!(!s(&[2, 3]).is_initial_segment_of(whole));
        assert!(!Subset::EMPTY.is_initial_segment_of(whole));
    }

    #[test]
    fn subsets_enumeration_counts() {
        assert_eq!(s(&[1, 4, 6]).subsets().count(), 8);
        assert_eq!(Subset::EMPTY.subsets().collect::<Vec<_>>(), vec![Subset::EMPTY]);
    }

    #[test]
    fn text_form() {
        assert_eq!(s(&[4, 2, 3]).to_string(), "{2,3,4}");
        assert_eq!("{2,3,4}".parse::<Subset>().unwrap(), s(&[2, 3, 4]));
        assert_eq!("{}".parse::<Subset>().unwrap(), Subset::EMPTY);
        assert!("{2,x}".parse::<Subset>().is_err());
        assert!("{64}".parse::<Subset>().is_err());
    }

    #[test]
    fn ground_set_validation() {
        assert!(GroundSet::new(vec![1, 3, 2]).is_err());
        assert!(GroundSet::new(vec![1, 1]).is_err());
        let g = GroundSet::new(vec![2, 5, 9]).unwrap();
        assert!(!g.is_canonical());
        assert!(GroundSet::canonical(4).unwrap().is_canonical());
        assert_eq!(g.at_most(5), s(&[2, 5]));
    }
}
