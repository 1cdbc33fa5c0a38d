use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::ground::{GroundSet, Subset};
use crate::{Error, Result};

/// The lattice of flats of a loopless matroid on `[n]`.
///
/// Flats are stored sorted by `(cardinality, bitmask)`, so a chain of flats
/// always has increasing indices. The empty flat comes first, `E` last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatsLattice {
    ground: GroundSet,
    flats: Vec<Subset>,
    ranks: Vec<usize>,
    index: HashMap<Subset, usize>,
}

impl FlatsLattice {
    /// Validates and builds a lattice; `∅` and `E` are added if missing.
    pub fn new(ground: GroundSet, flats: impl IntoIterator<Item = Subset>) -> Result<Self> {
        let all = ground.as_subset();
        let mut set: BTreeSet<Subset> = flats.into_iter().collect();
        set.insert(Subset::EMPTY);
        set.insert(all);
        if let Some(bad) = set.iter().find(|f| !f.is_subset_of(all)) {
            return Err(Error::InvalidLattice(format!("{bad} is not a subset of {all}")));
        }
        let mut flats: Vec<Subset> = set.into_iter().collect();
        flats.sort_by_key(|f| (f.len(), f.bits()));
        let index: HashMap<Subset, usize> = flats.iter().enumerate().map(|(i, &f)| (f, i)).collect();

        for (i, &a) in flats.iter().enumerate() {
            for &b in &flats[i + 1..] {
                let meet = a.intersection(b);
                if !index.contains_key(&meet) {
                    return Err(Error::InvalidLattice(format!(
                        "{a} ∩ {b} = {meet} is not a flat"
                    )));
                }
            }
        }

        let covers = cover_lists(&flats);
        for (i, &f) in flats.iter().enumerate() {
            let mut seen = Subset::EMPTY;
            for &j in &covers[i] {
                let part = flats[j].difference(f);
                if !seen.intersection(part).is_empty() {
                    return Err(Error::InvalidLattice(format!(
                        "flats covering {f} overlap outside it"
                    )));
                }
                seen = seen.union(part);
            }
            if seen != all.difference(f) {
                return Err(Error::InvalidLattice(format!(
                    "flats covering {f} do not partition its complement"
                )));
            }
        }

        // longest chain from ∅; every maximal chain of a geometric lattice has this length
        let mut ranks = vec![0usize; flats.len()];
        for i in 0..flats.len() {
            for &j in &covers[i] {
                ranks[j] = ranks[j].max(ranks[i] + 1);
            }
        }
        Ok(Self {
            ground,
            flats,
            ranks,
            index,
        })
    }

    /// `B_[n]`: every subset is a flat.
    pub fn boolean(n: usize) -> Result<Self> {
        let ground = ground_for(n)?;
        let flats: Vec<Subset> = ground.subsets().collect();
        Self::new(ground, flats)
    }

    /// `U_{k,[n]}`: `E` and every subset of cardinality at most `k - 1`.
    pub fn uniform(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::Precondition(format!(
                "uniform matroid needs 1 <= k <= n, got k = {k}, n = {n}"
            )));
        }
        let ground = ground_for(n)?;
        let flats: Vec<Subset> = ground.subsets().filter(|s| s.len() < k).collect();
        Self::new(ground, flats)
    }

    /// Parses the line format: `n=<n>`, then one flat per line as comma-separated
    /// labels. Blank lines and `#` comments are ignored; `∅` and `E` are implied.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty lattice file".into()))?;
        let n = header
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("expected 'n=<n>', got '{header}'")))?;
        let ground = ground_for(n)?;
        let flats = lines
            .map(|l| l.parse::<Subset>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground, flats)
    }

    /// Inverse of [`FlatsLattice::parse`]; lists every nonempty flat.
    pub fn to_text(&self) -> String {
        let mut out = format!("n={}\n", self.ground.len());
        for f in self.nonempty_flats() {
            let labels: Vec<String> = f.iter().map(|l| l.to_string()).collect();
            let _ = writeln!(out, "{}", labels.join(","));
        }
        out
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// All flats including `∅`, sorted by `(cardinality, bitmask)`.
    pub fn flats(&self) -> &[Subset] {
        &self.flats
    }

    pub fn nonempty_flats(&self) -> &[Subset] {
        &self.flats[1..]
    }

    pub fn is_flat(&self, s: Subset) -> bool {
        self.index.contains_key(&s)
    }

    /// Position of a flat in [`FlatsLattice::flats`].
    pub fn index_of(&self, s: Subset) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn rank_of(&self, s: Subset) -> Option<usize> {
        self.index_of(s).map(|i| self.ranks[i])
    }

    pub(crate) fn rank_at(&self, i: usize) -> usize {
        self.ranks[i]
    }

    /// Rank of the matroid, that of `E`.
    pub fn rank(&self) -> usize {
        *self.ranks.last().expect("E is a flat")
    }

    pub fn is_boolean(&self) -> bool {
        self.flats.len() as u64 == 1u64 << self.ground.len()
    }

    /// Smallest flat containing `s`.
    pub fn closure(&self, s: Subset) -> Subset {
        self.flats
            .iter()
            .filter(|f| s.is_subset_of(**f))
            .fold(self.ground.as_subset(), |acc, &f| acc.intersection(f))
    }

    pub fn join(&self, a: Subset, b: Subset) -> Subset {
        self.closure(a.union(b))
    }
}

fn ground_for(n: usize) -> Result<GroundSet> {
    if n == 0 {
        return Err(Error::Precondition("matroids need a nonempty ground set".into()));
    }
    GroundSet::canonical(n)
}

/// For each flat, the indices of the flats covering it.
fn cover_lists(flats: &[Subset]) -> Vec<Vec<usize>> {
    flats
        .iter()
        .map(|&f| {
            let above: Vec<usize> = (0..flats.len())
                .filter(|&j| f.is_proper_subset_of(flats[j]))
                .collect();
            above
                .iter()
                .copied()
                .filter(|&j| !above.iter().any(|&m| flats[m].is_proper_subset_of(flats[j])))
                .collect()
        })
        .collect()
}
