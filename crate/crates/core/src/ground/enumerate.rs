//! Lexicographic enumeration of inversion sequences, permutations and
//! derangement sequences. Every stream can be restarted from a fixed prefix,
//! which is how the parallel folds below partition the work.

use rayon::prelude::*;

use super::inversion::{is_derangement, InversionSequence};
use super::permutation::{advance_lex, Permutation};
use super::subset::GroundSet;
use crate::{Error, Result};

/// All `n`-inversion sequences extending a prefix, in lexicographic order.
#[derive(Debug, Clone)]
pub struct InversionSequences {
    current: Vec<u8>,
    fixed: usize,
    done: bool,
}

impl InversionSequences {
    pub fn new(n: usize) -> Self {
        Self {
            current: vec![0; n],
            fixed: 0,
            done: false,
        }
    }

    /// Sequences of length `n` whose first entries equal `prefix`.
    pub fn with_prefix(n: usize, prefix: &[u8]) -> Result<Self> {
        if prefix.len() > n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: prefix.len(),
            });
        }
        InversionSequence::new(prefix.to_vec())?;
        let mut current = prefix.to_vec();
        current.resize(n, 0);
        Ok(Self {
            current,
            fixed: prefix.len(),
            done: false,
        })
    }
}

impl Iterator for InversionSequences {
    type Item = InversionSequence;

    fn next(&mut self) -> Option<InversionSequence> {
        if self.done {
            return None;
        }
        let out = InversionSequence::from_entries_unchecked(self.current.clone());
        // odometer over the free positions, last position fastest
        let mut i = self.current.len();
        loop {
            if i == self.fixed {
                self.done = true;
                break;
            }
            i -= 1;
            if (self.current[i] as usize) < i {
                self.current[i] += 1;
                break;
            }
            self.current[i] = 0;
        }
        Some(out)
    }
}

/// All bijections `[n] -> E` in lexicographic order of their value lists.
#[derive(Debug, Clone)]
pub struct Permutations {
    current: Option<Permutation>,
    fixed: usize,
}

impl Permutations {
    pub fn new(ground: &GroundSet) -> Self {
        Self {
            current: Some(Permutation::identity(ground)),
            fixed: 0,
        }
    }

    /// Permutations whose first values equal `prefix`.
    pub fn with_prefix(ground: &GroundSet, prefix: &[u32]) -> Result<Self> {
        let mut rest: Vec<u32> = ground.labels().to_vec();
        for &v in prefix {
            match rest.iter().position(|&r| r == v) {
                Some(pos) => {
                    rest.remove(pos);
                }
                None => {
                    return Err(Error::InvalidPermutation(format!(
                        "prefix value {v} is not available in {}",
                        ground.as_subset()
                    )))
                }
            }
        }
        let mut values = prefix.to_vec();
        values.extend(rest);
        Ok(Self {
            current: Some(Permutation::new(values)?),
            fixed: prefix.len(),
        })
    }
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let fixed = self.fixed;
        let advanced = if fixed == 0 {
            next.advance()
        } else {
            let mut tail = next.values()[fixed..].to_vec();
            let ok = advance_lex(&mut tail);
            if ok {
                let mut v = next.values()[..fixed].to_vec();
                v.extend(tail);
                next = Permutation::new(v).expect("rearrangement of a permutation");
            }
            ok
        };
        if advanced {
            self.current = Some(next);
        }
        Some(out)
    }
}

pub fn inversion_sequences(n: usize) -> InversionSequences {
    InversionSequences::new(n)
}

pub fn permutations(ground: &GroundSet) -> Permutations {
    Permutations::new(ground)
}

/// `D_n` in lexicographic order.
pub fn derangement_sequences(n: usize) -> impl Iterator<Item = InversionSequence> {
    InversionSequences::new(n).filter(|e| is_derangement(e.entries()))
}

/// Length of the prefixes used to split `I_n` across workers.
fn split_depth(n: usize) -> usize {
    n.min(4)
}

/// Folds every `n`-inversion sequence in parallel, one task per prefix.
/// `fold` must be commutative and associative for the result to be
/// independent of scheduling.
pub fn par_fold_inversion_sequences<T, F, R>(n: usize, identity: T, fold: F, reduce: R) -> T
where
    T: Clone + Send + Sync,
    F: Fn(T, &InversionSequence) -> T + Sync,
    R: Fn(T, T) -> T + Sync,
{
    let prefixes: Vec<InversionSequence> = InversionSequences::new(split_depth(n)).collect();
    prefixes
        .par_iter()
        .map(|prefix| {
            InversionSequences::with_prefix(n, prefix.entries())
                .expect("prefix is a valid inversion sequence")
                .fold(identity.clone(), |acc, e| fold(acc, &e))
        })
        .reduce(|| identity.clone(), &reduce)
}

/// Same as [`par_fold_inversion_sequences`] over permutations of `ground`.
pub fn par_fold_permutations<T, F, R>(ground: &GroundSet, identity: T, fold: F, reduce: R) -> T
where
    T: Clone + Send + Sync,
    F: Fn(T, &Permutation) -> T + Sync,
    R: Fn(T, T) -> T + Sync,
{
    let depth = split_depth(ground.len()).min(3);
    let mut heads = Vec::new();
    partial_permutations(ground.labels(), depth, &mut Vec::new(), &mut heads);
    heads
        .par_iter()
        .map(|head| {
            Permutations::with_prefix(ground, head)
                .expect("prefix taken from a permutation")
                .fold(identity.clone(), |acc, p| fold(acc, &p))
        })
        .reduce(|| identity.clone(), &reduce)
}

/// Injective sequences of length `len` over `labels`, lexicographic.
fn partial_permutations(labels: &[u32], len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if cur.len() == len {
        out.push(cur.clone());
        return;
    }
    for &l in labels {
        if !cur.contains(&l) {
            cur.push(l);
            partial_permutations(labels, len, cur, out);
            cur.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(inversion_sequences(0).count(), 1);
        assert_eq!(inversion_sequences(3).count(), 6);
        assert_eq!(inversion_sequences(5).count(), 120);
        let g = GroundSet::canonical(4).unwrap();
        assert_eq!(permutations(&g).count(), 24);
        assert_eq!(derangement_sequences(4).count(), 9);
    }

    #[test]
    fn derangement_sequences_of_three() {
        let got: Vec<String> = derangement_sequences(3).map(|e| e.to_string()).collect();
        assert_eq!(got, vec!["0,1,1", "0,1,2"]);
    }

    #[test]
    fn lexicographic_and_prefix_restart() {
        let all: Vec<_> = inversion_sequences(4).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let tail: Vec<_> = InversionSequences::with_prefix(4, &[0, 1]).unwrap().collect();
        let expected: Vec<_> = all
            .iter()
            .filter(|e| e.entries()[..2] == [0, 1])
            .cloned()
            .collect();
        assert_eq!(tail, expected);
        assert!(InversionSequences::with_prefix(2, &[0, 0, 0]).is_err());
        assert!(InversionSequences::with_prefix(3, &[1]).is_err());
    }

    #[test]
    fn permutation_prefix_restart() {
        let g = GroundSet::new(vec![2, 4, 6, 8]).unwrap();
        let all: Vec<_> = permutations(&g).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let tail: Vec<_> = Permutations::with_prefix(&g, &[6]).unwrap().collect();
        assert_eq!(tail.len(), 6);
        assert!(tail.iter().all(|p| p.at(1) == 6));
        assert!(Permutations::with_prefix(&g, &[3]).is_err());
    }

    #[test]
    fn parallel_folds_match_sequential() {
        let n = 6;
        let par = par_fold_inversion_sequences(n, 0usize, |a, e| a + e.ascents(), |a, b| a + b);
        let seq: usize = inversion_sequences(n).map(|e| e.ascents()).sum();
        assert_eq!(par, seq);
        let g = GroundSet::canonical(n).unwrap();
        let par = par_fold_permutations(&g, 0usize, |a, p| a + p.descents(), |a, b| a + b);
        let seq: usize = permutations(&g).map(|p| p.descents()).sum();
        assert_eq!(par, seq);
    }
}
