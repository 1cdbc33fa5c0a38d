//! Exact sparse row reduction over the rationals.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) type Q = BigRational;

/// Sparse row sorted by column.
pub(crate) type SparseRow = Vec<(u32, Q)>;

/// Rows in reduced row echelon form, keyed by pivot column.
pub(crate) struct Echelon {
    /// `rows[c]` is the row whose pivot is column `c`, normalized to 1 there.
    rows: Vec<Option<SparseRow>>,
    rank: usize,
}

impl Echelon {
    pub(crate) fn new(columns: usize) -> Self {
        Self {
            rows: vec![None; columns],
            rank: 0,
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rank
    }

    pub(crate) fn is_pivot(&self, c: u32) -> bool {
        self.rows[c as usize].is_some()
    }

    pub(crate) fn row(&self, c: u32) -> Option<&SparseRow> {
        self.rows[c as usize].as_ref()
    }

    /// Reduces `row` against the pivots found so far and keeps it if nonzero.
    /// Only forward elimination: call [`Echelon::back_substitute`] once all rows are in.
    pub(crate) fn insert(&mut self, row: impl IntoIterator<Item = (u32, Q)>) {
        let mut acc: BTreeMap<u32, Q> = BTreeMap::new();
        for (c, v) in row {
            add_into(&mut acc, c, v);
        }
        let mut cursor = 0u32;
        loop {
            let hit = acc
                .range(cursor..)
                .find(|(c, _)| self.is_pivot(**c))
                .map(|(c, _)| *c);
            let Some(c) = hit else { break };
            let v = acc.remove(&c).expect("present");
            let pivot_row = self.rows[c as usize].as_ref().expect("pivot");
            for (pc, pv) in &pivot_row[1..] {
                add_into(&mut acc, *pc, -(&v * pv));
            }
            cursor = c + 1;
        }
        let Some((&pc, lead)) = acc.iter().next() else {
            return;
        };
        let inv = Q::one() / lead;
        let normalized: SparseRow = acc
            .into_iter()
            .map(|(c, v)| (c, if c == pc { Q::one() } else { v * &inv }))
            .collect();
        self.rows[pc as usize] = Some(normalized);
        self.rank += 1;
    }

    /// Clears every pivot column from the other rows, giving the reduced form.
    pub(crate) fn back_substitute(&mut self) {
        for p in (0..self.rows.len()).rev() {
            let Some(row) = self.rows[p].take() else {
                continue;
            };
            if row[1..].iter().all(|(c, _)| !self.is_pivot(*c)) {
                self.rows[p] = Some(row);
                continue;
            }
            let mut acc: BTreeMap<u32, Q> = BTreeMap::new();
            for (c, v) in row {
                match self.rows[c as usize].as_ref() {
                    Some(other) if c as usize != p => {
                        for (oc, ov) in &other[1..] {
                            add_into(&mut acc, *oc, -(&v * ov));
                        }
                    }
                    _ => add_into(&mut acc, c, v),
                }
            }
            self.rows[p] = Some(acc.into_iter().collect());
        }
    }
}

fn add_into(acc: &mut BTreeMap<u32, Q>, c: u32, v: Q) {
    if v.is_zero() {
        return;
    }
    match acc.entry(c) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(v);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += v;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Rank of a dense list of vectors.
pub(crate) fn dense_rank(vectors: &[Vec<Q>]) -> usize {
    let Some(width) = vectors.first().map(Vec::len) else {
        return 0;
    };
    let mut e = Echelon::new(width);
    for v in vectors {
        e.insert(
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i as u32, x.clone())),
        );
    }
    e.rank()
}
