//! Interlacing experiments on refined Eulerian, derangement and `d^{k,i}_n`
//! families.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::poly::{
    derangement_refined, eulerian_refined, interlacing_matrix, is_real_rooted, IntPolynomial,
};
use crate::rewrite::dki_family;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `(d^{k,0}_n, d^{k,1}_n, ..., d^{k,n-1}_n)`.
    Plain,
    /// The plain family without `d^{k,2}_n`.
    Drop22,
    /// The plain family with `d^{k,1}_n` and `d^{k,2}_n` replaced by their sum.
    Merge12,
    /// `(A^0_n, ..., A^{n-1}_n)`.
    EulerianRefined,
    /// `(d^1_n, ..., d^{n-1}_n)`.
    DerangementRefined,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Plain,
        Family::Drop22,
        Family::Merge12,
        Family::EulerianRefined,
        Family::DerangementRefined,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Plain => "plain",
            Family::Drop22 => "drop22",
            Family::Merge12 => "merge12",
            Family::EulerianRefined => "eulerian-refined",
            Family::DerangementRefined => "derangement-refined",
        }
    }

    /// Whether the family is expected to interlace for every `n`.
    pub fn expected_interlacing(self) -> bool {
        !matches!(self, Family::Plain)
    }

    /// Whether the family depends on the power `k`.
    pub fn uses_k(self) -> bool {
        matches!(self, Family::Plain | Family::Drop22 | Family::Merge12)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family '{s}'")))
    }
}

/// One polynomial of a family with the refinement indices it stands for.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Member {
    /// Refinement index, `1+2` for a merged member.
    pub label: String,
    pub poly: IntPolynomial,
    pub real_rooted: bool,
}

/// Members of a family for one `n`.
pub fn family_members(family: Family, n: usize, k: usize) -> Result<Vec<Member>> {
    let indexed: Vec<(String, IntPolynomial)> = match family {
        Family::EulerianRefined => label_all(eulerian_refined(n)?, 0),
        Family::DerangementRefined => label_all(derangement_refined(n)?.split_off(1), 1),
        Family::Plain | Family::Drop22 | Family::Merge12 => {
            let mut all = label_all(dki_family(n, k)?, 0);
            if all.len() > 2 {
                match family {
                    Family::Drop22 => {
                        all.remove(2);
                    }
                    Family::Merge12 => {
                        let (_, p2) = all.remove(2);
                        let (_, p1) = &all[1];
                        all[1] = ("1+2".to_string(), p1 + &p2);
                    }
                    _ => {}
                }
            }
            all
        }
    };
    Ok(indexed
        .into_iter()
        .map(|(label, poly)| Member {
            real_rooted: is_real_rooted(&poly),
            label,
            poly,
        })
        .collect())
}

fn label_all(ps: Vec<IntPolynomial>, first: usize) -> Vec<(String, IntPolynomial)> {
    ps.into_iter()
        .enumerate()
        .map(|(i, p)| ((i + first).to_string(), p))
        .collect()
}

/// The family at one `n`, with the pairwise interlacing relation.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyRow {
    pub n: usize,
    pub k: usize,
    pub members: Vec<Member>,
    /// `matrix[i][j]`: member `i` interlaces member `j`; absent when a member is not real-rooted.
    pub matrix: Option<Vec<Vec<bool>>>,
    /// Every earlier member interlaces every later one.
    pub interlacing: bool,
    /// First pair `(i, j)`, `i < j`, in row-major order that fails.
    pub first_failure: Option<(String, String)>,
}

pub fn family_row(family: Family, n: usize, k: usize) -> Result<FamilyRow> {
    let members = family_members(family, n, k)?;
    let matrix = if members.iter().all(|m| m.real_rooted) {
        let polys: Vec<IntPolynomial> = members.iter().map(|m| m.poly.clone()).collect();
        Some(interlacing_matrix(&polys)?)
    } else {
        None
    };
    let first_failure = match &matrix {
        None => members
            .iter()
            .find(|m| !m.real_rooted)
            .map(|m| (m.label.clone(), m.label.clone())),
        Some(mx) => (0..members.len())
            .flat_map(|i| (i + 1..members.len()).map(move |j| (i, j)))
            .find(|&(i, j)| !mx[i][j])
            .map(|(i, j)| (members[i].label.clone(), members[j].label.clone())),
    };
    Ok(FamilyRow {
        n,
        k,
        interlacing: first_failure.is_none(),
        members,
        matrix,
        first_failure,
    })
}

/// A family over a range of `n`.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub family: Family,
    pub k: usize,
    pub rows: Vec<FamilyRow>,
    /// Smallest `n` whose row does not interlace.
    pub first_non_interlacing_n: Option<usize>,
    /// Whether the observations match the expectation for this family: every
    /// row interlaces, or, for the plain family, some row does not.
    pub matches_expectation: bool,
}

/// Runs the family for every `n` in the range. `n` values for which the
/// family is undefined (`n <= k` for the `d^{k,i}_n` families) are skipped.
pub fn run_family(family: Family, k: usize, ns: impl IntoIterator<Item = usize>) -> Result<FamilyReport> {
    let ns: Vec<usize> = ns
        .into_iter()
        .filter(|&n| match family {
            Family::EulerianRefined => n >= 1,
            Family::DerangementRefined => n >= 2,
            _ => n > k && k >= 1,
        })
        .collect();
    let rows = ns
        .par_iter()
        .map(|&n| family_row(family, n, k))
        .collect::<Result<Vec<_>>>()?;
    let first_non_interlacing_n = rows.iter().find(|r| !r.interlacing).map(|r| r.n);
    let matches_expectation = if family.expected_interlacing() {
        first_non_interlacing_n.is_none()
    } else {
        first_non_interlacing_n.is_some()
    };
    Ok(FamilyReport {
        family,
        k,
        rows,
        first_non_interlacing_n,
        matches_expectation,
    })
}
