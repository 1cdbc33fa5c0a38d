//! Verification suites behind `chowlab verify`.

use std::collections::BTreeSet;

use chowlab::boolean::{enumerate_normal_monomials, hilbert_boolean, is_normal, phi, psi};
use chowlab::experiments::{run_family, Family};
use chowlab::ground::{inversion_sequences, par_fold_permutations, GroundSet, InversionSequence};
use chowlab::oracle::{fy_chain_count, ChowRing, FlatsLattice};
use chowlab::poly::{derangement_poly, derangement_poly_by_excedance, is_palindromic};
use chowlab::rewrite::{
    chow_uniform_via_dsets, dset_ascent_polynomial, dset_recursive, g_map, g_power_chain,
    g_power_images, RewriteResult,
};
use chowlab::{Error, IntPolynomial, NormalMonomial};
use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Bijection,
    Rewriting,
    Oracle,
    Corollary,
    Interlacing,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Bijection => "bijection",
            Suite::Rewriting => "rewriting",
            Suite::Oracle => "oracle",
            Suite::Corollary => "corollary",
            Suite::Interlacing => "interlacing",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: &'static str,
    pub passed: bool,
    pub counts: Counts,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

/// Outcome of one check: `Ok(Some(detail))` passes, `Ok(None)` is skipped.
type Outcome = std::result::Result<Option<String>, String>;

pub struct Options {
    /// Top `n` for every suite; suite defaults when absent.
    pub max_n: Option<usize>,
    pub column_limit: usize,
}

impl Options {
    fn top(&self, default: usize) -> usize {
        self.max_n.unwrap_or(default)
    }
}

struct Runner {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Runner {
    fn check(&mut self, name: impl Into<String>, run: impl FnOnce() -> Outcome) {
        let (status, detail) = match run() {
            Ok(Some(d)) => (Status::Pass, d),
            Ok(None) => (Status::Skip, String::new()),
            Err(d) => (Status::Fail, d),
        };
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            status,
            detail,
        });
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn run(suite: Suite, opts: &Options) -> Report {
    let suites: Vec<Suite> = match suite {
        Suite::All => vec![
            Suite::Bijection,
            Suite::Rewriting,
            Suite::Oracle,
            Suite::Corollary,
            Suite::Interlacing,
        ],
        s => vec![s],
    };
    let mut checks = Vec::new();
    for s in suites {
        let mut r = Runner {
            suite: s.name(),
            checks: Vec::new(),
        };
        match s {
            Suite::Bijection => bijection(&mut r, opts),
            Suite::Rewriting => rewriting(&mut r, opts),
            Suite::Oracle => oracle(&mut r, opts),
            Suite::Corollary => corollary(&mut r, opts),
            Suite::Interlacing => interlacing(&mut r, opts),
            Suite::All => unreachable!(),
        }
        checks.extend(r.checks);
    }
    let mut counts = Counts::default();
    for c in &checks {
        match c.status {
            Status::Pass => counts.pass += 1,
            Status::Fail => counts.fail += 1,
            Status::Skip => counts.skip += 1,
        }
    }
    Report {
        suite: suite.name(),
        passed: counts.fail == 0,
        counts,
        checks,
        wall_time_ms: None,
    }
}

fn bijection(r: &mut Runner, opts: &Options) {
    for n in 1..=opts.top(8) {
        r.check(format!("psi-phi n={n}"), || {
            let ground = GroundSet::canonical(n).map_err(err)?;
            let (images, bad) = par_fold_permutations(
                &ground,
                (Vec::new(), None::<String>),
                |(mut acc, bad), p| {
                    if bad.is_some() {
                        return (acc, bad);
                    }
                    let m = psi(p);
                    let ok = is_normal(m.parts())
                        && m.degree() == p.descents()
                        && matches!(phi(&m, &ground), Ok(q) if &q == p);
                    if !ok {
                        return (acc, Some(p.to_string()));
                    }
                    acc.push(m);
                    (acc, None)
                },
                |(mut a, ba), (b, bb)| {
                    a.extend(b);
                    (a, ba.or(bb))
                },
            );
            if let Some(p) = bad {
                return Err(format!("round trip or degree fails at {p}"));
            }
            let count = images.len();
            let distinct: BTreeSet<NormalMonomial> = images.into_iter().collect();
            ensure(distinct.len() == count, || "psi is not injective".into())?;
            let all: BTreeSet<NormalMonomial> =
                enumerate_normal_monomials(&ground).map_err(err)?.into_iter().collect();
            ensure(all == distinct, || {
                format!("image has {} monomials, NM has {}", distinct.len(), all.len())
            })?;
            Ok(Some(format!("{count} permutations")))
        });
    }
}

fn soundness(n: usize, column_limit: usize) -> Outcome {
    let ring = ChowRing::with_column_limit(FlatsLattice::boolean(n).map_err(err)?, column_limit);
    let ground = GroundSet::canonical(n).map_err(err)?;
    let g_top = ring.g_expression(ground.as_subset()).map_err(err)?;
    let (mut zeros, mut images) = (0, 0);
    for e in inversion_sequences(n) {
        let m = psi(&e.lehmer_inverse(&ground).map_err(err)?);
        let lhs = ring
            .g_monomial(m.parts())
            .and_then(|x| ring.mul_expression(&x, &g_top))
            .map_err(err)?;
        match g_map(&e) {
            RewriteResult::Zero => {
                ensure(lhs.is_zero(), || format!("g({e}) = ZERO but the product is nonzero"))?;
                zeros += 1;
            }
            RewriteResult::Sequence(img) => {
                let target = psi(&img.lehmer_inverse(&ground).map_err(err)?);
                let rhs = ring.g_monomial(target.parts()).map_err(err)?;
                ensure(lhs == rhs, || format!("g({e}) = {img} disagrees with the ring"))?;
                images += 1;
            }
        }
    }
    Ok(Some(format!("{zeros} ZERO, {images} rewritten")))
}

fn rewriting(r: &mut Runner, opts: &Options) {
    r.check("figures", || {
        for (input, output) in [
            ("0,1,2,1,2,0", "0,1,2,3,2,3"),
            ("0,1,2,0,0,3", "0,1,2,3,0,3"),
            ("0,1,2,1,0,2", "0,1,2,3,0,2"),
            ("0,1", "ZERO"),
            ("0,0", "0,1"),
        ] {
            let e: InversionSequence = input.parse().map_err(err)?;
            let got = g_map(&e).to_string();
            ensure(got == output, || format!("g({input}) = {got}, expected {output}"))?;
        }
        Ok(Some("5 examples".into()))
    });
    let top = opts.top(9);
    for n in 2..=top {
        r.check(format!("set-equality n={n}"), || {
            let chain = g_power_chain(n, n - 1).map_err(err)?;
            let mut merged = 0;
            for (i, step) in chain.iter().enumerate() {
                let k = i + 1;
                merged += step.collisions;
                let rec = dset_recursive(n, k).map_err(err)?;
                ensure(rec.min_ascents() == Some(k), || {
                    format!("k={k}: min ascents {:?}", rec.min_ascents())
                })?;
                let rec: BTreeSet<Vec<u8>> =
                    rec.elements.into_iter().map(InversionSequence::into_entries).collect();
                ensure(rec == step.images, || format!("k={k}: sets differ"))?;
            }
            Ok(Some(format!("k=1..{}, {merged} merged preimages", n - 1)))
        });
    }
    for n in 1..=top.min(6) {
        r.check(format!("soundness n={n}"), || soundness(n, opts.column_limit));
    }
}

/// Oracle Hilbert series, or `None` when the slice guard trips.
fn oracle_series(l: FlatsLattice, column_limit: usize) -> Result<Option<IntPolynomial>, String> {
    match ChowRing::with_column_limit(l, column_limit).hilbert_series() {
        Ok(h) => Ok(Some(h)),
        Err(Error::TooLarge { .. }) => Ok(None),
        Err(e) => Err(e.to_string()),
    }
}

fn three_way(l: FlatsLattice, combinatorial: IntPolynomial, column_limit: usize) -> Outcome {
    let rank = l.rank();
    let fy = fy_chain_count(&l);
    let Some(h) = oracle_series(l, column_limit)? else {
        return Ok(None);
    };
    ensure(h == fy && fy == combinatorial, || {
        format!("oracle {h}, chains {fy}, combinatorial {combinatorial}")
    })?;
    ensure(is_palindromic(&h, rank - 1), || format!("{h} is not palindromic"))?;
    Ok(Some(h.to_compact_string()))
}

fn oracle(r: &mut Runner, opts: &Options) {
    for n in 1..=opts.top(4) {
        r.check(format!("boolean n={n}"), || {
            let comb = hilbert_boolean(n).map_err(err)?;
            three_way(FlatsLattice::boolean(n).map_err(err)?, comb, opts.column_limit)
        });
    }
    for n in 2..=opts.top(6) {
        for k in 1..n {
            r.check(format!("uniform k={k} n={n}"), || {
                let comb = chow_uniform_via_dsets(n, n - k).map_err(err)?;
                three_way(FlatsLattice::uniform(k, n).map_err(err)?, comb, opts.column_limit)
            });
        }
    }
}

fn corollary(r: &mut Runner, opts: &Options) {
    let top = opts.top(6);
    for n in 2..=top {
        for k in 1..n {
            r.check(format!("dsets k={k} n={n}"), || {
                let rec = dset_ascent_polynomial(n, k).map_err(err)?;
                let img = g_power_images(n, k).map_err(err)?.ascent_polynomial();
                ensure(rec == img, || format!("recursive {rec}, images {img}"))?;
                let l = FlatsLattice::uniform(n - k, n).map_err(err)?;
                let Some(h) = oracle_series(l, opts.column_limit)? else {
                    return Ok(None);
                };
                let shifted = h.shift(k);
                ensure(rec == shifted, || format!("D-sets {rec}, shifted oracle {shifted}"))?;
                Ok(Some(rec.to_compact_string()))
            });
        }
        r.check(format!("corank-one n={n}"), || {
            let a = chow_uniform_via_dsets(n, 1).map_err(err)?.shift(1);
            let b = derangement_poly(n).map_err(err)?;
            let c = derangement_poly_by_excedance(n).map_err(err)?;
            ensure(a == b && b == c, || format!("{a} / {b} / {c}"))?;
            Ok(Some(c.to_compact_string()))
        });
    }
    for n in 1..=top.min(5) {
        r.check(format!("principal-ideal n={n}"), || {
            let ring =
                ChowRing::with_column_limit(FlatsLattice::boolean(n).map_err(err)?, opts.column_limit);
            for k in 1..=n {
                let got = ring.principal_ideal_hilbert(n - k).map_err(err)?;
                let Some(h) = oracle_series(FlatsLattice::uniform(k, n).map_err(err)?, opts.column_limit)?
                else {
                    return Ok(None);
                };
                let expected = h.shift(n - k);
                ensure(got == expected, || format!("k={k}: {got} vs {expected}"))?;
            }
            Ok(Some(format!("k=1..{n}")))
        });
    }
}

fn interlacing(r: &mut Runner, opts: &Options) {
    let top = opts.top(10);
    for (family, k, from) in [
        (Family::EulerianRefined, 1, 1),
        (Family::DerangementRefined, 1, 2),
        (Family::Drop22, 2, 3),
        (Family::Merge12, 2, 3),
        (Family::Plain, 2, 3),
    ] {
        r.check(format!("{family} k={k}"), || {
            let report = run_family(family, k, from..=top).map_err(err)?;
            match (family.expected_interlacing(), report.first_non_interlacing_n) {
                (true, None) => Ok(Some(format!("n={from}..{top}"))),
                (true, Some(n)) => Err(format!("not interlacing at n={n}")),
                (false, Some(n)) => Ok(Some(format!("first non-interlacing n={n}"))),
                (false, None) => Ok(None),
            }
        });
    }
}
