//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use chowlab::boolean::{enumerate_normal_monomials, hilbert_boolean, phi, psi};
use chowlab::experiments::{run_family, Family};
use chowlab::ground::{inversion_sequences, GroundSet, InversionSequence, Permutation};
use chowlab::oracle::{fy_chain_count, hilbert_series, ChowRing, FlatsLattice};
use chowlab::poly::{
    derangement_poly, derangement_poly_by_excedance, eulerian, eulerian_by_descents,
    is_palindromic, is_real_rooted, IntPolynomial,
};
use chowlab::rewrite::{
    chow_uniform_via_dsets, dset_recursive, g_map, g_power_chain, RewriteResult,
};
use chowlab::NormalMonomial;

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

fn timed(limit: Duration, run: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = run()?;
    let elapsed = start.elapsed();
    if elapsed > limit {
        return Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"));
    }
    Ok(format!("{detail}; {elapsed:.2?}"))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn normal_monomials_of_three() -> Outcome {
    let expected = ["1", "h{1,2}", "h{1,3}", "h{2,3}", "h{1,2,3}", "h{1,2,3}*h{1,2}"];
    let ground = GroundSet::canonical(3).unwrap();
    // best of several runs, so a cold cache does not decide the timing
    let mut best = Duration::MAX;
    let mut got = Vec::new();
    for _ in 0..5 {
        let start = Instant::now();
        let list = enumerate_normal_monomials(&ground).map_err(|e| e.to_string())?;
        best = best.min(start.elapsed());
        got = list.iter().map(ToString::to_string).collect();
    }
    let got_set: BTreeSet<&str> = got.iter().map(String::as_str).collect();
    ensure(got.len() == 6 && got_set == expected.into_iter().collect(), || {
        format!("got {got:?}")
    })?;
    ensure(best < Duration::from_millis(1), || format!("took {best:?}"))?;
    Ok(format!("{} monomials in {best:.2?}", got.len()))
}

fn psi_examples() -> Outcome {
    let cases = [
        ("5,1,4,3,2", "h{1,2,3,4,5}*h{2,3,4}*h{2,3}"),
        ("5,4,3,2,1", "h{1,2,3,4,5}*h{1,2,3,4}*h{1,2,3}*h{1,2}"),
        ("3,5,2,4,1", "h{1,2,4,5}*h{1,4}"),
    ];
    let g = GroundSet::canonical(5).unwrap();
    for (perm, mono) in cases {
        let p: Permutation = perm.parse().unwrap();
        let image = psi(&p);
        let expected: NormalMonomial = mono.parse().unwrap();
        ensure(image == expected, || format!("Ψ({perm}) = {image}"))?;
        let back = phi(&image, &g).map_err(|e| e.to_string())?;
        ensure(back == p, || format!("Φ({image}) = {back}"))?;
    }
    Ok("3 images exact, Φ inverts all".into())
}

fn eulerian_identity() -> Outcome {
    for n in 1..=9 {
        let h = hilbert_boolean(n).map_err(|e| e.to_string())?;
        let des = eulerian_by_descents(n).map_err(|e| e.to_string())?;
        let asc = eulerian(n).map_err(|e| e.to_string())?;
        ensure(h == des && des == asc, || format!("n = {n}: {h} / {des} / {asc}"))?;
    }
    Ok("n = 1..9".into())
}

fn rewriting_figures() -> Outcome {
    let cases = [
        ("0,1,2,1,2,0", "0,1,2,3,2,3"),
        ("0,1,2,0,0,3", "0,1,2,3,0,3"),
        ("0,1,2,1,0,2", "0,1,2,3,0,2"),
    ];
    for (input, output) in cases {
        let e: InversionSequence = input.parse().unwrap();
        let got = g_map(&e).to_string();
        ensure(got == output, || format!("g({input}) = {got}"))?;
    }
    Ok("3 figures exact".into())
}

fn dset_route() -> Outcome {
    let mut checked = 0;
    for n in 2..=6 {
        for k in 1..n {
            let recursive = dset_recursive(n, k).map_err(|e| e.to_string())?.ascent_polynomial();
            let oracle = hilbert_series(&FlatsLattice::uniform(n - k, n).unwrap())
                .map_err(|e| e.to_string())?
                .shift(k);
            ensure(recursive == oracle, || {
                format!("n = {n}, k = {k}: D-sets {recursive}, oracle {oracle}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (n, k) pairs, n <= 6"))
}

fn corank_one() -> Outcome {
    for n in 2..=8 {
        let via_dsets = chow_uniform_via_dsets(n, 1).map_err(|e| e.to_string())?.shift(1);
        let by_asc = derangement_poly(n).map_err(|e| e.to_string())?;
        let by_exc = derangement_poly_by_excedance(n).map_err(|e| e.to_string())?;
        ensure(via_dsets == by_asc && by_asc == by_exc, || {
            format!("n = {n}: {via_dsets} / {by_asc} / {by_exc}")
        })?;
        if n <= 6 {
            let oracle = hilbert_series(&FlatsLattice::uniform(n - 1, n).unwrap())
                .map_err(|e| e.to_string())?
                .shift(1);
            ensure(oracle == by_exc, || format!("n = {n}: oracle {oracle}"))?;
        }
    }
    Ok("n = 2..8 (oracle also for n <= 6)".into())
}

fn ideal_isomorphism() -> Outcome {
    for n in 1..=5 {
        let ring = ChowRing::new(FlatsLattice::boolean(n).unwrap());
        for k in 1..=n {
            let got = ring.principal_ideal_hilbert(n - k).map_err(|e| e.to_string())?;
            let expected = hilbert_series(&FlatsLattice::uniform(k, n).unwrap())
                .map_err(|e| e.to_string())?
                .shift(n - k);
            ensure(got == expected, || format!("n = {n}, k = {k}: {got} vs {expected}"))?;
        }
    }
    Ok("n = 1..5, all k".into())
}

fn set_equality_and_soundness() -> Outcome {
    // g merges preimages (already (0,1,0) and (0,1,1) at n = 3), so collisions are counted, not rejected
    let mut collisions = 0;
    for n in 2..=9 {
        let chain = g_power_chain(n, n - 1).map_err(|e| e.to_string())?;
        for (i, step) in chain.iter().enumerate() {
            let k = i + 1;
            collisions += step.collisions;
            let recursive = dset_recursive(n, k).map_err(|e| e.to_string())?;
            ensure(recursive.min_ascents() == Some(k), || {
                format!("n = {n}, k = {k}: min ascents {:?}", recursive.min_ascents())
            })?;
            let recursive: BTreeSet<Vec<u8>> = recursive
                .elements
                .into_iter()
                .map(InversionSequence::into_entries)
                .collect();
            ensure(step.images == recursive, || format!("n = {n}, k = {k}: sets differ"))?;
        }
    }
    let mut zeros = 0;
    let mut nonzeros = 0;
    for n in 1..=6 {
        let ring = ChowRing::new(FlatsLattice::boolean(n).unwrap());
        let g = GroundSet::canonical(n).unwrap();
        let g_top = ring.g_expression(g.as_subset()).map_err(|e| e.to_string())?;
        for e in inversion_sequences(n) {
            let m = psi(&e.lehmer_inverse(&g).unwrap());
            let lhs = ring
                .g_monomial(m.parts())
                .and_then(|x| ring.mul_expression(&x, &g_top))
                .map_err(|err| err.to_string())?;
            match g_map(&e) {
                RewriteResult::Zero => {
                    ensure(lhs.is_zero(), || format!("n = {n}: g({e}) = ZERO but class is nonzero"))?;
                    zeros += 1;
                }
                RewriteResult::Sequence(img) => {
                    let m2 = psi(&img.lehmer_inverse(&g).unwrap());
                    let rhs = ring.g_monomial(m2.parts()).map_err(|err| err.to_string())?;
                    ensure(lhs == rhs && !rhs.is_zero(), || {
                        format!("n = {n}: class of g_E·{m} differs from {m2}")
                    })?;
                    nonzeros += 1;
                }
            }
        }
    }
    Ok(format!(
        "sets equal and ascent floor holds for n <= 9 ({collisions} merged preimages); \
         {zeros} ZERO and {nonzeros} non-ZERO images sound for n <= 6"
    ))
}

fn oracle_concordance() -> Outcome {
    let mut lattices: Vec<(String, FlatsLattice)> = (1..=4)
        .map(|n| (format!("B_{n}"), FlatsLattice::boolean(n).unwrap()))
        .collect();
    for n in 2..=6 {
        for k in 1..n {
            lattices.push((format!("U({k},{n})"), FlatsLattice::uniform(k, n).unwrap()));
        }
    }
    for (name, l) in &lattices {
        let h = hilbert_series(l).map_err(|e| e.to_string())?;
        let fy = fy_chain_count(l);
        let centre = l.rank() - 1;
        ensure(h == fy, || format!("{name}: {h} vs {fy}"))?;
        ensure(is_palindromic(&h, centre) && is_palindromic(&fy, centre), || {
            format!("{name}: {h} not palindromic")
        })?;
    }
    Ok(format!("{} lattices", lattices.len()))
}

fn real_rootedness() -> Outcome {
    let mut checked = 0;
    for n in 2..=9 {
        for k in 1..n {
            let h: IntPolynomial = chow_uniform_via_dsets(n, k).map_err(|e| e.to_string())?;
            ensure(is_real_rooted(&h), || format!("H(U({},{n})) = {h} is not real-rooted", n - k))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} uniform Chow polynomials, n <= 9"))
}

fn interlacing_experiments() -> Outcome {
    let plain = run_family(Family::Plain, 2, 3..=10).map_err(|e| e.to_string())?;
    let witness_n = plain
        .first_non_interlacing_n
        .ok_or_else(|| "plain family interlaces for every n <= 10".to_string())?;
    let row = plain.rows.iter().find(|r| r.n == witness_n).expect("row");
    let (i, j) = row.first_failure.clone().expect("failing row has a pair");
    for family in [Family::Drop22, Family::Merge12] {
        let report = run_family(family, 2, 3..=10).map_err(|e| e.to_string())?;
        ensure(report.matches_expectation, || {
            format!("{family} fails at n = {:?}", report.first_non_interlacing_n)
        })?;
    }
    Ok(format!(
        "plain witness n = {witness_n} (d^{{2,{i}}} vs d^{{2,{j}}}); drop22 and merge12 interlace for n = 3..10"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (1, "normal monomials of [3]", Duration::MAX, normal_monomials_of_three),
        (2, "Ψ examples and Φ inverse", Duration::MAX, psi_examples),
        (3, "Eulerian identity", Duration::from_secs(60), eulerian_identity),
        (4, "rewriting figures", Duration::MAX, rewriting_figures),
        (5, "uniform Chow polynomials from D-sets", Duration::from_secs(300), dset_route),
        (6, "corank one and derangements", Duration::MAX, corank_one),
        (7, "principal ideal isomorphism", Duration::MAX, ideal_isomorphism),
        (8, "D-set equality and ZERO-soundness", Duration::MAX, set_equality_and_soundness),
        (9, "oracle concordance", Duration::MAX, oracle_concordance),
        (10, "real-rootedness of uniform Chow polynomials", Duration::MAX, real_rootedness),
        (11, "interlacing experiments", Duration::from_secs(600), interlacing_experiments),
    ];
    let mut failed = 0;
    for (id, title, limit, run) in criteria {
        match timed(limit, run) {
            Ok(detail) => println!("PASS criterion {id:>2} {title}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {id:>2} {title}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
