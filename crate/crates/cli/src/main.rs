mod output;
mod verify;

use std::collections::BTreeMap;
use std::fs;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use chowlab::boolean::{hilbert_boolean, phi, psi};
use chowlab::experiments::{run_family, Family, FamilyReport};
use chowlab::ground::{GroundSet, InversionSequence, Permutation};
use chowlab::oracle::{ChowRing, FlatsLattice, DEFAULT_COLUMN_LIMIT};
use chowlab::poly::{
    derangement_poly, derangement_poly_by_excedance, derangement_refined, eulerian,
    eulerian_by_descents, eulerian_refined,
};
use chowlab::rewrite::{
    chow_uniform_via_dsets, dset_recursive, g_map, g_power_images, rewrite_case, RewriteCase,
    RewriteResult,
};
use chowlab::{DSet, Error, IntPolynomial, NormalMonomial};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use output::{csv_records, json, poly_csv, Format, PolyRow};

const DEFAULT_BUDGET: usize = 10;

#[derive(Parser)]
#[command(name = "chowlab", version, about = "Chow polynomials of boolean and uniform matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print wall time to stderr (and into verify reports).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Args, Clone, Copy)]
struct Budget {
    /// Largest n to enumerate; for `verify`, the top n of every suite.
    #[arg(long, env = "CHOWLAB_MAX_N")]
    max_n: Option<usize>,
    /// Lift the enumeration budget and the oracle slice guard.
    #[arg(long)]
    allow_big: bool,
}

impl Budget {
    fn check(&self, n: usize) -> Result<(), CliError> {
        let limit = self.max_n.unwrap_or(DEFAULT_BUDGET);
        if n > limit && !self.allow_big {
            return Err(CliError::Usage(format!(
                "n = {n} exceeds the enumeration budget {limit}; raise --max-n or pass --allow-big"
            )));
        }
        Ok(())
    }

    fn column_limit(&self) -> usize {
        if self.allow_big {
            usize::MAX
        } else {
            DEFAULT_COLUMN_LIMIT
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Chow polynomial of a boolean or uniform matroid.
    Chow(ChowArgs),
    /// Apply Ψ to a permutation or Φ to a normal monomial.
    Bijection(BijectionArgs),
    /// Apply the rewriting map g to an inversion sequence.
    Rewrite(RewriteArgs),
    /// The set D^k_n of inversion sequences.
    Dset(DsetArgs),
    /// Interlacing experiments on polynomial families.
    Interlace(InterlaceArgs),
    /// Run verification suites and emit a report.
    Verify(VerifyArgs),
    /// Eulerian polynomial A_n.
    Eulerian(EulerianArgs),
    /// Derangement polynomial d_n.
    Derangement(DerangementArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Matroid {
    Boolean,
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    /// Count normal monomials (boolean only).
    Normal,
    /// Ascent polynomial of the D-sets.
    Rewrite,
    /// Linear algebra on the presentation.
    Oracle,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Normal => "normal",
            Method::Rewrite => "rewrite",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Args)]
struct ChowArgs {
    #[arg(long, value_enum)]
    matroid: Matroid,
    #[arg(long)]
    n: usize,
    /// Rank of U_{k,n}; required for uniform.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Run every applicable method and compare.
    #[arg(long)]
    cross_check: bool,
    #[command(flatten)]
    budget: Budget,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Direction {
    Psi,
    Phi,
}

#[derive(Args)]
struct BijectionArgs {
    #[arg(value_enum)]
    direction: Direction,
    /// Permutation in one-line notation, e.g. 5,1,4,3,2.
    #[arg(long, required_if_eq("direction", "psi"))]
    perm: Option<String>,
    /// Normal monomial, e.g. "h{1,2,4,5}*h{1,4}".
    #[arg(long, required_if_eq("direction", "phi"))]
    monomial: Option<String>,
    /// Ground set [n] for phi.
    #[arg(long, required_if_eq("direction", "phi"))]
    n: Option<usize>,
}

#[derive(Args)]
struct RewriteArgs {
    /// Inversion sequence, e.g. 0,1,2,1,2,0.
    #[arg(long)]
    seq: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DsetMethod {
    /// Filter by the first-zero / first-peak recursion.
    Recursive,
    /// Iterate g over all inversion sequences.
    Images,
}

#[derive(Args)]
struct DsetArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value_t = DsetMethod::Recursive)]
    method: DsetMethod,
    #[command(flatten)]
    budget: Budget,
}

#[derive(Args)]
struct InterlaceArgs {
    #[arg(long)]
    family: String,
    /// Power k of the d^{k,i}_n families.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Range of n, e.g. 4..10 (inclusive) or a single value.
    #[arg(long, value_parser = parse_range)]
    n: RangeInclusive<usize>,
    #[command(flatten)]
    budget: Budget,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = verify::Suite::All)]
    suite: verify::Suite,
    /// Also write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    #[command(flatten)]
    budget: Budget,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EulerianStat {
    Ascents,
    Descents,
}

#[derive(Args)]
struct EulerianArgs {
    #[arg(long)]
    n: usize,
    /// Split by the last entry of the inversion sequence.
    #[arg(long, conflicts_with = "by")]
    refined: bool,
    #[arg(long, value_enum, default_value_t = EulerianStat::Ascents)]
    by: EulerianStat,
    #[command(flatten)]
    budget: Budget,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DerangementStat {
    Ascents,
    Excedances,
}

#[derive(Args)]
struct DerangementArgs {
    #[arg(long)]
    n: usize,
    /// Split by the last entry of the inversion sequence.
    #[arg(long, conflicts_with = "by")]
    refined: bool,
    #[arg(long, value_enum, default_value_t = DerangementStat::Ascents)]
    by: DerangementStat,
    #[command(flatten)]
    budget: Budget,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected a..b or n, got '{s}'");
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let range = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?,
        None => {
            let n = num(s)?;
            n..=n
        }
    };
    if range.is_empty() {
        return Err(bad());
    }
    Ok(range)
}

enum CliError {
    /// Exit 2.
    Usage(String),
    /// Exit 1.
    Failure(String),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPalindromic(_)
            | Error::NotRealRooted(_)
            | Error::AscentBelowFloor { .. }
            | Error::Inhomogeneous => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

/// `Ok(true)` when every check passed.
type CmdResult = Result<bool, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .expect("global pool is configured once");
    }
    let start = Instant::now();
    let result = match &cli.command {
        Command::Chow(a) => cmd_chow(a, cli.format),
        Command::Bijection(a) => cmd_bijection(a, cli.format),
        Command::Rewrite(a) => cmd_rewrite(a, cli.format),
        Command::Dset(a) => cmd_dset(a, cli.format),
        Command::Interlace(a) => cmd_interlace(a, cli.format),
        Command::Verify(a) => cmd_verify(a, cli.format, cli.timings),
        Command::Eulerian(a) => cmd_eulerian(a, cli.format),
        Command::Derangement(a) => cmd_derangement(a, cli.format),
    };
    if cli.timings {
        eprintln!("elapsed: {:.3?}", start.elapsed());
    }
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

#[derive(Serialize)]
struct Route {
    method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    polynomial: Option<IntPolynomial>,
    /// Why the method did not run.
    #[serde(skip_serializing_if = "Option::is_none")]
    skipped: Option<String>,
}

#[derive(Serialize)]
struct ChowOutput {
    matroid: &'static str,
    n: usize,
    k: usize,
    polynomial: IntPolynomial,
    text: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    routes: Vec<Route>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
}

fn chow_route(method: Method, n: usize, rank: usize, budget: &Budget) -> Result<IntPolynomial, CliError> {
    let power = n - rank;
    match method {
        Method::Normal if power == 0 => Ok(hilbert_boolean(n)?),
        Method::Normal => Err(CliError::Usage(
            "the normal-monomial method needs a boolean matroid (k = n)".into(),
        )),
        // D^0_n is all of I_n, whose ascent polynomial is A_n
        Method::Rewrite if power == 0 => Ok(eulerian(n)?),
        Method::Rewrite => Ok(chow_uniform_via_dsets(n, power)?),
        Method::Oracle => {
            let lattice = if power == 0 {
                FlatsLattice::boolean(n)?
            } else {
                FlatsLattice::uniform(rank, n)?
            };
            Ok(ChowRing::with_column_limit(lattice, budget.column_limit()).hilbert_series()?)
        }
    }
}

fn cmd_chow(a: &ChowArgs, format: Format) -> CmdResult {
    if a.n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    let rank = match (a.matroid, a.k) {
        (Matroid::Boolean, None) => a.n,
        (Matroid::Boolean, Some(_)) => {
            return Err(CliError::Usage("--k only applies to uniform matroids".into()))
        }
        (Matroid::Uniform, None) => return Err(CliError::Usage("uniform matroids need --k".into())),
        (Matroid::Uniform, Some(k)) if k == 0 || k > a.n => {
            return Err(CliError::Usage(format!("need 1 <= k <= n, got k = {k}, n = {}", a.n)))
        }
        (Matroid::Uniform, Some(k)) => k,
    };
    a.budget.check(a.n)?;
    let boolean = rank == a.n;
    let primary = a
        .method
        .unwrap_or(if boolean { Method::Normal } else { Method::Rewrite });
    let poly = chow_route(primary, a.n, rank, &a.budget)?;
    let mut routes = Vec::new();
    let mut agree = None;
    if a.cross_check {
        let methods: &[Method] = if boolean {
            &[Method::Normal, Method::Rewrite, Method::Oracle]
        } else {
            &[Method::Rewrite, Method::Oracle]
        };
        let mut all_agree = true;
        for &m in methods {
            match chow_route(m, a.n, rank, &a.budget) {
                Ok(p) => {
                    all_agree &= p == poly;
                    routes.push(Route {
                        method: m,
                        polynomial: Some(p),
                        skipped: None,
                    });
                }
                Err(CliError::Usage(msg)) if m == Method::Oracle => routes.push(Route {
                    method: m,
                    polynomial: None,
                    skipped: Some(msg),
                }),
                Err(e) => return Err(e),
            }
        }
        agree = Some(all_agree);
    }
    let out = ChowOutput {
        matroid: if boolean { "boolean" } else { "uniform" },
        n: a.n,
        k: rank,
        text: poly.to_compact_string(),
        polynomial: poly,
        routes,
        agree,
    };
    match format {
        Format::Text => {
            println!("{}", out.text);
            for r in &out.routes {
                match (&r.polynomial, &r.skipped) {
                    (Some(p), _) => println!("{}: {}", r.method.name(), p.to_compact_string()),
                    (None, Some(why)) => println!("{}: skipped ({why})", r.method.name()),
                    _ => {}
                }
            }
            match out.agree {
                Some(true) => println!("routes agree"),
                Some(false) => println!("routes disagree"),
                None => {}
            }
        }
        Format::Json => json(&out)?,
        Format::Csv => {
            let mut rows = vec![PolyRow {
                fields: vec![out.n.to_string(), out.k.to_string(), String::new()],
                poly: &out.polynomial,
            }];
            for r in &out.routes {
                if let Some(p) = &r.polynomial {
                    rows.push(PolyRow {
                        fields: vec![out.n.to_string(), out.k.to_string(), r.method.name().to_string()],
                        poly: p,
                    });
                }
            }
            poly_csv(&["n", "k", "i"], &rows)?;
        }
    }
    Ok(out.agree.unwrap_or(true))
}

#[derive(Serialize)]
struct BijectionOutput {
    direction: &'static str,
    input: String,
    output: String,
    /// des(σ) for psi, the degree for phi; the two coincide.
    statistic: usize,
}

fn cmd_bijection(a: &BijectionArgs, format: Format) -> CmdResult {
    let out = match a.direction {
        Direction::Psi => {
            let text = a.perm.as_deref().unwrap_or_default();
            let p: Permutation = text.parse()?;
            let m = psi(&p);
            BijectionOutput {
                direction: "psi",
                input: p.to_string(),
                statistic: m.degree(),
                output: m.to_string(),
            }
        }
        Direction::Phi => {
            let text = a.monomial.as_deref().unwrap_or_default();
            let m: NormalMonomial = match text.parse() {
                Ok(m) => m,
                Err(e @ Error::NotNormal(_)) => return Err(CliError::Failure(e.to_string())),
                Err(e) => return Err(e.into()),
            };
            let ground = GroundSet::canonical(a.n.unwrap_or_default())?;
            let p = phi(&m, &ground)?;
            BijectionOutput {
                direction: "phi",
                input: m.to_string(),
                statistic: m.degree(),
                output: p.to_string(),
            }
        }
    };
    match format {
        Format::Text => {
            println!("{}", out.output);
            let stat = match a.direction {
                Direction::Psi => "descents",
                Direction::Phi => "degree",
            };
            println!("{stat}: {}", out.statistic);
        }
        Format::Json => json(&out)?,
        Format::Csv => csv_records(
            &["direction", "input", "output", "statistic"],
            &[vec![
                out.direction.to_string(),
                out.input,
                out.output,
                out.statistic.to_string(),
            ]],
        )?,
    }
    Ok(true)
}

#[derive(Serialize)]
struct RewriteOutput {
    input: InversionSequence,
    output: RewriteResult,
    case: &'static str,
}

fn case_name(c: RewriteCase) -> &'static str {
    match c {
        RewriteCase::Base => "base",
        RewriteCase::NoZeroAfterFirst => "no-zero-after-first",
        RewriteCase::LastIsZero => "last-is-zero",
        RewriteCase::InteriorZero(_) => "interior-zero",
    }
}

fn cmd_rewrite(a: &RewriteArgs, format: Format) -> CmdResult {
    let e: InversionSequence = a.seq.parse()?;
    let out = RewriteOutput {
        output: g_map(&e),
        case: case_name(rewrite_case(e.entries())),
        input: e,
    };
    match format {
        Format::Text => println!("{}", out.output),
        Format::Json => json(&out)?,
        Format::Csv => csv_records(
            &["input", "output", "case"],
            &[vec![out.input.to_string(), out.output.to_string(), out.case.to_string()]],
        )?,
    }
    Ok(true)
}

fn cmd_dset(a: &DsetArgs, format: Format) -> CmdResult {
    a.budget.check(a.n)?;
    let set: DSet = match a.method {
        DsetMethod::Recursive => dset_recursive(a.n, a.k)?,
        DsetMethod::Images => {
            if a.n < 2 {
                return Err(CliError::Usage("the images construction needs n >= 2".into()));
            }
            g_power_images(a.n, a.k)?
        }
    };
    match format {
        Format::Text => {
            println!(
                "D^{}_{}: {} elements, ascent polynomial {}",
                a.k,
                a.n,
                set.len(),
                set.ascent_polynomial().to_compact_string()
            );
            for e in &set.elements {
                println!("{e}");
            }
        }
        Format::Json => json(&set)?,
        Format::Csv => {
            // rows i = 0..n-1: ascent polynomial of the elements ending in i
            let mut by_last: BTreeMap<usize, Vec<u64>> =
                (0..a.n).map(|i| (i, vec![0; a.n])).collect();
            for e in &set.elements {
                if let Some(last) = e.last() {
                    by_last.get_mut(&(last as usize)).expect("entry < n")[e.ascents()] += 1;
                }
            }
            let polys: Vec<(usize, IntPolynomial)> = by_last
                .into_iter()
                .map(|(i, counts)| (i, IntPolynomial::from_counts(&counts)))
                .collect();
            let rows: Vec<PolyRow> = polys
                .iter()
                .map(|(i, p)| PolyRow {
                    fields: vec![a.n.to_string(), a.k.to_string(), i.to_string()],
                    poly: p,
                })
                .collect();
            poly_csv(&["n", "k", "i"], &rows)?;
        }
    }
    Ok(true)
}

fn family_text(report: &FamilyReport) {
    let k = if report.family.uses_k() {
        format!(", k = {}", report.k)
    } else {
        String::new()
    };
    println!("family {}{k}", report.family);
    for row in &report.rows {
        match &row.first_failure {
            None => println!("n = {}: interlacing", row.n),
            Some((i, j)) if i == j => println!("n = {}: member {i} is not real-rooted", row.n),
            Some((i, j)) => println!("n = {}: not interlacing (member {i} does not interlace member {j})", row.n),
        }
    }
    match report.first_non_interlacing_n {
        Some(n) => println!("first non-interlacing n: {n}"),
        None => println!("first non-interlacing n: none"),
    }
    let verdict = match (report.family.expected_interlacing(), report.matches_expectation) {
        (true, true) => "interlacing throughout, as expected",
        (true, false) => "FAILED: expected interlacing",
        (false, true) => "non-interlacing witness found",
        (false, false) => "no non-interlacing witness in range",
    };
    println!("verdict: {verdict}");
}

fn family_csv(report: &FamilyReport) -> std::io::Result<()> {
    let k = if report.family.uses_k() {
        report.k.to_string()
    } else {
        String::new()
    };
    let mut rows = Vec::new();
    for row in &report.rows {
        for (i, m) in row.members.iter().enumerate() {
            let later = row
                .matrix
                .as_ref()
                .map(|mx| (i + 1..row.members.len()).all(|j| mx[i][j]).to_string())
                .unwrap_or_default();
            rows.push(PolyRow {
                fields: vec![
                    row.n.to_string(),
                    k.clone(),
                    m.label.clone(),
                    m.real_rooted.to_string(),
                    later,
                ],
                poly: &m.poly,
            });
        }
    }
    poly_csv(&["n", "k", "i", "real_rooted", "interlaces_later"], &rows)
}

fn cmd_interlace(a: &InterlaceArgs, format: Format) -> CmdResult {
    let family: Family = a.family.parse()?;
    a.budget.check(*a.n.end())?;
    if family.uses_k() && a.k == 0 {
        return Err(CliError::Usage("k must be at least 1".into()));
    }
    let report = run_family(family, a.k, a.n.clone())?;
    match format {
        Format::Text => family_text(&report),
        Format::Json => json(&report)?,
        Format::Csv => family_csv(&report)?,
    }
    Ok(!family.expected_interlacing() || report.matches_expectation)
}

fn cmd_verify(a: &VerifyArgs, format: Format, timings: bool) -> CmdResult {
    // --max-n is the suite size here, so it is held to the default budget
    if let Some(n) = a.budget.max_n {
        Budget { max_n: None, ..a.budget }.check(n)?;
    }
    let start = Instant::now();
    let mut report = verify::run(
        a.suite,
        &verify::Options {
            max_n: a.budget.max_n,
            column_limit: a.budget.column_limit(),
        },
    );
    if timings {
        report.wall_time_ms = Some(start.elapsed().as_millis());
    }
    if let Some(path) = &a.report {
        fs::write(path, serde_json::to_string_pretty(&report)? + "\n")?;
    }
    match format {
        Format::Text => {
            for c in &report.checks {
                let status = match c.status {
                    verify::Status::Pass => "PASS",
                    verify::Status::Fail => "FAIL",
                    verify::Status::Skip => "SKIP",
                };
                if c.detail.is_empty() {
                    println!("{status} {}/{}", c.suite, c.name);
                } else {
                    println!("{status} {}/{}: {}", c.suite, c.name, c.detail);
                }
            }
            println!(
                "{}: {} passed, {} failed, {} skipped",
                report.suite, report.counts.pass, report.counts.fail, report.counts.skip
            );
        }
        Format::Json => json(&report)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.suite.to_string(),
                        c.name.clone(),
                        serde_json::to_value(c.status)
                            .ok()
                            .and_then(|v| v.as_str().map(str::to_string))
                            .unwrap_or_default(),
                        c.detail.clone(),
                    ]
                })
                .collect();
            csv_records(&["suite", "check", "status", "detail"], &rows)?;
        }
    }
    Ok(report.passed)
}

#[derive(Serialize)]
struct SequenceOutput {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    polynomial: Option<IntPolynomial>,
    /// Index i holds the part with last inversion-sequence entry i.
    #[serde(skip_serializing_if = "Option::is_none")]
    refined: Option<Vec<IntPolynomial>>,
}

fn emit_sequence(out: &SequenceOutput, format: Format) -> CmdResult {
    match format {
        Format::Text => {
            if let Some(p) = &out.polynomial {
                println!("{}", p.to_compact_string());
            }
            for (i, p) in out.refined.iter().flatten().enumerate() {
                println!("{i}: {}", p.to_compact_string());
            }
        }
        Format::Json => json(out)?,
        Format::Csv => {
            let n = out.n.to_string();
            let rows: Vec<PolyRow> = match (&out.polynomial, &out.refined) {
                (Some(p), _) => vec![PolyRow {
                    fields: vec![n, String::new(), String::new()],
                    poly: p,
                }],
                (None, Some(ps)) => ps
                    .iter()
                    .enumerate()
                    .map(|(i, p)| PolyRow {
                        fields: vec![n.clone(), String::new(), i.to_string()],
                        poly: p,
                    })
                    .collect(),
                (None, None) => Vec::new(),
            };
            poly_csv(&["n", "k", "i"], &rows)?;
        }
    }
    Ok(true)
}

fn cmd_eulerian(a: &EulerianArgs, format: Format) -> CmdResult {
    a.budget.check(a.n)?;
    let out = if a.refined {
        SequenceOutput {
            n: a.n,
            polynomial: None,
            refined: Some(eulerian_refined(a.n)?),
        }
    } else {
        let p = match a.by {
            EulerianStat::Ascents => eulerian(a.n)?,
            EulerianStat::Descents => eulerian_by_descents(a.n)?,
        };
        SequenceOutput {
            n: a.n,
            polynomial: Some(p),
            refined: None,
        }
    };
    emit_sequence(&out, format)
}

fn cmd_derangement(a: &DerangementArgs, format: Format) -> CmdResult {
    a.budget.check(a.n)?;
    let out = if a.refined {
        SequenceOutput {
            n: a.n,
            polynomial: None,
            refined: Some(derangement_refined(a.n)?),
        }
    } else {
        let p = match a.by {
            DerangementStat::Ascents => derangement_poly(a.n)?,
            DerangementStat::Excedances => derangement_poly_by_excedance(a.n)?,
        };
        SequenceOutput {
            n: a.n,
            polynomial: Some(p),
            refined: None,
        }
    };
    emit_sequence(&out, format)
}
