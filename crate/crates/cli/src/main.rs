//! `geninv`: compute generalized inverses, check defining equations, check
//! theorem instances and run randomized suites.
//!
//! Exit codes: 0 success, 1 a check failed, 2 the requested inverse does not
//! exist, 3 bad input or configuration.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use geninv::equations::{check_all, parse_tags};
use geninv::io::{read_matrix, to_matrix_json};
use geninv::sampler::WeightMix;
use geninv::suite::{run_suite, Mode, SizeRange, SuiteConfig};
use geninv::theorems::{verify_theorem_with, VerifyOptions};
use geninv::{
    compute_inverse, Complex64, EquationContext, Existence, Field, GaussRat, GeninvError, InverseKind, Matrix,
    TheoremId, TheoremInputs, Verdict, WeightPolicy, Weights,
};

const EXIT_FAIL: u8 = 1;
const EXIT_NOT_EXISTS: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "geninv", version, about = "Exact weighted core inverses and theorem checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an inverse and write it as a matrix file.
    Compute(ComputeArgs),
    /// Check a candidate against a list of equations.
    Verify(VerifyArgs),
    /// Check one statement on given matrices.
    Theorem(TheoremArgs),
    /// Check statements on seeded random instances and write a JSON report.
    Suite(SuiteArgs),
}

#[derive(Args)]
struct WeightFiles {
    /// Left weight M.
    #[arg(long)]
    weight_m: Option<PathBuf>,
    /// Right weight N.
    #[arg(long)]
    weight_n: Option<PathBuf>,
    /// Weight W of the W-weighted core-EP inverse.
    #[arg(long)]
    weight_w: Option<PathBuf>,
}

#[derive(Args)]
struct ComputeArgs {
    /// mp, weighted-mp, group, drazin, core, core-ep, w-core-ep, core-M,
    /// dual-core-N, one, one-3M or one-4N.
    #[arg(long)]
    kind: String,
    #[arg(long)]
    matrix: PathBuf,
    #[command(flatten)]
    weights: WeightFiles,
    /// Accept invertible weights that are not Hermitian.
    #[arg(long)]
    allow_non_hermitian: bool,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long)]
    candidate: PathBuf,
    /// Comma separated equation tags, e.g. `1,2,3M,4N`.
    #[arg(long)]
    tags: String,
    /// Index used by equations 1k and 6k; defaults to the index of A.
    #[arg(long)]
    k: Option<usize>,
    #[command(flatten)]
    weights: WeightFiles,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MixArg {
    Mixed,
    PositiveDefinite,
    Generic,
}

impl From<MixArg> for WeightMix {
    fn from(m: MixArg) -> WeightMix {
        match m {
            MixArg::Mixed => WeightMix::Mixed,
            MixArg::PositiveDefinite => WeightMix::PositiveDefinite,
            MixArg::Generic => WeightMix::Generic,
        }
    }
}

#[derive(Args)]
struct TheoremArgs {
    /// Statement id, e.g. T3_7 or ROL4_4.
    #[arg(long)]
    id: String,
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: Option<PathBuf>,
    #[arg(long)]
    m: Option<PathBuf>,
    #[arg(long)]
    n: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,
    /// Comparison tolerance, float mode only.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Print the full report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SuiteArgs {
    /// JSON configuration file; flags given alongside override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma separated statement ids, or `all`.
    #[arg(long)]
    theorems: Option<String>,
    /// Dimensions as `MIN..MAX` or a single `N`.
    #[arg(long)]
    sizes: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, env = "GENINV_SEED")]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long, value_enum)]
    weight_policy: Option<MixArg>,
    #[arg(long)]
    entry_bound: Option<i64>,
    #[arg(long)]
    attempt_cap: Option<usize>,
    #[arg(long)]
    jobs: Option<usize>,
    /// Report file; standard output when absent.
    #[arg(long)]
    report: Option<PathBuf>,
}

/// An error together with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        let error = e.into();
        let code = match error.downcast_ref::<GeninvError>() {
            Some(GeninvError::InverseNotExists(_) | GeninvError::IndexTooHigh) => EXIT_NOT_EXISTS,
            _ => EXIT_INPUT,
        };
        Failure { code, error }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Compute(args) => compute(args),
        Command::Verify(args) => verify(args),
        Command::Theorem(args) => theorem(args),
        Command::Suite(args) => suite(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn load<T: Field>(path: &Path) -> anyhow::Result<Matrix<T>> {
    read_matrix(path).with_context(|| format!("reading {}", path.display()))
}

fn load_opt<T: Field>(path: Option<&PathBuf>) -> anyhow::Result<Option<Matrix<T>>> {
    path.map(|p| load(p)).transpose()
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn compute(args: ComputeArgs) -> Outcome {
    let kind: InverseKind = args.kind.parse()?;
    let a: Matrix<GaussRat> = load(&args.matrix)?;
    let m = load_opt(args.weights.weight_m.as_ref())?;
    let n = load_opt(args.weights.weight_n.as_ref())?;
    let w = load_opt(args.weights.weight_w.as_ref())?;
    let weights = Weights { m: m.as_ref(), n: n.as_ref(), w: w.as_ref() };
    let policy = if args.allow_non_hermitian { WeightPolicy::AllowNonHermitian } else { WeightPolicy::RequireHermitian };
    match compute_inverse(kind, &a, weights, policy)? {
        Existence::Exists(x) => {
            emit(args.out.as_deref(), &format!("{}\n", to_matrix_json(&x).trim_end()))?;
            Ok(0)
        }
        Existence::NotExists(reason) => {
            let record = json!({ "kind": kind.name(), "exists": false, "reason": reason });
            emit(args.out.as_deref(), &format!("{}\n", serde_json::to_string_pretty(&record)?))?;
            eprintln!("{kind} inverse does not exist: {reason}");
            Ok(EXIT_NOT_EXISTS)
        }
    }
}

fn verify(args: VerifyArgs) -> Outcome {
    let tags = parse_tags(&args.tags)?;
    if tags.is_empty() {
        return Err(anyhow!("no equation tags given").into());
    }
    let a: Matrix<GaussRat> = load(&args.matrix)?;
    let x: Matrix<GaussRat> = load(&args.candidate)?;
    let m = load_opt(args.weights.weight_m.as_ref())?;
    let n = load_opt(args.weights.weight_n.as_ref())?;
    if args.weights.weight_w.is_some() {
        return Err(anyhow!("equations do not take a weight W").into());
    }
    let mut ctx = EquationContext::new();
    if let Some(m) = &m {
        ctx = ctx.with_m(m);
    }
    if let Some(n) = &n {
        ctx = ctx.with_n(n);
    }
    let k = match args.k {
        Some(k) => k,
        None if a.is_square() => geninv::geninv::index(&a)?.k,
        None => 0,
    };
    ctx = ctx.with_k(k);
    let checks = check_all(&a, &x, &tags, &ctx)?;
    for c in &checks {
        let status = if c.holds { "holds" } else { "FAILS" };
        println!("{:<3} {status}  residual max-norm {:.6e}", c.tag.label(), c.residual.max_norm());
    }
    Ok(if checks.iter().all(|c| c.holds) { 0 } else { EXIT_FAIL })
}

fn theorem(args: TheoremArgs) -> Outcome {
    let id: TheoremId = args.id.parse()?;
    match (args.mode, args.tolerance) {
        (ModeArg::Exact, Some(_)) => bail_input("--tolerance is only valid with --mode float"),
        (_, Some(t)) if !(t.is_finite() && t > 0.0) => bail_input("--tolerance must be positive"),
        (ModeArg::Exact, None) => run_theorem::<GaussRat>(id, &args),
        (ModeArg::Float, _) => run_theorem::<Complex64>(id, &args),
    }
}

fn bail_input(msg: &str) -> Outcome {
    Err(Failure { code: EXIT_INPUT, error: anyhow!("{msg}") })
}

fn run_theorem<T: Field>(id: TheoremId, args: &TheoremArgs) -> Outcome {
    let inputs = TheoremInputs {
        a: load::<T>(&args.a)?,
        b: load_opt(args.b.as_ref())?,
        m: load_opt(args.m.as_ref())?,
        n: load_opt(args.n.as_ref())?,
    };
    let report = verify_theorem_with(id, &inputs, VerifyOptions { tolerance: args.tolerance })?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        for c in &report.clauses {
            let status = if c.holds { "true " } else { "false" };
            println!("{:<11} {status} {}", format!("{:?}", c.role), c.name);
        }
        for note in &report.notes {
            println!("note: {note}");
        }
        println!("{id}: {:?}", report.verdict);
    }
    Ok(if report.verdict == Verdict::Fail { EXIT_FAIL } else { 0 })
}

fn parse_sizes(s: &str) -> anyhow::Result<SizeRange> {
    let parse = |t: &str| t.trim().parse::<usize>().with_context(|| format!("bad size {t:?}"));
    match s.split_once("..") {
        Some((lo, hi)) => Ok(SizeRange { min: parse(lo)?, max: parse(hi.trim_start_matches('='))? }),
        None => {
            let n = parse(s)?;
            Ok(SizeRange { min: n, max: n })
        }
    }
}

fn parse_theorems(s: &str) -> anyhow::Result<Vec<TheoremId>> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(TheoremId::ALL.to_vec());
    }
    Ok(s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect::<Result<_, _>>()?)
}

fn suite_config(args: &SuiteArgs) -> anyhow::Result<SuiteConfig> {
    let mut config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str::<SuiteConfig>(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => {
            let theorems = args.theorems.as_deref().ok_or_else(|| anyhow!("--theorems or --config is required"))?;
            SuiteConfig::new(parse_theorems(theorems)?, 2, 4, 20, 0)
        }
    };
    if let Some(t) = &args.theorems {
        config.theorems = parse_theorems(t)?;
    }
    if let Some(s) = &args.sizes {
        config.sizes = parse_sizes(s)?;
    }
    if let Some(s) = args.samples {
        config.samples_per_size = s;
    }
    if let Some(s) = args.seed {
        config.seed = s;
    }
    if let Some(m) = args.mode {
        config.mode = m.into();
    }
    if let Some(t) = args.tolerance {
        config.tolerance = Some(t);
    }
    if let Some(w) = args.weight_policy {
        config.weight_policy = w.into();
    }
    if let Some(b) = args.entry_bound {
        config.entry_bound = b;
    }
    if let Some(c) = args.attempt_cap {
        config.attempt_cap = c;
    }
    if let Some(j) = args.jobs {
        config.jobs = Some(j);
    }
    if let Some(r) = &args.report {
        config.report_path = Some(r.clone());
    }
    config.validate()?;
    Ok(config)
}

fn suite(args: SuiteArgs) -> Outcome {
    let config = suite_config(&args)?;
    let report = run_suite(&config)?;
    let text = report.to_json();
    match &config.report_path {
        Some(path) => {
            fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            for s in &report.theorems {
                eprintln!(
                    "{:<9} instances {:>5}  hit {:>5}  pass {:>5}  fail {:>4}  exhausted {:>3}  errors {}",
                    s.theorem.name(),
                    s.instances,
                    s.hypothesis_hit,
                    s.passes,
                    s.fails,
                    s.sampling_exhausted,
                    s.errors.len()
                );
            }
        }
        None => print!("{text}"),
    }
    if report.is_clean() {
        Ok(0)
    } else {
        if report.totals.fails > 0 {
            eprintln!("{} instance(s) failed", report.totals.fails);
        }
        if report.totals.errors > 0 {
            eprintln!("{} instance(s) errored", report.totals.errors);
        }
        Ok(EXIT_FAIL)
    }
}
