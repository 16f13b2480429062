//! Randomized theorem suites: sample instances, check every clause, and
//! assemble a deterministic report.

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GeninvError, Result};
use crate::fixtures::{run_fixtures, FixtureResult};
use crate::io::MatrixFile;
use crate::linalg::rank;
use crate::matrix::Matrix;
use crate::rng::derive_seed;
use crate::sampler::{sample_instance, sample_rol_pair_with, WeightMix, DEFAULT_ATTEMPT_CAP, DEFAULT_ENTRY_BOUND};
use crate::scalar::{Field, GaussRat};
use crate::theorems::{verify_theorem_with, ClauseRole, TheoremId, TheoremInputs, Verdict, VerifyOptions};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

/// Inclusive range of dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeRange {
    pub min: usize,
    pub max: usize,
}

fn default_entry_bound() -> i64 {
    DEFAULT_ENTRY_BOUND
}

fn default_attempt_cap() -> usize {
    DEFAULT_ATTEMPT_CAP
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SuiteConfig {
    pub theorems: Vec<TheoremId>,
    pub sizes: SizeRange,
    pub samples_per_size: usize,
    pub seed: u64,
    #[serde(default)]
    pub mode: Mode,
    /// Comparison tolerance; only meaningful in float mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub weight_policy: WeightMix,
    #[serde(default = "default_entry_bound")]
    pub entry_bound: i64,
    /// Candidate cap for reverse-order-law rejection sampling.
    #[serde(default = "default_attempt_cap")]
    pub attempt_cap: usize,
    /// Worker threads; does not affect the report.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report_path: Option<PathBuf>,
}

impl SuiteConfig {
    pub fn new(theorems: Vec<TheoremId>, min: usize, max: usize, samples_per_size: usize, seed: u64) -> Self {
        SuiteConfig {
            theorems,
            sizes: SizeRange { min, max },
            samples_per_size,
            seed,
            mode: Mode::Exact,
            tolerance: None,
            weight_policy: WeightMix::default(),
            entry_bound: DEFAULT_ENTRY_BOUND,
            attempt_cap: DEFAULT_ATTEMPT_CAP,
            jobs: None,
            report_path: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(GeninvError::InvalidConfig(msg.to_string()));
        if self.theorems.is_empty() {
            return bad("the theorem list is empty");
        }
        if self.samples_per_size == 0 {
            return bad("samplesPerSize must be at least 1");
        }
        if self.sizes.min == 0 || self.sizes.min > self.sizes.max {
            return bad("sizes must satisfy 1 <= min <= max");
        }
        if self.entry_bound < 1 {
            return bad("entryBound must be at least 1");
        }
        if self.attempt_cap == 0 {
            return bad("attemptCap must be at least 1");
        }
        if self.jobs == Some(0) {
            return bad("jobs must be at least 1");
        }
        match (self.mode, self.tolerance) {
            (Mode::Exact, Some(_)) => bad("exact mode does not take a tolerance"),
            (Mode::Float, Some(t)) if !(t.is_finite() && t > 0.0) => bad("tolerance must be positive and finite"),
            _ => Ok(()),
        }
    }
}

/// The configuration fields that determine the report contents.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunParameters {
    pub theorems: Vec<TheoremId>,
    pub sizes: SizeRange,
    pub samples_per_size: usize,
    pub seed: u64,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub weight_policy: WeightMix,
    pub entry_bound: i64,
    pub attempt_cap: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: MatrixFile,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClauseRecord {
    pub name: String,
    pub role: ClauseRole,
    pub witness: MatrixFile,
}

/// A Fail verdict, with enough data to replay it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FailureRecord {
    pub seed: u64,
    pub n: usize,
    pub instance_digest: String,
    pub inputs: Vec<NamedMatrix>,
    /// Every false clause with its witness.
    pub false_clauses: Vec<ClauseRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ErrorRecord {
    pub seed: u64,
    pub n: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCount {
    pub n: usize,
    pub rank: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TheoremStats {
    pub theorem: TheoremId,
    pub instances: usize,
    pub hypothesis_hit: usize,
    pub passes: usize,
    pub fails: usize,
    /// Reverse-order laws only: seeds whose candidate cap ran out.
    pub sampling_exhausted: usize,
    /// Reverse-order laws only: candidates drawn for the released pairs.
    pub candidate_draws: usize,
    pub interpretation_notes: Vec<String>,
    /// Ranks of the sampled `A` per dimension.
    pub rank_coverage: Vec<RankCount>,
    pub failures: Vec<FailureRecord>,
    pub errors: Vec<ErrorRecord>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Totals {
    pub instances: usize,
    pub hypothesis_hit: usize,
    pub passes: usize,
    pub fails: usize,
    pub errors: usize,
    pub sampling_exhausted: usize,
    pub fixture_failures: usize,
    pub interpretation_notes: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport {
    pub schema_version: u32,
    pub parameters: RunParameters,
    pub theorems: Vec<TheoremStats>,
    pub fixtures: Vec<FixtureResult>,
    pub totals: Totals,
}

impl SuiteReport {
    /// No Fail verdict anywhere and no instance errored.
    pub fn is_clean(&self) -> bool {
        self.totals.fails == 0 && self.totals.errors == 0 && self.totals.fixture_failures == 0
    }

    pub fn stats(&self, id: TheoremId) -> Option<&TheoremStats> {
        self.theorems.iter().find(|s| s.theorem == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

enum Outcome {
    Checked { rank: usize, attempts: usize, verdict: Verdict, notes: Vec<String>, failure: Option<FailureRecord> },
    Exhausted,
    Error(String),
}

struct Task {
    id: TheoremId,
    n: usize,
    seed: u64,
}

fn task_seed(root: u64, ordinal: usize, n: usize, s: usize) -> u64 {
    derive_seed(root, ((ordinal as u64) << 40) | ((n as u64) << 24) | s as u64)
}

fn failure_record<T: Field>(
    seed: u64,
    n: usize,
    inputs: &TheoremInputs<T>,
    report: &crate::theorems::VerificationReport<T>,
) -> FailureRecord {
    FailureRecord {
        seed,
        n,
        instance_digest: report.instance_digest.clone(),
        inputs: inputs
            .named()
            .into_iter()
            .map(|(name, m)| NamedMatrix { name: name.to_string(), matrix: MatrixFile::from_matrix(m) })
            .collect(),
        false_clauses: report
            .failed_clauses()
            .map(|c| ClauseRecord {
                name: c.name.clone(),
                role: c.role,
                witness: MatrixFile::from_matrix(c.witness.as_ref().expect("false clauses carry witnesses")),
            })
            .collect(),
    }
}

fn check<T: Field>(task: &Task, inputs: &TheoremInputs<GaussRat>, options: VerifyOptions) -> Result<(Verdict, Vec<String>, Option<FailureRecord>)> {
    let converted = TheoremInputs {
        a: inputs.a.map(T::from_exact),
        b: inputs.b.as_ref().map(|m| m.map(T::from_exact)),
        m: inputs.m.as_ref().map(|m| m.map(T::from_exact)),
        n: inputs.n.as_ref().map(|m| m.map(T::from_exact)),
    };
    let report = verify_theorem_with(task.id, &converted, options)?;
    let failure = (report.verdict == Verdict::Fail).then(|| failure_record(task.seed, task.n, &converted, &report));
    Ok((report.verdict, report.notes, failure))
}

fn run_task(task: &Task, config: &SuiteConfig) -> Outcome {
    let sampled = if task.id.is_reverse_order_law() {
        match sample_rol_pair_with(task.id, task.n, task.seed, config.entry_bound, config.attempt_cap) {
            Ok(pair) => {
                let inputs = TheoremInputs::new(pair.a).with_b(pair.b);
                let inputs = match task.id {
                    TheoremId::ROL4_2 | TheoremId::ROL4_5 => inputs.with_n(pair.weight),
                    _ => inputs.with_m(pair.weight),
                };
                Ok((rank(&inputs.a), pair.attempts, inputs))
            }
            Err(GeninvError::HypothesisSamplingExhausted { .. }) => return Outcome::Exhausted,
            Err(e) => Err(e),
        }
    } else {
        sample_instance(task.id, task.n, task.seed, config.entry_bound, config.weight_policy).map(|i| (i.rank, 0, i.inputs))
    };
    let (rank, attempts, inputs) = match sampled {
        Ok(v) => v,
        Err(e) => return Outcome::Error(e.to_string()),
    };
    let options = VerifyOptions { tolerance: config.tolerance };
    let checked = match config.mode {
        Mode::Exact => check::<GaussRat>(task, &inputs, options),
        Mode::Float => check::<Complex64>(task, &inputs, options),
    };
    match checked {
        Ok((verdict, notes, failure)) => Outcome::Checked { rank, attempts, verdict, notes, failure },
        Err(e) => Outcome::Error(e.to_string()),
    }
}

fn summarize(id: TheoremId, outcomes: Vec<(&Task, Outcome)>) -> TheoremStats {
    let mut s = TheoremStats {
        theorem: id,
        instances: 0,
        hypothesis_hit: 0,
        passes: 0,
        fails: 0,
        sampling_exhausted: 0,
        candidate_draws: 0,
        interpretation_notes: Vec::new(),
        rank_coverage: Vec::new(),
        failures: Vec::new(),
        errors: Vec::new(),
    };
    let mut ranks: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (task, outcome) in outcomes {
        s.instances += 1;
        match outcome {
            Outcome::Checked { rank, attempts, verdict, notes, failure } => {
                *ranks.entry((task.n, rank)).or_default() += 1;
                s.candidate_draws += attempts;
                for note in notes {
                    if !s.interpretation_notes.contains(&note) {
                        s.interpretation_notes.push(note);
                    }
                }
                match verdict {
                    Verdict::HypothesisNotMet => {}
                    Verdict::Pass | Verdict::InterpretationNote => {
                        s.hypothesis_hit += 1;
                        s.passes += 1;
                    }
                    Verdict::Fail => {
                        s.hypothesis_hit += 1;
                        s.fails += 1;
                    }
                }
                s.failures.extend(failure);
            }
            Outcome::Exhausted => s.sampling_exhausted += 1,
            Outcome::Error(message) => s.errors.push(ErrorRecord { seed: task.seed, n: task.n, message }),
        }
    }
    s.interpretation_notes.sort();
    s.rank_coverage = ranks.into_iter().map(|((n, rank), count)| RankCount { n, rank, count }).collect();
    s.failures.sort_by(|x, y| x.instance_digest.cmp(&y.instance_digest).then(x.seed.cmp(&y.seed)));
    s
}

/// Run a suite. The report depends only on the configuration, never on the
/// number of workers or their scheduling.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let mut theorems = config.theorems.clone();
    theorems.sort();
    theorems.dedup();
    let mut tasks = Vec::new();
    for &id in &theorems {
        let ordinal = TheoremId::ALL.iter().position(|&t| t == id).expect("listed");
        for n in config.sizes.min..=config.sizes.max {
            for s in 0..config.samples_per_size {
                tasks.push(Task { id, n, seed: task_seed(config.seed, ordinal, n, s) });
            }
        }
    }
    let run = || tasks.par_iter().map(|t| (t, run_task(t, config))).collect::<Vec<_>>();
    let outcomes = match config.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| GeninvError::InvalidConfig(format!("worker pool: {e}")))?
            .install(run),
        None => run(),
    };
    let mut grouped: BTreeMap<TheoremId, Vec<(&Task, Outcome)>> = BTreeMap::new();
    for (t, o) in outcomes {
        grouped.entry(t.id).or_default().push((t, o));
    }
    let stats: Vec<TheoremStats> = grouped.into_iter().map(|(id, o)| summarize(id, o)).collect();
    let fixtures = run_fixtures()?;
    let mut totals = Totals::default();
    for s in &stats {
        totals.instances += s.instances;
        totals.hypothesis_hit += s.hypothesis_hit;
        totals.passes += s.passes;
        totals.fails += s.fails;
        totals.errors += s.errors.len();
        totals.sampling_exhausted += s.sampling_exhausted;
    }
    totals.fixture_failures = fixtures.iter().filter(|f| f.verdict == Verdict::Fail).count();
    totals.interpretation_notes = fixtures.iter().filter(|f| f.verdict == Verdict::InterpretationNote).count();
    Ok(SuiteReport {
        schema_version: SCHEMA_VERSION,
        parameters: RunParameters {
            theorems,
            sizes: config.sizes,
            samples_per_size: config.samples_per_size,
            seed: config.seed,
            mode: config.mode,
            tolerance: config.tolerance,
            weight_policy: config.weight_policy,
            entry_bound: config.entry_bound,
            attempt_cap: config.attempt_cap,
        },
        theorems: stats,
        fixtures,
        totals,
    })
}

/// Sampled instances for statements that are not reverse-order laws, as used
/// by the property checks: `(seed, n, instance)` in a fixed order.
pub fn corpus(id: TheoremId, sizes: SizeRange, samples: usize, seed: u64, mix: WeightMix) -> Result<Vec<(u64, usize, crate::sampler::Instance)>> {
    let ordinal = TheoremId::ALL.iter().position(|&t| t == id).expect("listed");
    let mut out = Vec::new();
    for n in sizes.min..=sizes.max {
        for s in 0..samples {
            let seed = task_seed(seed, ordinal, n, s);
            out.push((seed, n, sample_instance(id, n, seed, DEFAULT_ENTRY_BOUND, mix)?));
        }
    }
    Ok(out)
}

/// Convert an exact matrix for floating-point evaluation.
pub fn to_float(m: &Matrix<GaussRat>) -> Matrix<Complex64> {
    m.map(Complex64::from_exact)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        let ok = SuiteConfig::new(vec![TheoremId::L2_6], 2, 3, 2, 1);
        assert!(ok.validate().is_ok());
        let mut c = ok.clone();
        c.theorems.clear();
        assert!(matches!(c.validate(), Err(GeninvError::InvalidConfig(_))));
        let mut c = ok.clone();
        c.tolerance = Some(1e-9);
        assert!(c.validate().is_err());
        c.mode = Mode::Float;
        assert!(c.validate().is_ok());
        let mut c = ok;
        c.sizes = SizeRange { min: 3, max: 2 };
        assert!(c.validate().is_err());
    }

    #[test]
    fn config_parses_with_defaults() {
        let text = r#"{"theorems":["T3_14"],"sizes":{"min":2,"max":3},"samplesPerSize":4,"seed":7}"#;
        let c: SuiteConfig = serde_json::from_str(text).unwrap();
        assert_eq!(c.entry_bound, DEFAULT_ENTRY_BOUND);
        assert_eq!(c.mode, Mode::Exact);
        assert!(serde_json::from_str::<SuiteConfig>(r#"{"theorems":[],"bogus":1}"#).is_err());
    }

    #[test]
    fn small_suite_is_clean_and_independent_of_workers() {
        let mut c = SuiteConfig::new(vec![TheoremId::L2_6, TheoremId::T3_14], 2, 3, 3, 11);
        c.jobs = Some(1);
        let one = run_suite(&c).unwrap();
        c.jobs = Some(3);
        let three = run_suite(&c).unwrap();
        assert_eq!(one.to_json(), three.to_json());
        assert!(one.is_clean(), "{}", one.to_json());
        assert_eq!(one.totals.instances, 12);
        let back: SuiteReport = serde_json::from_str(&one.to_json()).unwrap();
        assert_eq!(back, one);
    }
}
