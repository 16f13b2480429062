//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! A criterion that fails only through a known misprint in a statement is
//! reported as FAIL with the reason and does not fail the target; any other
//! FAIL does.

use std::fs;
use std::process::Command;
use std::time::Instant;

use geninv::equations::EquationContext;
use geninv::feasibility::solve_linear_penrose;
use geninv::fixtures::run_fixtures;
use geninv::inverses::satisfies_definition;
use geninv::sampler::{sample, SampleKind, SampleSpec, WeightMix};
use geninv::suite::{corpus, run_suite, SizeRange, SuiteConfig, SuiteReport};
use geninv::theorems::ClauseRole;
use geninv::weighted::{m_core_solution_set, n_dual_core_solution_set, SolutionSet};
use geninv::{
    check_membership, compute_inverse, verify_theorem, EquationTag, ExactMatrix, Existence, GaussRat, InverseKind,
    TheoremId, Verdict, VerificationReport, WeightPolicy, Weights,
};

use EquationTag::*;

struct Outcome {
    pass: bool,
    detail: String,
    /// Why a FAIL is expected, when it is.
    known: Option<String>,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Outcome { pass, detail, known: None }
    }
}

fn q(rows: &[&[(i64, i64)]]) -> ExactMatrix {
    ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&(p, d)| GaussRat::ratio(p, d)).collect()).collect()).unwrap()
}

fn int(rows: &[&[i64]]) -> ExactMatrix {
    ExactMatrix::from_i64(rows)
}

fn existing(kind: InverseKind, a: &ExactMatrix, w: Weights<'_, GaussRat>, policy: WeightPolicy) -> Option<ExactMatrix> {
    compute_inverse(kind, a, w, policy).ok().and_then(Existence::into_option)
}

fn worked_examples() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();

    let a = int(&[&[1, 1], &[0, 0]]);
    let m = int(&[&[1, 1], &[0, 1]]);
    let x = int(&[&[1, 0], &[0, 0]]);
    if !check_membership(&a, &x, &[P3M, P6, P7], &EquationContext::new().with_m(&m)).unwrap() {
        bad.push("M-core definition example fails 3M,6,7");
    }
    let n = q(&[&[(1, 2), (1, 2)], &[(3, 10), (7, 10)]]);
    let y = q(&[&[(1, 2), (1, 2)], &[(1, 2), (1, 2)]]);
    if !check_membership(&a, &y, &[P4N, P8, P9], &EquationContext::new().with_n(&n)).unwrap() {
        bad.push("N-dual definition example fails 4N,8,9");
    }

    let a = int(&[&[1, 0, 1], &[0, 1, 0], &[0, 0, 0]]);
    let w = int(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 1]]);
    let ws = Weights::new().with_m(&w).with_n(&w);
    let p = WeightPolicy::RequireHermitian;
    if existing(InverseKind::Group, &a, ws, p) != Some(a.clone()) {
        bad.push("group inverse differs from A");
    }
    if existing(InverseKind::CoreM, &a, ws, p) != Some(int(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]])) {
        bad.push("M-core differs from diag(1,1,0)");
    }
    let dual = q(&[&[(1, 2), (0, 1), (1, 2)], &[(0, 1), (1, 1), (0, 1)], &[(1, 2), (0, 1), (1, 2)]]);
    if existing(InverseKind::DualCoreN, &a, ws, p) != Some(dual) {
        bad.push("N-dual core differs from the printed matrix");
    }
    let secs = start.elapsed().as_secs_f64();
    let detail = if bad.is_empty() { format!("all fixtures reproduce bitwise in {secs:.3} s") } else { bad.join("; ") };
    Outcome::new(bad.is_empty() && secs < 1.0, detail)
}

fn weighted_mp_discrepancy() -> Outcome {
    let a = int(&[&[1, 0, 1], &[0, 1, 0], &[0, 0, 0]]);
    let w = int(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 1]]);
    let ctx = EquationContext::new().with_m(&w).with_n(&w);
    let printed = q(&[&[(1, 2), (0, 1), (1, 1)], &[(0, 1), (1, 1), (0, 1)], &[(1, 2), (0, 1), (0, 1)]]);
    let printed_fails_2 = !check_membership(&a, &printed, &[P2], &ctx).unwrap();

    // Any Y1 in A{1,3M} and Y2 in A{1,4N} give the weighted MP inverse as Y2 A Y1.
    let y1 = solve_linear_penrose(&a, &[P1, P3M], Some(&w), None).unwrap().particular.unwrap();
    let y2 = solve_linear_penrose(&a, &[P1, P4N], None, Some(&w)).unwrap().particular.unwrap();
    let oracle = &(&y2 * &a) * &y1;
    let oracle_ok = check_membership(&a, &oracle, &[P1, P2, P3M, P4N], &ctx).unwrap();
    let computed = existing(InverseKind::WeightedMp, &a, Weights::new().with_m(&w).with_n(&w), WeightPolicy::RequireHermitian);

    let report = run_suite(&SuiteConfig::new(vec![TheoremId::L2_6], 2, 2, 1, 0)).unwrap();
    let noted = report
        .fixtures
        .iter()
        .any(|f| f.name == "three-by-three-weighted-mp" && f.verdict == Verdict::InterpretationNote);
    let pass = printed_fails_2 && oracle_ok && computed.as_ref() == Some(&oracle) && noted;
    Outcome::new(
        pass,
        format!(
            "printed matrix fails (2): {printed_fails_2}; oracle satisfies 1,2,3M,4N: {oracle_ok}; \
             library agrees with oracle: {}; report note: {noted}",
            computed.as_ref() == Some(&oracle)
        ),
    )
}

struct DefinitionInstance {
    a: ExactMatrix,
    m: ExactMatrix,
    n: ExactMatrix,
    w: ExactMatrix,
}

fn definition_corpus(n: usize, count: usize) -> Vec<DefinitionInstance> {
    (0..count as u64)
        .map(|s| {
            let seed = (n as u64) << 32 | s;
            let complex = s % 4 == 3;
            let r = s as usize % (n + 1);
            let spec = |kind, tag: u64| SampleSpec::new(kind, n, seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15)).with_complex(complex);
            let (mk, nk) = if s % 2 == 0 {
                (SampleKind::PositiveDefinite, SampleKind::HermitianInvertible)
            } else {
                (SampleKind::HermitianInvertible, SampleKind::PositiveDefinite)
            };
            DefinitionInstance {
                a: sample(&spec(SampleKind::IndexOne, 1).with_rank(r)).unwrap(),
                m: sample(&spec(mk, 2)).unwrap(),
                n: sample(&spec(nk, 3)).unwrap(),
                w: sample(&spec(SampleKind::Invertible, 4)).unwrap(),
            }
        })
        .collect()
}

fn definition_soundness(corpora: &[(usize, Vec<DefinitionInstance>)]) -> Outcome {
    let mut witnesses = 0;
    let mut failures = Vec::new();
    for (n, instances) in corpora {
        for (i, inst) in instances.iter().enumerate() {
            let ws = Weights::new().with_m(&inst.m).with_n(&inst.n).with_w(&inst.w);
            for kind in InverseKind::ALL {
                match compute_inverse(kind, &inst.a, ws, WeightPolicy::RequireHermitian) {
                    Ok(Existence::Exists(x)) => {
                        witnesses += 1;
                        if !satisfies_definition(kind, &inst.a, &x, ws).unwrap() {
                            failures.push(format!("n={n} #{i} {kind}"));
                        }
                    }
                    Ok(Existence::NotExists(_)) => {}
                    Err(e) => failures.push(format!("n={n} #{i} {kind}: {e}")),
                }
            }
        }
    }
    let total: usize = corpora.iter().map(|(_, c)| c.len()).sum();
    Outcome::new(
        failures.is_empty(),
        format!("{total} instances, {witnesses} witnesses, {} with nonzero residual {:?}", failures.len(), first(&failures)),
    )
}

fn first(v: &[String]) -> Vec<&String> {
    v.iter().take(3).collect()
}

fn uniqueness(corpora: &[(usize, Vec<DefinitionInstance>)]) -> Outcome {
    let mut singletons = 0;
    let mut failures = Vec::new();
    for (n, instances) in corpora.iter().filter(|(n, _)| *n <= 3) {
        for (i, inst) in instances.iter().enumerate() {
            let cases = [
                (InverseKind::CoreM, m_core_solution_set(&inst.a, &inst.m).unwrap(), Weights::new().with_m(&inst.m)),
                (InverseKind::DualCoreN, n_dual_core_solution_set(&inst.a, &inst.n).unwrap(), Weights::new().with_n(&inst.n)),
            ];
            for (kind, set, ws) in cases {
                let closed = existing(kind, &inst.a, ws, WeightPolicy::RequireHermitian);
                match (&closed, &set) {
                    (Some(x), SolutionSet::Singleton(s)) if x == s => singletons += 1,
                    (None, SolutionSet::Empty) => {}
                    _ => failures.push(format!("n={n} #{i} {kind}")),
                }
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("{singletons} singleton solution sets equal the closed form, {} disagreements {:?}", failures.len(), first(&failures)),
    )
}

/// Literal clauses known to be misprinted; they are checked as printed.
const T3_9_LITERAL: &str = "Q A = dN(A) A";
const T3_18_LITERAL: &str = "(g) R((A*)^T) ⊆ R((AN^-1)^T) and R(A) ⊆ R(AM)";
const T3_18_READING: &str = "(g) read with R(M^-1 A*) ⊆ R(A) as its second half";

/// Whether a failed report is explained by the documented misprints alone:
/// it contains a literal misprinted clause, every other equivalent clause
/// agrees, the corrected reading agrees with them, and every other conclusion
/// holds.
fn explained_by_misprint(r: &VerificationReport<GaussRat>) -> bool {
    let literal = |name: &str| name == T3_9_LITERAL || name == T3_18_LITERAL;
    let mut eq = r
        .clauses
        .iter()
        .filter(|c| (c.role == ClauseRole::Equivalent && !literal(&c.name)) || c.name == T3_18_READING)
        .map(|c| c.holds);
    let agree = match eq.next() {
        Some(v) => eq.all(|h| h == v),
        None => true,
    };
    let conclusions = r.clauses.iter().filter(|c| c.role == ClauseRole::Conclusion && !literal(&c.name)).all(|c| c.holds);
    let has_literal = r.clauses.iter().any(|c| literal(&c.name));
    agree && conclusions && has_literal
}

struct Tally {
    hits: usize,
    fails: usize,
    explained: usize,
    errors: usize,
}

fn tally(id: TheoremId, sizes: SizeRange, samples: usize, seed: u64, mut extra: impl FnMut(&VerificationReport<GaussRat>)) -> Tally {
    let mut t = Tally { hits: 0, fails: 0, explained: 0, errors: 0 };
    for (_, _, inst) in corpus(id, sizes, samples, seed, WeightMix::Mixed).unwrap() {
        let r = match verify_theorem(id, &inst.inputs) {
            Ok(r) => r,
            Err(_) => {
                t.errors += 1;
                continue;
            }
        };
        if r.hypothesis_met() {
            t.hits += 1;
        }
        if r.verdict == Verdict::Fail {
            t.fails += 1;
            if explained_by_misprint(&r) {
                t.explained += 1;
            }
        }
        extra(&r);
    }
    t
}

fn characterizations() -> Outcome {
    use TheoremId::*;
    let sizes = SizeRange { min: 2, max: 3 };
    let mut parts = Vec::new();
    let mut unexplained = 0;
    let mut mismatches = 0;
    let mut short = false;
    for id in [T3_7, T3_9, T3_13, T3_17, T3_18, T3_19] {
        let t = tally(id, sizes, 280, 5, |_| {});
        short |= t.hits < 500;
        unexplained += t.fails - t.explained + t.errors;
        mismatches += t.fails;
        parts.push(format!("{id} hits {} fails {}", t.hits, t.fails));
    }
    let mut out = Outcome::new(mismatches == 0 && !short, parts.join(", "));
    if mismatches > 0 && unexplained == 0 && !short {
        out.known = Some(format!(
            "every failure is the literal clause \"{T3_9_LITERAL}\" of T3_9 or \"{T3_18_LITERAL}\" of T3_18; \
             the corrected readings agree on all instances"
        ));
    }
    out
}

fn identity_families() -> Outcome {
    use TheoremId::*;
    let sizes = SizeRange { min: 2, max: 3 };
    let mut parts = Vec::new();
    let mut ok = true;
    for id in [T3_14, T3_15, T3_16cor] {
        let mut all_powers = 0;
        let t = tally(id, sizes, 140, 6, |r| {
            let powers = (1..=4)
                .filter(|j| r.clauses.iter().any(|c| c.name.starts_with("(d)") && c.name.contains(&format!("^{j})"))))
                .count();
            if powers == 4 {
                all_powers += 1;
            }
        });
        ok &= t.hits >= 200 && t.fails == 0 && t.errors == 0;
        if id != T3_16cor {
            ok &= all_powers == t.hits;
        }
        let mut part = format!("{id} hits {} fails {} errors {}", t.hits, t.fails, t.errors);
        if id != T3_16cor {
            part += &format!(" powers 1..4 checked on {all_powers}");
        }
        parts.push(part);
    }
    Outcome::new(ok, parts.join(", "))
}

fn suite_of(ids: Vec<TheoremId>, min: usize, max: usize, samples: usize, seed: u64) -> SuiteReport {
    run_suite(&SuiteConfig::new(ids, min, max, samples, seed)).unwrap()
}

fn reverse_order_laws() -> Outcome {
    use TheoremId::*;
    let report = suite_of(vec![ROL4_1, ROL4_2, ROL4_3, ROL4_4, ROL4_5, ROL4_6, ROL4_7], 2, 3, 100, 7);
    let mut ok = true;
    let mut parts = Vec::new();
    for s in &report.theorems {
        ok &= s.fails == 0 && s.errors.is_empty();
        if matches!(s.theorem, ROL4_4 | ROL4_5) {
            ok &= s.instances >= 200 && s.hypothesis_hit == s.instances;
        }
        parts.push(format!("{} {}/{} hit, {} fails", s.theorem, s.hypothesis_hit, s.instances, s.fails));
    }
    Outcome::new(ok && report.theorems.len() == 7, parts.join(", "))
}

fn duality_and_implications() -> Outcome {
    use TheoremId::*;
    let report = suite_of(vec![L3_8, P3_2, P3_5, P3_11, P3_12], 2, 4, 50, 8);
    let ok = report.theorems.iter().all(|s| s.fails == 0 && s.errors.is_empty());
    let parts: Vec<String> =
        report.theorems.iter().map(|s| format!("{} {} instances {} fails", s.theorem, s.instances, s.fails)).collect();
    Outcome::new(ok, parts.join(", "))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |jobs: &str| {
        let path = dir.path().join(format!("report-{jobs}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_geninv"))
            .args(["suite", "--theorems", "T3_7,T3_18,ROL4_1,ROL4_4,L3_8", "--sizes", "2..3", "--samples", "6"])
            .args(["--seed", "11", "--jobs", jobs, "--report"])
            .arg(&path)
            .env_remove("GENINV_SEED")
            .output()
            .unwrap()
            .status;
        (status.code(), fs::read(&path).unwrap_or_default())
    };
    let (c1, r1) = run("1");
    let (c3, r3) = run("3");
    let same = !r1.is_empty() && r1 == r3;
    Outcome::new(same && c1 == c3, format!("reports with 1 and 3 workers identical: {same} ({} bytes)", r1.len()))
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() {
    let fixtures_ok = run_fixtures().is_ok();
    let corpora: Vec<(usize, Vec<DefinitionInstance>)> = (2..=5).map(|n| (n, definition_corpus(n, 200))).collect();
    let criteria: Vec<(&str, Criterion<'_>)> = vec![
        ("1 fixture regression", Box::new(worked_examples)),
        ("2 weighted-MP discrepancy", Box::new(weighted_mp_discrepancy)),
        ("3 definition soundness", Box::new(|| definition_soundness(&corpora))),
        ("4 uniqueness", Box::new(|| uniqueness(&corpora))),
        ("5 characterization equivalences", Box::new(characterizations)),
        ("6 identity families", Box::new(identity_families)),
        ("7 reverse-order laws", Box::new(reverse_order_laws)),
        ("8 duality and implications", Box::new(duality_and_implications)),
        ("9 determinism", Box::new(determinism)),
    ];
    let mut unexpected = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let out = check();
        let secs = start.elapsed().as_secs_f64();
        let status = if out.pass { "PASS" } else { "FAIL" };
        println!("{status} criterion {name} [{secs:.1} s]: {}", out.detail);
        match (&out.known, out.pass) {
            (_, true) => {}
            (Some(why), false) => println!("     known statement defect: {why}"),
            (None, false) => unexpected += 1,
        }
    }
    if !fixtures_ok || unexpected > 0 {
        eprintln!("{unexpected} criterion failure(s) not explained by known statement defects");
        std::process::exit(1);
    }
}
