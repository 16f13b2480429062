//! Worked examples with known answers, checked bitwise in exact arithmetic.

use serde::{Deserialize, Serialize};

use crate::equations::{check_all, EquationContext, EquationTag};
use crate::error::Result;
use crate::geninv::group_inverse;
use crate::io::MatrixFile;
use crate::matrix::Matrix;
use crate::scalar::GaussRat;
use crate::theorems::Verdict;
use crate::weighted::{m_weighted_core, n_weighted_dual_core, weighted_mp, WeightPolicy, WeightedProblem};

use EquationTag::*;

type Q = Matrix<GaussRat>;

fn q(rows: &[&[(i64, i64)]]) -> Q {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&(p, d)| GaussRat::ratio(p, d)).collect()).collect())
        .expect("rectangular literal")
}

/// `[[1, 1], [0, 0]]`, used by both small definition examples.
pub fn small_matrix() -> Q {
    Q::from_i64(&[&[1, 1], &[0, 0]])
}

/// Invertible, non-Hermitian left weight of the small M-core example.
pub fn small_m_weight() -> Q {
    Q::from_i64(&[&[1, 1], &[0, 1]])
}

pub fn small_m_core() -> Q {
    Q::from_i64(&[&[1, 0], &[0, 0]])
}

/// Invertible, non-Hermitian right weight of the small N-dual example.
pub fn small_n_weight() -> Q {
    q(&[&[(1, 2), (1, 2)], &[(3, 10), (7, 10)]])
}

pub fn small_n_dual() -> Q {
    q(&[&[(1, 2), (1, 2)], &[(1, 2), (1, 2)]])
}

/// `[[1, 0, 1], [0, 1, 0], [0, 0, 0]]`.
pub fn three_by_three() -> Q {
    Q::from_i64(&[&[1, 0, 1], &[0, 1, 0], &[0, 0, 0]])
}

/// `diag(1, 2, 1)`, used as both `M` and `N` with [`three_by_three`].
pub fn three_by_three_weight() -> Q {
    Q::diag(&[GaussRat::from_int(1), GaussRat::from_int(2), GaussRat::from_int(1)])
}

pub fn three_by_three_m_core() -> Q {
    Q::diag(&[GaussRat::from_int(1), GaussRat::from_int(1), GaussRat::from_int(0)])
}

pub fn three_by_three_n_dual() -> Q {
    q(&[&[(1, 2), (0, 1), (1, 2)], &[(0, 1), (1, 1), (0, 1)], &[(1, 2), (0, 1), (1, 2)]])
}

/// Weighted Moore-Penrose inverse as originally printed for the 3x3 example.
/// It violates `XAX = X` and `(MAX)* = MAX`.
pub fn three_by_three_weighted_mp_as_printed() -> Q {
    q(&[&[(1, 2), (0, 1), (1, 1)], &[(0, 1), (1, 1), (0, 1)], &[(1, 2), (0, 1), (0, 1)]])
}

/// The actual weighted Moore-Penrose inverse of the 3x3 example.
pub fn three_by_three_weighted_mp() -> Q {
    q(&[&[(1, 2), (0, 1), (0, 1)], &[(0, 1), (1, 1), (0, 1)], &[(1, 2), (0, 1), (0, 1)]])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TagStatus {
    pub tag: EquationTag,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FixtureResult {
    pub name: String,
    pub verdict: Verdict,
    pub expected: MatrixFile,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub computed: Option<MatrixFile>,
    /// Defining equations evaluated at the expected matrix.
    pub equations: Vec<TagStatus>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

fn statuses(a: &Q, x: &Q, tags: &[EquationTag], ctx: &EquationContext<'_, GaussRat>) -> Result<Vec<TagStatus>> {
    Ok(check_all(a, x, tags, ctx)?.into_iter().map(|c| TagStatus { tag: c.tag, holds: c.holds }).collect())
}

fn regression(
    name: &str,
    a: &Q,
    expected: Q,
    computed: Option<Q>,
    tags: &[EquationTag],
    ctx: &EquationContext<'_, GaussRat>,
) -> Result<FixtureResult> {
    let equations = statuses(a, &expected, tags, ctx)?;
    let ok = computed.as_ref() == Some(&expected) && equations.iter().all(|s| s.holds);
    Ok(FixtureResult {
        name: name.to_string(),
        verdict: if ok { Verdict::Pass } else { Verdict::Fail },
        expected: MatrixFile::from_matrix(&expected),
        computed: computed.as_ref().map(MatrixFile::from_matrix),
        equations,
        note: None,
    })
}

/// Run every fixture; all are exact and take well under a second.
pub fn run_fixtures() -> Result<Vec<FixtureResult>> {
    let mut out = Vec::new();

    let a = small_matrix();
    let m = small_m_weight();
    let p = WeightedProblem::new(a.clone(), Some(m.clone()), None, WeightPolicy::AllowNonHermitian)?;
    out.push(regression(
        "m-core-definition-example",
        &a,
        small_m_core(),
        m_weighted_core(&p)?.into_option(),
        &[P3M, P6, P7],
        &EquationContext::new().with_m(&m),
    )?);

    let nw = small_n_weight();
    let p = WeightedProblem::new(a.clone(), None, Some(nw.clone()), WeightPolicy::AllowNonHermitian)?;
    out.push(regression(
        "n-dual-core-definition-example",
        &a,
        small_n_dual(),
        n_weighted_dual_core(&p)?.into_option(),
        &[P4N, P8, P9],
        &EquationContext::new().with_n(&nw),
    )?);

    let a = three_by_three();
    let w = three_by_three_weight();
    out.push(regression(
        "three-by-three-group-inverse",
        &a,
        a.clone(),
        group_inverse(&a)?.into_option(),
        &[P1, P2, P5],
        &EquationContext::new(),
    )?);
    let p = WeightedProblem::with_mn(a.clone(), w.clone(), w.clone())?;
    out.push(regression(
        "three-by-three-m-core",
        &a,
        three_by_three_m_core(),
        m_weighted_core(&p)?.into_option(),
        &[P3M, P6, P7],
        &EquationContext::new().with_m(&w),
    )?);
    out.push(regression(
        "three-by-three-n-dual-core",
        &a,
        three_by_three_n_dual(),
        n_weighted_dual_core(&p)?.into_option(),
        &[P4N, P8, P9],
        &EquationContext::new().with_n(&w),
    )?);

    let ctx = EquationContext::new().with_m(&w).with_n(&w);
    let tags = [P1, P2, P3M, P4N];
    let printed = three_by_three_weighted_mp_as_printed();
    let printed_status = statuses(&a, &printed, &tags, &ctx)?;
    let computed = weighted_mp(&p)?.into_option();
    let recomputed = three_by_three_weighted_mp();
    let recomputed_ok = computed.as_ref() == Some(&recomputed) && statuses(&a, &recomputed, &tags, &ctx)?.iter().all(|s| s.holds);
    let printed_ok = printed_status.iter().all(|s| s.holds);
    let (verdict, note) = match (printed_ok, recomputed_ok) {
        (_, false) => (Verdict::Fail, None),
        (true, true) => (Verdict::Pass, None),
        (false, true) => {
            let failed: Vec<&str> = printed_status.iter().filter(|s| !s.holds).map(|s| s.tag.label()).collect();
            let note = format!(
                "the printed matrix fails equation(s) {}; the unique solution of 1, 2, 3M, 4N is the computed matrix",
                failed.join(",")
            );
            (Verdict::InterpretationNote, Some(note))
        }
    };
    out.push(FixtureResult {
        name: "three-by-three-weighted-mp".into(),
        verdict,
        expected: MatrixFile::from_matrix(&printed),
        computed: computed.as_ref().map(MatrixFile::from_matrix),
        equations: printed_status,
        note,
    });
    Ok(out)
}
