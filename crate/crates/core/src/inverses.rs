//! Uniform entry point over every computable inverse, with its full set of
//! defining equations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::equations::{residual, EquationContext, EquationTag};
use crate::error::{GeninvError, Result};
use crate::geninv::{
    core_ep_inverse, core_inverse, drazin_inverse, group_inverse, index, mp_inverse, one_inverse, tolerance_for,
    w_weighted_core_ep, Existence, NonExistence,
};
use crate::matrix::Matrix;
use crate::scalar::Field;
use crate::weighted::{
    m_weighted_core, n_weighted_dual_core, one_four_n, one_three_m, weighted_mp, WeightPolicy, WeightedProblem,
};

use EquationTag::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InverseKind {
    #[serde(rename = "mp")]
    Mp,
    #[serde(rename = "weighted-mp")]
    WeightedMp,
    #[serde(rename = "group")]
    Group,
    #[serde(rename = "drazin")]
    Drazin,
    #[serde(rename = "core")]
    Core,
    #[serde(rename = "core-ep")]
    CoreEp,
    #[serde(rename = "w-core-ep")]
    WCoreEp,
    #[serde(rename = "core-M")]
    CoreM,
    #[serde(rename = "dual-core-N")]
    DualCoreN,
    #[serde(rename = "one")]
    One,
    #[serde(rename = "one-3M")]
    OneThreeM,
    #[serde(rename = "one-4N")]
    OneFourN,
}

impl InverseKind {
    pub const ALL: [InverseKind; 12] = [
        InverseKind::Mp,
        InverseKind::WeightedMp,
        InverseKind::Group,
        InverseKind::Drazin,
        InverseKind::Core,
        InverseKind::CoreEp,
        InverseKind::WCoreEp,
        InverseKind::CoreM,
        InverseKind::DualCoreN,
        InverseKind::One,
        InverseKind::OneThreeM,
        InverseKind::OneFourN,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InverseKind::Mp => "mp",
            InverseKind::WeightedMp => "weighted-mp",
            InverseKind::Group => "group",
            InverseKind::Drazin => "drazin",
            InverseKind::Core => "core",
            InverseKind::CoreEp => "core-ep",
            InverseKind::WCoreEp => "w-core-ep",
            InverseKind::CoreM => "core-M",
            InverseKind::DualCoreN => "dual-core-N",
            InverseKind::One => "one",
            InverseKind::OneThreeM => "one-3M",
            InverseKind::OneFourN => "one-4N",
        }
    }

    pub fn needs_m(self) -> bool {
        matches!(self, InverseKind::WeightedMp | InverseKind::CoreM | InverseKind::OneThreeM)
    }

    pub fn needs_n(self) -> bool {
        matches!(self, InverseKind::WeightedMp | InverseKind::DualCoreN | InverseKind::OneFourN)
    }

    pub fn needs_w(self) -> bool {
        self == InverseKind::WCoreEp
    }

    pub fn needs_square(self) -> bool {
        !matches!(
            self,
            InverseKind::Mp | InverseKind::WeightedMp | InverseKind::One | InverseKind::OneThreeM | InverseKind::OneFourN | InverseKind::WCoreEp
        )
    }

    /// Defining equations from the catalog. `W`-weighted core-EP is defined by
    /// equations outside the catalog and returns an empty list.
    pub fn tags(self) -> &'static [EquationTag] {
        match self {
            InverseKind::Mp => &[P1, P2, P3, P4],
            InverseKind::WeightedMp => &[P1, P2, P3M, P4N],
            InverseKind::Group => &[P1, P2, P5],
            InverseKind::Drazin => &[P1k, P2, P5],
            InverseKind::Core => &[P3, P6, P7],
            InverseKind::CoreEp => &[P3, P6k, P7],
            InverseKind::WCoreEp => &[],
            InverseKind::CoreM => &[P3M, P6, P7],
            InverseKind::DualCoreN => &[P4N, P8, P9],
            InverseKind::One => &[P1],
            InverseKind::OneThreeM => &[P1, P3M],
            InverseKind::OneFourN => &[P1, P4N],
        }
    }
}

impl fmt::Display for InverseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InverseKind {
    type Err = GeninvError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let alias = match t.to_ascii_lowercase().as_str() {
            "dual-n" | "n-dual" | "dual-core" => Some(InverseKind::DualCoreN),
            "m-core" => Some(InverseKind::CoreM),
            "1" => Some(InverseKind::One),
            "1,3m" => Some(InverseKind::OneThreeM),
            "1,4n" => Some(InverseKind::OneFourN),
            _ => None,
        };
        alias
            .or_else(|| InverseKind::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(t)))
            .ok_or_else(|| GeninvError::Parse(format!("unknown inverse kind {t:?}")))
    }
}

/// Weights an inverse may read: `M` (left), `N` (right) and the rectangular `W`.
#[derive(Debug)]
pub struct Weights<'a, T> {
    pub m: Option<&'a Matrix<T>>,
    pub n: Option<&'a Matrix<T>>,
    pub w: Option<&'a Matrix<T>>,
}

impl<T> Clone for Weights<'_, T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for Weights<'_, T> {}

impl<T> Default for Weights<'_, T> {
    fn default() -> Self {
        Weights { m: None, n: None, w: None }
    }
}

impl<'a, T> Weights<'a, T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_m(mut self, m: &'a Matrix<T>) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_n(mut self, n: &'a Matrix<T>) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_w(mut self, w: &'a Matrix<T>) -> Self {
        self.w = Some(w);
        self
    }
}

fn require<'a, T>(w: Option<&'a Matrix<T>>, what: &'static str) -> Result<&'a Matrix<T>> {
    w.ok_or(GeninvError::MissingContext(what))
}

fn from_set<T: Field>(set: crate::feasibility::AffineSet<T>) -> Existence<T> {
    match set.particular {
        Some(x) => Existence::Exists(x),
        None => Existence::NotExists(NonExistence::FeasibilityEmpty),
    }
}

/// Compute the inverse of `kind`; for the `{1,3M}` and `{1,4N}` classes this
/// is one member of the class.
pub fn compute_inverse<T: Field>(
    kind: InverseKind,
    a: &Matrix<T>,
    weights: Weights<'_, T>,
    policy: WeightPolicy,
) -> Result<Existence<T>> {
    if kind.needs_square() && !a.is_square() {
        return Err(GeninvError::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let problem = || {
        let m = if kind.needs_m() { Some(require(weights.m, "weight M")?.clone()) } else { None };
        let n = if kind.needs_n() { Some(require(weights.n, "weight N")?.clone()) } else { None };
        WeightedProblem::new(a.clone(), m, n, policy)
    };
    Ok(match kind {
        InverseKind::Mp => Existence::Exists(mp_inverse(a)?),
        InverseKind::One => Existence::Exists(one_inverse(a)?),
        InverseKind::Group => group_inverse(a)?,
        InverseKind::Drazin => Existence::Exists(drazin_inverse(a)?),
        InverseKind::Core => core_inverse(a)?,
        InverseKind::CoreEp => Existence::Exists(core_ep_inverse(a)?),
        InverseKind::WCoreEp => Existence::Exists(w_weighted_core_ep(a, require(weights.w, "weight W")?)?),
        InverseKind::WeightedMp => weighted_mp(&problem()?)?,
        InverseKind::CoreM => m_weighted_core(&problem()?)?,
        InverseKind::DualCoreN => n_weighted_dual_core(&problem()?)?,
        InverseKind::OneThreeM => {
            let p = problem()?;
            from_set(one_three_m(a, p.require_m()?)?)
        }
        InverseKind::OneFourN => {
            let p = problem()?;
            from_set(one_four_n(a, p.require_n()?)?)
        }
    })
}

/// One defining equation of an inverse with its residual, zero exactly when it holds.
#[derive(Clone, Debug, PartialEq)]
pub struct DefiningCheck<T> {
    pub label: String,
    pub residual: Matrix<T>,
}

/// Residuals of every defining equation of `kind` at `X`.
pub fn definition_residuals<T: Field>(
    kind: InverseKind,
    a: &Matrix<T>,
    x: &Matrix<T>,
    weights: Weights<'_, T>,
) -> Result<Vec<DefiningCheck<T>>> {
    if kind == InverseKind::WCoreEp {
        return w_core_ep_residuals(a, x, require(weights.w, "weight W")?);
    }
    let mut ctx = EquationContext::new();
    if kind.needs_m() {
        ctx = ctx.with_m(require(weights.m, "weight M")?);
    }
    if kind.needs_n() {
        ctx = ctx.with_n(require(weights.n, "weight N")?);
    }
    if matches!(kind, InverseKind::Drazin | InverseKind::CoreEp) {
        ctx = ctx.with_k(index(a)?.k);
    }
    kind.tags()
        .iter()
        .map(|&tag| Ok(DefiningCheck { label: tag.label().to_string(), residual: residual(tag, a, x, &ctx)? }))
        .collect()
}

/// Both published characterizations of the `W`-weighted core-EP inverse, with
/// `k = max(ind(AW), ind(WA))`.
fn w_core_ep_residuals<T: Field>(a: &Matrix<T>, x: &Matrix<T>, w: &Matrix<T>) -> Result<Vec<DefiningCheck<T>>> {
    if x.shape() != a.shape() || w.shape() != (a.cols(), a.rows()) {
        return Err(GeninvError::DimensionMismatch("X must match A and W must match A*".into()));
    }
    let aw = a * w;
    let wa = w * a;
    let k = index(&aw)?.k.max(index(&wa)?.k) as u32;
    let awk = aw.pow(k);
    let wak = wa.pow(k);
    let wx = w * x;
    let wawx = &wa * &wx;
    let range_defect = &(&Matrix::identity(a.rows()) - &(&awk * &mp_inverse(&awk)?)) * x;
    let check = |label: &str, residual: Matrix<T>| DefiningCheck { label: label.to_string(), residual };
    Ok(vec![
        check("XW(AW)^{k+1} = (AW)^k", &(&(x * w) * &(&awk * &aw)) - &awk),
        check("A(WX)^2 = X", &(a * &(&wx * &wx)) - x),
        check("(WAWX)* = WAWX", &wawx.adjoint() - &wawx),
        check("WAWX = (WA)^k ((WA)^k)†", &wawx - &(&wak * &mp_inverse(&wak)?)),
        check("R(X) ⊆ R((AW)^k)", range_defect),
    ])
}

/// Whether `X` satisfies every defining equation of `kind`, exactly for exact
/// scalars and within the default residual tolerance otherwise.
pub fn satisfies_definition<T: Field>(
    kind: InverseKind,
    a: &Matrix<T>,
    x: &Matrix<T>,
    weights: Weights<'_, T>,
) -> Result<bool> {
    let mut mats = vec![a, x];
    mats.extend([weights.m, weights.n, weights.w].into_iter().flatten());
    let tol = tolerance_for(&mats);
    Ok(definition_residuals(kind, a, x, weights)?.iter().all(|c| c.residual.is_negligible(tol)))
}
