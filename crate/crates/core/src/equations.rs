//! Catalog of the defining matrix equations and residual checks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GeninvError, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;

/// Numbered equations in the unknown `X`:
///
/// | tag | equation |
/// |-----|----------|
/// | `1` | `AXA = A` |
/// | `2` | `XAX = X` |
/// | `3` | `(AX)* = AX` |
/// | `4` | `(XA)* = XA` |
/// | `5` | `AX = XA` |
/// | `1k`, `6k` | `XA^{k+1} = A^k` |
/// | `3M` | `(MAX)* = MAX` |
/// | `4N` | `(NXA)* = NXA` |
/// | `6` | `XA^2 = A` |
/// | `7` | `AX^2 = X` |
/// | `8` | `A^2X = A` |
/// | `9` | `X^2A = X` |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EquationTag {
    #[serde(rename = "1")]
    P1,
    #[serde(rename = "2")]
    P2,
    #[serde(rename = "3")]
    P3,
    #[serde(rename = "4")]
    P4,
    #[serde(rename = "5")]
    P5,
    #[serde(rename = "1k")]
    P1k,
    #[serde(rename = "3M")]
    P3M,
    #[serde(rename = "4N")]
    P4N,
    #[serde(rename = "6")]
    P6,
    #[serde(rename = "6k")]
    P6k,
    #[serde(rename = "7")]
    P7,
    #[serde(rename = "8")]
    P8,
    #[serde(rename = "9")]
    P9,
}

impl EquationTag {
    pub const ALL: [EquationTag; 13] = [
        EquationTag::P1,
        EquationTag::P2,
        EquationTag::P3,
        EquationTag::P4,
        EquationTag::P5,
        EquationTag::P1k,
        EquationTag::P3M,
        EquationTag::P4N,
        EquationTag::P6,
        EquationTag::P6k,
        EquationTag::P7,
        EquationTag::P8,
        EquationTag::P9,
    ];

    pub fn label(self) -> &'static str {
        match self {
            EquationTag::P1 => "1",
            EquationTag::P2 => "2",
            EquationTag::P3 => "3",
            EquationTag::P4 => "4",
            EquationTag::P5 => "5",
            EquationTag::P1k => "1k",
            EquationTag::P3M => "3M",
            EquationTag::P4N => "4N",
            EquationTag::P6 => "6",
            EquationTag::P6k => "6k",
            EquationTag::P7 => "7",
            EquationTag::P8 => "8",
            EquationTag::P9 => "9",
        }
    }

    /// Whether the residual is affine in `X` (over the reals).
    pub fn is_linear(self) -> bool {
        !matches!(self, EquationTag::P2 | EquationTag::P7 | EquationTag::P9)
    }

    /// Equations that only make sense for square `A`.
    fn needs_square(self) -> bool {
        matches!(
            self,
            EquationTag::P5
                | EquationTag::P1k
                | EquationTag::P6k
                | EquationTag::P6
                | EquationTag::P7
                | EquationTag::P8
                | EquationTag::P9
        )
    }
}

impl fmt::Display for EquationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for EquationTag {
    type Err = GeninvError;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        EquationTag::ALL
            .into_iter()
            .find(|tag| tag.label().eq_ignore_ascii_case(t) || format!("P{}", tag.label()).eq_ignore_ascii_case(t))
            .ok_or_else(|| GeninvError::Parse(format!("unknown equation tag {s:?}")))
    }
}

/// Parses a comma separated list such as `"3M,6,7"`.
pub fn parse_tags(list: &str) -> Result<Vec<EquationTag>> {
    list.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect()
}

/// Weights, index and tolerance an equation may refer to.
#[derive(Debug)]
pub struct EquationContext<'a, T> {
    pub m: Option<&'a Matrix<T>>,
    pub n: Option<&'a Matrix<T>>,
    pub k: Option<usize>,
    /// Overrides the default `2^-30 (1 + max norm)` tolerance in floating mode.
    pub tolerance: Option<f64>,
}

impl<T> Clone for EquationContext<'_, T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for EquationContext<'_, T> {}

impl<T> Default for EquationContext<'_, T> {
    fn default() -> Self {
        EquationContext { m: None, n: None, k: None, tolerance: None }
    }
}

impl<'a, T: Field> EquationContext<'a, T> {
    pub fn new() -> Self {
        EquationContext { m: None, n: None, k: None, tolerance: None }
    }

    pub fn with_m(mut self, m: &'a Matrix<T>) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_n(mut self, n: &'a Matrix<T>) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquationCheck<T> {
    pub tag: EquationTag,
    pub holds: bool,
    pub residual: Matrix<T>,
}

fn hermitian_defect<T: Field>(h: &Matrix<T>) -> Matrix<T> {
    &h.adjoint() - h
}

fn check_shapes<T: Field>(tag: EquationTag, a: &Matrix<T>, x: &Matrix<T>, ctx: &EquationContext<'_, T>) -> Result<()> {
    if x.shape() != (a.cols(), a.rows()) {
        return Err(GeninvError::DimensionMismatch(format!(
            "X is {}x{} but A is {}x{}",
            x.rows(),
            x.cols(),
            a.rows(),
            a.cols()
        )));
    }
    if tag.needs_square() && !a.is_square() {
        return Err(GeninvError::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    match tag {
        EquationTag::P3M => {
            let m = ctx.m.ok_or(GeninvError::MissingContext("weight M for equation 3M"))?;
            if m.shape() != (a.rows(), a.rows()) {
                return Err(GeninvError::DimensionMismatch("M must be rows(A) x rows(A)".into()));
            }
        }
        EquationTag::P4N => {
            let n = ctx.n.ok_or(GeninvError::MissingContext("weight N for equation 4N"))?;
            if n.shape() != (a.cols(), a.cols()) {
                return Err(GeninvError::DimensionMismatch("N must be cols(A) x cols(A)".into()));
            }
        }
        EquationTag::P1k | EquationTag::P6k if ctx.k.is_none() => {
            return Err(GeninvError::MissingContext("index k for equation 1k/6k"));
        }
        _ => {}
    }
    Ok(())
}

/// Residual matrix of `tag` at `(A, X)`; zero exactly when the equation holds.
pub fn residual<T: Field>(tag: EquationTag, a: &Matrix<T>, x: &Matrix<T>, ctx: &EquationContext<'_, T>) -> Result<Matrix<T>> {
    check_shapes(tag, a, x, ctx)?;
    let r = match tag {
        EquationTag::P1 => &(&(a * x) * a) - a,
        EquationTag::P2 => &(&(x * a) * x) - x,
        EquationTag::P3 => hermitian_defect(&(a * x)),
        EquationTag::P4 => hermitian_defect(&(x * a)),
        EquationTag::P5 => &(a * x) - &(x * a),
        EquationTag::P1k | EquationTag::P6k => {
            let k = ctx.k.expect("checked above") as u32;
            let ak = a.pow(k);
            &(x * &(&ak * a)) - &ak
        }
        EquationTag::P3M => hermitian_defect(&(&(ctx.m.expect("checked above") * a) * x)),
        EquationTag::P4N => hermitian_defect(&(&(ctx.n.expect("checked above") * x) * a)),
        EquationTag::P6 => &(x * &(a * a)) - a,
        EquationTag::P7 => &(a * &(x * x)) - x,
        EquationTag::P8 => &(&(a * a) * x) - a,
        EquationTag::P9 => &(&(x * x) * a) - x,
    };
    Ok(r)
}

fn default_tolerance<T: Field>(a: &Matrix<T>, x: &Matrix<T>, ctx: &EquationContext<'_, T>) -> f64 {
    if let Some(t) = ctx.tolerance {
        return if T::EXACT { 0.0 } else { t };
    }
    let scale = [Some(a), Some(x), ctx.m, ctx.n]
        .into_iter()
        .flatten()
        .map(Matrix::max_norm)
        .fold(0.0, f64::max);
    T::residual_tolerance(scale)
}

pub fn check_equation<T: Field>(
    tag: EquationTag,
    a: &Matrix<T>,
    x: &Matrix<T>,
    ctx: &EquationContext<'_, T>,
) -> Result<EquationCheck<T>> {
    let residual = residual(tag, a, x, ctx)?;
    let holds = residual.is_negligible(default_tolerance(a, x, ctx));
    Ok(EquationCheck { tag, holds, residual })
}

/// Checks every tag; the result lists one entry per tag in input order.
pub fn check_all<T: Field>(
    a: &Matrix<T>,
    x: &Matrix<T>,
    tags: &[EquationTag],
    ctx: &EquationContext<'_, T>,
) -> Result<Vec<EquationCheck<T>>> {
    tags.iter().map(|&t| check_equation(t, a, x, ctx)).collect()
}

/// `X ∈ A{tags}`.
pub fn check_membership<T: Field>(
    a: &Matrix<T>,
    x: &Matrix<T>,
    tags: &[EquationTag],
    ctx: &EquationContext<'_, T>,
) -> Result<bool> {
    Ok(check_all(a, x, tags, ctx)?.iter().all(|c| c.holds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRat;
    use EquationTag::*;

    type M = Matrix<GaussRat>;

    #[test]
    fn weighted_example_satisfies_3m() {
        let a = M::from_i64(&[&[1, 1], &[0, 0]]);
        let x = M::from_i64(&[&[1, 0], &[0, 0]]);
        let m = M::from_i64(&[&[1, 1], &[0, 1]]);
        let ctx = EquationContext::new().with_m(&m);
        assert!(check_equation(P3M, &a, &x, &ctx).unwrap().holds);
        assert!(check_membership(&a, &x, &[P3M, P6, P7], &ctx).unwrap());
    }

    #[test]
    fn zero_candidate_residual() {
        let a = M::from_i64(&[&[1, 1], &[0, 0]]);
        let c = check_equation(P6, &a, &M::zeros(2, 2), &EquationContext::new()).unwrap();
        assert!(!c.holds);
        assert_eq!(c.residual, -&a);
    }

    #[test]
    fn identity_satisfies_everything() {
        let i = M::identity(3);
        let ctx = EquationContext::new().with_m(&i).with_n(&i).with_k(1);
        assert!(check_membership(&i, &i, &EquationTag::ALL, &ctx).unwrap());
    }

    #[test]
    fn missing_context_and_shapes() {
        let a = M::identity(2);
        let ctx = EquationContext::new();
        assert_eq!(
            check_equation(P3M, &a, &a, &ctx).unwrap_err(),
            GeninvError::MissingContext("weight M for equation 3M")
        );
        assert!(matches!(check_equation(P1k, &a, &a, &ctx), Err(GeninvError::MissingContext(_))));
        assert!(matches!(
            check_equation(P1, &a, &M::identity(3), &ctx),
            Err(GeninvError::DimensionMismatch(_))
        ));
        let rect = M::zeros(2, 3);
        assert!(check_equation(P1, &rect, &M::zeros(3, 2), &ctx).unwrap().holds);
        assert!(matches!(check_equation(P6, &rect, &M::zeros(3, 2), &ctx), Err(GeninvError::NotSquare { .. })));
    }

    #[test]
    fn tag_parsing() {
        assert_eq!(parse_tags("3M,6,7").unwrap(), vec![P3M, P6, P7]);
        assert_eq!("4n".parse::<EquationTag>().unwrap(), P4N);
        assert_eq!("P1k".parse::<EquationTag>().unwrap(), P1k);
        assert!("10".parse::<EquationTag>().is_err());
        for t in EquationTag::ALL {
            assert_eq!(t.label().parse::<EquationTag>().unwrap(), t);
        }
    }
}
