//! Unweighted generalized inverses built from full-rank factorizations.
//!
//! Every constructor re-checks its defining equations before returning, so a
//! construction bug surfaces as [`GeninvError::PostconditionViolated`].

use serde::{Deserialize, Serialize};

use crate::equations::{check_all, EquationContext, EquationTag};
use crate::error::{GeninvError, Result};
use crate::linalg::{full_rank_factorize, inverse, rank};
use crate::matrix::Matrix;
use crate::scalar::Field;

/// Why an inverse does not exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NonExistence {
    IndexTooHigh,
    FeasibilityEmpty,
    IdempotentTestFailed,
}

impl std::fmt::Display for NonExistence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Existence<T> {
    Exists(Matrix<T>),
    NotExists(NonExistence),
}

impl<T> Existence<T> {
    pub fn exists(&self) -> bool {
        matches!(self, Existence::Exists(_))
    }

    pub fn witness(&self) -> Option<&Matrix<T>> {
        match self {
            Existence::Exists(x) => Some(x),
            Existence::NotExists(_) => None,
        }
    }

    pub fn into_option(self) -> Option<Matrix<T>> {
        match self {
            Existence::Exists(x) => Some(x),
            Existence::NotExists(_) => None,
        }
    }

    pub fn reason(&self) -> Option<NonExistence> {
        match self {
            Existence::Exists(_) => None,
            Existence::NotExists(r) => Some(*r),
        }
    }

    /// The witness, or [`GeninvError::InverseNotExists`] naming `what`.
    pub fn require(self, what: &str) -> Result<Matrix<T>> {
        match self {
            Existence::Exists(x) => Ok(x),
            Existence::NotExists(r) => Err(GeninvError::InverseNotExists(format!("{what}: {r}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexResult {
    pub k: usize,
    /// `[rank(A^0), rank(A^1), ..., rank(A^{k+1})]`.
    pub rank_chain: Vec<usize>,
}

pub(crate) fn require_square<T: Field>(a: &Matrix<T>) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(GeninvError::NotSquare { rows: a.rows(), cols: a.cols() })
    }
}

/// Tolerance for comparing matrices derived from `inputs`.
pub(crate) fn tolerance_for<T: Field>(inputs: &[&Matrix<T>]) -> f64 {
    T::residual_tolerance(inputs.iter().map(|m| m.max_norm()).fold(0.0, f64::max))
}

pub(crate) fn ensure_equations<T: Field>(
    what: &str,
    a: &Matrix<T>,
    x: &Matrix<T>,
    tags: &[EquationTag],
    ctx: &EquationContext<'_, T>,
) -> Result<()> {
    let failed: Vec<String> = check_all(a, x, tags, ctx)?
        .into_iter()
        .filter(|c| !c.holds)
        .map(|c| c.tag.to_string())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(GeninvError::PostconditionViolated(format!("{what} fails equation(s) {}", failed.join(","))))
    }
}

/// Smallest `k` with `rank(A^k) = rank(A^{k+1})`.
pub fn index<T: Field>(a: &Matrix<T>) -> Result<IndexResult> {
    require_square(a)?;
    let mut chain = vec![a.rows()];
    let mut power = a.clone();
    loop {
        let r = rank(&power);
        let prev = *chain.last().expect("nonempty");
        chain.push(r);
        if r == prev {
            return Ok(IndexResult { k: chain.len() - 2, rank_chain: chain });
        }
        power = &power * a;
    }
}

/// Moore-Penrose inverse `G*(GG*)^{-1}(F*F)^{-1}F*`; the zero matrix maps to the
/// zero matrix of transposed shape.
pub fn mp_inverse<T: Field>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let (f, g) = match full_rank_factorize(a) {
        Ok(fg) => fg,
        Err(GeninvError::ZeroMatrix) => return Ok(Matrix::zeros(a.cols(), a.rows())),
        Err(e) => return Err(e),
    };
    let gh = g.adjoint();
    let fh = f.adjoint();
    let x = &(&gh * &inverse(&(&g * &gh))?) * &(&inverse(&(&fh * &f))? * &fh);
    ensure_equations(
        "Moore-Penrose inverse",
        a,
        &x,
        &[EquationTag::P1, EquationTag::P2, EquationTag::P3, EquationTag::P4],
        &EquationContext::new(),
    )?;
    Ok(x)
}

/// Canonical {1}-inverse: the Moore-Penrose inverse.
pub fn one_inverse<T: Field>(a: &Matrix<T>) -> Result<Matrix<T>> {
    mp_inverse(a)
}

/// Group inverse `F (GF)^{-2} G`; absent when `GF` is singular (index at least 2).
pub fn group_inverse<T: Field>(a: &Matrix<T>) -> Result<Existence<T>> {
    require_square(a)?;
    let (f, g) = match full_rank_factorize(a) {
        Ok(fg) => fg,
        Err(GeninvError::ZeroMatrix) => return Ok(Existence::Exists(Matrix::zeros(a.rows(), a.cols()))),
        Err(e) => return Err(e),
    };
    let gf_inv = match inverse(&(&g * &f)) {
        Ok(v) => v,
        Err(GeninvError::Singular) => return Ok(Existence::NotExists(NonExistence::IndexTooHigh)),
        Err(e) => return Err(e),
    };
    let x = &(&f * &(&gf_inv * &gf_inv)) * &g;
    ensure_equations(
        "group inverse",
        a,
        &x,
        &[EquationTag::P1, EquationTag::P2, EquationTag::P5],
        &EquationContext::new(),
    )?;
    Ok(Existence::Exists(x))
}

/// Drazin inverse `A^l (A^{2l+1})^{(1)} A^l` with `l = max(ind A, 1)`.
pub fn drazin_inverse<T: Field>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let k = index(a)?.k;
    let l = k.max(1) as u32;
    let al = a.pow(l);
    let x = &(&al * &one_inverse(&a.pow(2 * l + 1))?) * &al;
    ensure_equations(
        "Drazin inverse",
        a,
        &x,
        &[EquationTag::P1k, EquationTag::P2, EquationTag::P5],
        &EquationContext::new().with_k(k),
    )?;
    Ok(x)
}

/// Core inverse `A# A A†`, present exactly when `ind A <= 1`.
pub fn core_inverse<T: Field>(a: &Matrix<T>) -> Result<Existence<T>> {
    let g = match group_inverse(a)? {
        Existence::Exists(g) => g,
        other => return Ok(other),
    };
    let x = &(&g * a) * &mp_inverse(a)?;
    ensure_equations(
        "core inverse",
        a,
        &x,
        &[EquationTag::P3, EquationTag::P6, EquationTag::P7],
        &EquationContext::new(),
    )?;
    Ok(Existence::Exists(x))
}

/// Core-EP inverse `A^D A^k (A^k)†` with `k = max(ind A, 1)`.
pub fn core_ep_inverse<T: Field>(a: &Matrix<T>) -> Result<Matrix<T>> {
    let k = index(a)?.k.max(1);
    let ak = a.pow(k as u32);
    let x = &(&drazin_inverse(a)? * &ak) * &mp_inverse(&ak)?;
    ensure_equations(
        "core-EP inverse",
        a,
        &x,
        &[EquationTag::P6k, EquationTag::P7, EquationTag::P3],
        &EquationContext::new().with_k(k),
    )?;
    Ok(x)
}

/// W-weighted core-EP inverse `A ((WA)^{core-EP})^2` of an `m x n` matrix `A`
/// with an `n x m` weight `W`.
pub fn w_weighted_core_ep<T: Field>(a: &Matrix<T>, w: &Matrix<T>) -> Result<Matrix<T>> {
    if w.shape() != (a.cols(), a.rows()) {
        return Err(GeninvError::DimensionMismatch(format!(
            "W must be {}x{} for a {}x{} A",
            a.cols(),
            a.rows(),
            a.rows(),
            a.cols()
        )));
    }
    let wa = w * a;
    let aw = a * w;
    let c = core_ep_inverse(&wa)?;
    let x = &(a * &c) * &c;
    let k = index(&aw)?.k.max(index(&wa)?.k) as u32;
    let tol = tolerance_for(&[a, w, &x]);
    let awk = aw.pow(k);
    let wx = w * &x;
    let wawx = &wa * &wx;
    let checks = [
        (&(&(&x * w) * &(&awk * &aw)) - &awk, "XW(AW)^{k+1} = (AW)^k"),
        (&(a * &(&wx * &wx)) - &x, "A(WX)^2 = X"),
        (&wawx.adjoint() - &wawx, "(WAWX)* = WAWX"),
    ];
    for (r, label) in checks {
        if !r.is_negligible(tol) {
            return Err(GeninvError::PostconditionViolated(format!("W-weighted core-EP inverse fails {label}")));
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussRat;

    type M = Matrix<GaussRat>;

    fn q(n: i64, d: i64) -> GaussRat {
        GaussRat::ratio(n, d)
    }

    fn example() -> M {
        M::from_i64(&[&[1, 0, 1], &[0, 1, 0], &[0, 0, 0]])
    }

    #[test]
    fn index_examples() {
        assert_eq!(index(&M::identity(3)).unwrap().k, 0);
        let r = index(&M::from_i64(&[&[1, 1], &[0, 0]])).unwrap();
        assert_eq!(r.k, 1);
        assert_eq!(r.rank_chain, vec![2, 1, 1]);
        assert_eq!(index(&M::from_i64(&[&[0, 1], &[0, 0]])).unwrap().k, 2);
        assert_eq!(index(&M::zeros(3, 3)).unwrap().k, 1);
        assert!(index(&M::zeros(2, 3)).is_err());
    }

    #[test]
    fn mp_examples() {
        let expected = M::from_rows(vec![
            vec![q(1, 2), q(0, 1), q(0, 1)],
            vec![q(0, 1), q(1, 1), q(0, 1)],
            vec![q(1, 2), q(0, 1), q(0, 1)],
        ])
        .unwrap();
        assert_eq!(mp_inverse(&example()).unwrap(), expected);
        assert_eq!(mp_inverse(&M::zeros(2, 3)).unwrap(), M::zeros(3, 2));
        assert_eq!(mp_inverse(&M::identity(2)).unwrap(), M::identity(2));
        let a = M::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(mp_inverse(&mp_inverse(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn one_inverse_examples() {
        let a = M::from_i64(&[&[1, 1], &[0, 0]]);
        let x = one_inverse(&a).unwrap();
        assert_eq!(x, M::from_rows(vec![vec![q(1, 2), q(0, 1)], vec![q(1, 2), q(0, 1)]]).unwrap());
        assert_eq!(one_inverse(&M::from_i64(&[&[2]])).unwrap(), M::from_rows(vec![vec![q(1, 2)]]).unwrap());
    }

    #[test]
    fn group_examples() {
        assert_eq!(group_inverse(&example()).unwrap(), Existence::Exists(example()));
        assert_eq!(
            group_inverse(&M::from_i64(&[&[0, 1], &[0, 0]])).unwrap(),
            Existence::NotExists(NonExistence::IndexTooHigh)
        );
        assert_eq!(group_inverse(&M::identity(2)).unwrap(), Existence::Exists(M::identity(2)));
        assert_eq!(group_inverse(&M::zeros(2, 2)).unwrap(), Existence::Exists(M::zeros(2, 2)));
    }

    #[test]
    fn drazin_examples() {
        assert!(drazin_inverse(&M::from_i64(&[&[0, 1], &[0, 0]])).unwrap().is_zero());
        assert_eq!(drazin_inverse(&M::identity(3)).unwrap(), M::identity(3));
        let a = M::from_i64(&[&[1, 1], &[0, 0]]);
        assert_eq!(drazin_inverse(&a).unwrap(), a);
        // Index 2 with a nonzero invertible part.
        let b = M::from_i64(&[&[2, 0, 0], &[0, 0, 1], &[0, 0, 0]]);
        let d = drazin_inverse(&b).unwrap();
        assert_eq!(d, M::diag(&[q(1, 2), q(0, 1), q(0, 1)]));
    }

    #[test]
    fn core_examples() {
        // Only [[1,0],[0,0]] satisfies (3), (6), (7) for this A.
        let a = M::from_i64(&[&[1, 1], &[0, 0]]);
        assert_eq!(core_inverse(&a).unwrap(), Existence::Exists(M::from_i64(&[&[1, 0], &[0, 0]])));
        assert_eq!(core_inverse(&M::identity(2)).unwrap(), Existence::Exists(M::identity(2)));
        assert!(!core_inverse(&M::from_i64(&[&[0, 1], &[0, 0]])).unwrap().exists());
    }

    #[test]
    fn core_ep_examples() {
        assert!(core_ep_inverse(&M::from_i64(&[&[0, 1], &[0, 0]])).unwrap().is_zero());
        assert_eq!(core_ep_inverse(&M::identity(3)).unwrap(), M::identity(3));
        let a = M::from_i64(&[&[1, 1], &[0, 0]]);
        assert_eq!(Existence::Exists(core_ep_inverse(&a).unwrap()), core_inverse(&a).unwrap());
    }

    #[test]
    fn w_core_ep_examples() {
        let a = M::from_i64(&[&[1, 1], &[0, 0]]);
        let i = M::identity(2);
        assert_eq!(Existence::Exists(w_weighted_core_ep(&a, &i).unwrap()), core_inverse(&a).unwrap());
        assert_eq!(w_weighted_core_ep(&i, &i).unwrap(), i);
        let rect = M::from_i64(&[&[1, 0, 2], &[0, 1, 1]]);
        let w = M::from_i64(&[&[1, 0], &[0, 0], &[1, 1]]);
        w_weighted_core_ep(&rect, &w).unwrap();
        assert!(w_weighted_core_ep(&rect, &rect).is_err());
    }
}
