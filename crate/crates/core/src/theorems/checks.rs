//! Clause evaluation helpers shared by the statement checks.

use crate::equations::{residual, EquationContext, EquationTag};
use crate::error::Result;
use crate::feasibility::AffineSet;
use crate::geninv::{group_inverse, index, mp_inverse, tolerance_for};
use crate::linalg::{is_invertible, is_positive_definite, solve_general, SolveStatus};
use crate::matrix::Matrix;
use crate::rng::{seed_from_digest, Rng};
use crate::scalar::Field;
use crate::weighted::{m_weighted_core, n_weighted_dual_core, weighted_mp, WeightPolicy, WeightedProblem};

use super::{decide, Clause, ClauseRole, TheoremId, TheoremInputs, VerificationReport};

/// Truth value of one clause with an optional witness.
#[derive(Clone, Debug)]
pub(crate) struct Test<T> {
    pub holds: bool,
    pub witness: Option<Matrix<T>>,
}

impl<T: Field> Test<T> {
    pub fn pass() -> Self {
        Test { holds: true, witness: None }
    }

    pub fn fail(witness: Option<Matrix<T>>) -> Self {
        Test { holds: false, witness }
    }

    pub fn flag(holds: bool) -> Self {
        Test { holds, witness: None }
    }

    /// `lhs = rhs`, witnessed by `lhs - rhs`.
    pub fn eq(lhs: &Matrix<T>, rhs: &Matrix<T>, tol: f64) -> Self {
        if lhs.shape() != rhs.shape() {
            return Test::fail(None);
        }
        let d = lhs - rhs;
        if d.is_negligible(tol) {
            Test::pass()
        } else {
            Test::fail(Some(d))
        }
    }

    /// Equality of two values that may fail to exist; a missing side is false.
    pub fn eq_opt(lhs: Option<&Matrix<T>>, rhs: Option<&Matrix<T>>, tol: f64) -> Self {
        match (lhs, rhs) {
            (Some(l), Some(r)) => Test::eq(l, r, tol),
            _ => Test::fail(None),
        }
    }

    /// `H* = H`.
    pub fn hermitian(h: &Matrix<T>, tol: f64) -> Self {
        Test::eq(&h.adjoint(), h, tol)
    }

    pub fn zero(r: &Matrix<T>, tol: f64) -> Self {
        if r.is_negligible(tol) {
            Test::pass()
        } else {
            Test::fail(Some(r.clone()))
        }
    }

    /// `R(U) ⊆ R(V)`, witnessed by `(I - V V†) U`.
    pub fn range_in(u: &Matrix<T>, v: &Matrix<T>, tol: f64) -> Result<Self> {
        let w = u - &(v * &(&mp_inverse(v)? * u));
        Ok(Test::zero(&w, tol))
    }

    /// `R(U^T) ⊆ R(V^T)`: the rows of `U` lie in the row space of `V`.
    pub fn rows_in(u: &Matrix<T>, v: &Matrix<T>, tol: f64) -> Result<Self> {
        let w = u - &(&(u * &mp_inverse(v)?) * v);
        Ok(Test::zero(&w, tol))
    }

    /// Nonempty affine set; an empty one is witnessed by its infeasibility certificate.
    pub fn nonempty(set: &AffineSet<T>) -> Self {
        if set.is_empty() {
            Test::fail(set.certificate.clone())
        } else {
            Test::pass()
        }
    }

    /// Single-point affine set; otherwise the certificate or a free direction.
    pub fn singleton(set: &AffineSet<T>) -> Self {
        if set.is_empty() {
            Test::fail(set.certificate.clone())
        } else if !set.directions.is_empty() {
            Test::fail(Some(set.directions[0].clone()))
        } else {
            Test::pass()
        }
    }

    pub fn exists(x: Option<&Matrix<T>>) -> Self {
        Test::flag(x.is_some())
    }

    /// `X` satisfies every equation in `tags`; witnessed by the first nonzero residual.
    pub fn member(a: &Matrix<T>, x: &Matrix<T>, tags: &[EquationTag], ctx: &EquationContext<'_, T>) -> Result<Self> {
        let tol = tolerance_for(&[a, x]);
        for &t in tags {
            let r = residual(t, a, x, ctx)?;
            if !r.is_negligible(tol) {
                return Ok(Test::fail(Some(r)));
            }
        }
        Ok(Test::pass())
    }

    pub fn and(self, other: Test<T>) -> Self {
        if self.holds {
            other
        } else {
            self
        }
    }

    pub fn or(self, other: Test<T>) -> Self {
        if self.holds {
            self
        } else if other.holds {
            other
        } else {
            Test::fail(self.witness.or(other.witness))
        }
    }
}

pub(crate) struct Checker<T> {
    pub tol: f64,
    /// Fixed comparison tolerance replacing the scale-based default.
    fixed: Option<f64>,
    pub rng: Rng,
    clauses: Vec<Clause<T>>,
    notes: Vec<String>,
}

impl<T: Field> Checker<T> {
    pub fn new(inputs: &TheoremInputs<T>, digest: &str, tolerance: Option<f64>) -> Self {
        let named = inputs.named();
        let mats: Vec<&Matrix<T>> = named.iter().map(|(_, m)| *m).collect();
        let fixed = if T::EXACT { None } else { tolerance };
        Checker {
            tol: fixed.unwrap_or_else(|| tolerance_for(&mats)),
            fixed,
            rng: Rng::new(seed_from_digest(digest)),
            clauses: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, role: ClauseRole, name: impl Into<String>, test: Test<T>) -> bool {
        let witness = if test.holds {
            None
        } else {
            // A false clause must carry a nonzero witness; fall back to [1].
            Some(match test.witness {
                Some(w) if !w.is_zero() => w,
                _ => Matrix::identity(1),
            })
        };
        self.clauses.push(Clause { name: name.into(), role, holds: test.holds, witness });
        test.holds
    }

    pub fn note(&mut self, text: impl Into<String>) {
        let text = text.into();
        if !self.notes.contains(&text) {
            self.notes.push(text);
        }
    }

    /// Whether the statement should be evaluated further.
    pub fn hypotheses_hold(&self) -> bool {
        self.clauses.iter().all(|c| c.role != ClauseRole::Hypothesis || c.holds)
    }

    pub fn eq(&mut self, role: ClauseRole, name: impl Into<String>, lhs: &Matrix<T>, rhs: &Matrix<T>) -> bool {
        let t = Test::eq(lhs, rhs, self.tol_for(&[lhs, rhs]));
        self.push(role, name, t)
    }

    pub fn eq_opt(&mut self, role: ClauseRole, name: impl Into<String>, lhs: Option<&Matrix<T>>, rhs: Option<&Matrix<T>>) -> bool {
        let tol = self.tol_for(&lhs.into_iter().chain(rhs).collect::<Vec<_>>());
        let t = Test::eq_opt(lhs, rhs, tol);
        self.push(role, name, t)
    }

    /// Tolerance covering the inputs and any derived matrices being compared.
    pub fn tol_for(&self, extra: &[&Matrix<T>]) -> f64 {
        if let Some(t) = self.fixed {
            return t;
        }
        self.tol.max(tolerance_for(extra))
    }

    pub fn weight_hypothesis(&mut self, name: &str, w: &Matrix<T>) -> bool {
        let t = if is_invertible(w) { Test::hermitian(w, self.tol) } else { Test::fail(None) };
        self.push(ClauseRole::Hypothesis, format!("{name} is Hermitian and invertible"), t)
    }

    pub fn definite_hypothesis(&mut self, name: &str, w: &Matrix<T>) -> bool {
        self.push(ClauseRole::Hypothesis, format!("{name} is positive definite"), Test::flag(is_positive_definite(w)))
    }

    pub fn index_hypothesis(&mut self, name: &str, a: &Matrix<T>) -> Result<bool> {
        let k = index(a)?.k;
        Ok(self.push(ClauseRole::Hypothesis, format!("ind({name}) <= 1"), Test::flag(k <= 1)))
    }

    pub fn int_matrix(&mut self, rows: usize, cols: usize) -> Matrix<T> {
        self.rng.int_matrix(rows, cols, 2).map(T::from_exact)
    }

    /// Random point of a nonempty affine set with small integer coefficients.
    pub fn random_point(&mut self, set: &AffineSet<T>) -> Option<Matrix<T>> {
        let coeffs: Vec<T> = (0..set.directions.len()).map(|_| T::from_i64(self.rng.range(-2, 2))).collect();
        set.point(&coeffs)
    }

    /// `A†` followed by `count` perturbed {1}-inverses `A† + (I - A†A)Z1 + Z2(I - AA†)`.
    pub fn one_inverses(&mut self, a: &Matrix<T>, count: usize) -> Result<Vec<Matrix<T>>> {
        let g = mp_inverse(a)?;
        let (r, c) = a.shape();
        let left = &Matrix::identity(c) - &(&g * a);
        let right = &Matrix::identity(r) - &(a * &g);
        let mut out = vec![g.clone()];
        for _ in 0..count {
            let z1 = self.int_matrix(c, r);
            let z2 = self.int_matrix(c, r);
            out.push(&(&g + &(&left * &z1)) + &(&z2 * &right));
        }
        Ok(out)
    }

    /// Solutions of `U X = V` (canonical and `count` perturbed ones), or empty.
    pub fn solutions(&mut self, u: &Matrix<T>, v: &Matrix<T>, count: usize) -> Result<Vec<Matrix<T>>> {
        let sol = solve_general(u, v)?;
        if sol.status == SolveStatus::NoSolution {
            return Ok(Vec::new());
        }
        let x0 = sol.particular.expect("consistent system");
        let mut out = vec![x0.clone()];
        if sol.null_basis.is_empty() {
            return Ok(out);
        }
        for _ in 0..count {
            let mut x = x0.clone();
            for nv in &sol.null_basis {
                let c = self.int_matrix(1, v.cols());
                x = &x + &(nv * &c);
            }
            out.push(x);
        }
        Ok(out)
    }

    pub fn finish(self, theorem: TheoremId, instance_digest: String) -> VerificationReport<T> {
        let verdict = decide(&self.clauses);
        VerificationReport { theorem, instance_digest, clauses: self.clauses, verdict, notes: self.notes }
    }
}

fn problem<T: Field>(a: &Matrix<T>, m: Option<&Matrix<T>>, n: Option<&Matrix<T>>) -> Result<WeightedProblem<T>> {
    WeightedProblem::new(a.clone(), m.cloned(), n.cloned(), WeightPolicy::AllowNonHermitian)
}

pub(crate) fn group<T: Field>(a: &Matrix<T>) -> Result<Option<Matrix<T>>> {
    Ok(group_inverse(a)?.into_option())
}

pub(crate) fn mcore<T: Field>(a: &Matrix<T>, m: &Matrix<T>) -> Result<Option<Matrix<T>>> {
    Ok(m_weighted_core(&problem(a, Some(m), None)?)?.into_option())
}

pub(crate) fn ndual<T: Field>(a: &Matrix<T>, n: &Matrix<T>) -> Result<Option<Matrix<T>>> {
    Ok(n_weighted_dual_core(&problem(a, None, Some(n))?)?.into_option())
}

pub(crate) fn wmp<T: Field>(a: &Matrix<T>, m: &Matrix<T>, n: &Matrix<T>) -> Result<Option<Matrix<T>>> {
    Ok(weighted_mp(&problem(a, Some(m), Some(n))?)?.into_option())
}

/// `f(x)` when `x` exists.
pub(crate) fn then<T: Field>(x: &Option<Matrix<T>>, f: impl FnOnce(&Matrix<T>) -> Result<Option<Matrix<T>>>) -> Result<Option<Matrix<T>>> {
    match x {
        Some(x) => f(x),
        None => Ok(None),
    }
}
