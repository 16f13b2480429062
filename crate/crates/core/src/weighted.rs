//! M-weighted core, N-weighted dual core and generalized weighted
//! Moore-Penrose inverses.
//!
//! With a merely Hermitian invertible weight there is no closed form for the
//! classes `A{1,3M}` and `A{1,4N}`, so they are computed as affine solution
//! sets of linear equations and the inverses are assembled from any member:
//!
//! * M-weighted core: `X = A# A Y`, `Y ∈ A{1,3M}`
//! * N-weighted dual core: `X = Y A A#`, `Y ∈ A{1,4N}`
//! * weighted Moore-Penrose: `X = Q A† P`, `P = A Y1`, `Q = Y2 A`

use serde::{Deserialize, Serialize};

use crate::equations::{EquationContext, EquationTag};
use crate::error::{GeninvError, Result};
use crate::feasibility::{solve_linear_penrose, AffineSet, LinearSystem};
use crate::geninv::{ensure_equations, group_inverse, mp_inverse, require_square, tolerance_for, Existence, NonExistence};
use crate::linalg::{inverse, is_invertible, range_eq};
use crate::matrix::Matrix;
use crate::scalar::Field;

use EquationTag::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightPolicy {
    #[default]
    RequireHermitian,
    /// Only the raw equations are used; needed for examples whose weights are
    /// invertible but not Hermitian.
    AllowNonHermitian,
}

/// A square matrix with optional left weight `M` and right weight `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedProblem<T> {
    a: Matrix<T>,
    m: Option<Matrix<T>>,
    n: Option<Matrix<T>>,
    policy: WeightPolicy,
}

fn validate_weight<T: Field>(w: &Matrix<T>, dim: usize, policy: WeightPolicy) -> Result<()> {
    if w.shape() != (dim, dim) {
        return Err(GeninvError::DimensionMismatch(format!(
            "weight is {}x{}, expected {dim}x{dim}",
            w.rows(),
            w.cols()
        )));
    }
    if !is_invertible(w) {
        return Err(GeninvError::Singular);
    }
    if policy == WeightPolicy::RequireHermitian && !w.is_hermitian(tolerance_for(&[w])) {
        return Err(GeninvError::NotHermitian);
    }
    Ok(())
}

impl<T: Field> WeightedProblem<T> {
    pub fn new(a: Matrix<T>, m: Option<Matrix<T>>, n: Option<Matrix<T>>, policy: WeightPolicy) -> Result<Self> {
        require_square(&a)?;
        for w in m.iter().chain(n.iter()) {
            validate_weight(w, a.rows(), policy)?;
        }
        Ok(WeightedProblem { a, m, n, policy })
    }

    pub fn with_m(a: Matrix<T>, m: Matrix<T>) -> Result<Self> {
        Self::new(a, Some(m), None, WeightPolicy::default())
    }

    pub fn with_n(a: Matrix<T>, n: Matrix<T>) -> Result<Self> {
        Self::new(a, None, Some(n), WeightPolicy::default())
    }

    pub fn with_mn(a: Matrix<T>, m: Matrix<T>, n: Matrix<T>) -> Result<Self> {
        Self::new(a, Some(m), Some(n), WeightPolicy::default())
    }

    pub fn a(&self) -> &Matrix<T> {
        &self.a
    }

    pub fn m(&self) -> Option<&Matrix<T>> {
        self.m.as_ref()
    }

    pub fn n(&self) -> Option<&Matrix<T>> {
        self.n.as_ref()
    }

    pub fn policy(&self) -> WeightPolicy {
        self.policy
    }

    pub fn require_m(&self) -> Result<&Matrix<T>> {
        self.m.as_ref().ok_or(GeninvError::MissingContext("left weight M"))
    }

    pub fn require_n(&self) -> Result<&Matrix<T>> {
        self.n.as_ref().ok_or(GeninvError::MissingContext("right weight N"))
    }
}

/// `A{1,3M}`.
pub fn one_three_m<T: Field>(a: &Matrix<T>, m: &Matrix<T>) -> Result<AffineSet<T>> {
    solve_linear_penrose(a, &[P1, P3M], Some(m), None)
}

/// `A{1,4N}`.
pub fn one_four_n<T: Field>(a: &Matrix<T>, n: &Matrix<T>) -> Result<AffineSet<T>> {
    solve_linear_penrose(a, &[P1, P4N], None, Some(n))
}

/// A point of `set` other than the particular one (the sum of all directions),
/// used to confirm that a construction does not depend on the representative.
fn second_point<T: Field>(set: &AffineSet<T>) -> Option<Matrix<T>> {
    if set.directions.is_empty() {
        return None;
    }
    set.point(&vec![T::one(); set.directions.len()])
}

fn ensure_same<T: Field>(what: &str, x: &Matrix<T>, y: &Matrix<T>, inputs: &[&Matrix<T>]) -> Result<()> {
    if x.approx_eq(y, tolerance_for(inputs)) {
        Ok(())
    } else {
        Err(GeninvError::PostconditionViolated(format!("{what} depends on the chosen representative")))
    }
}

/// M-weighted core inverse: the unique `X` with `(MAX)* = MAX`, `XA^2 = A`, `AX^2 = X`.
pub fn m_weighted_core<T: Field>(p: &WeightedProblem<T>) -> Result<Existence<T>> {
    let a = p.a();
    let m = p.require_m()?;
    let g = match group_inverse(a)? {
        Existence::Exists(g) => g,
        other => return Ok(other),
    };
    let class = one_three_m(a, m)?;
    let Some(y) = class.particular.as_ref() else {
        return Ok(Existence::NotExists(NonExistence::FeasibilityEmpty));
    };
    let ga = &g * a;
    let x = &ga * y;
    ensure_equations("M-weighted core inverse", a, &x, &[P3M, P6, P7], &EquationContext::new().with_m(m))?;
    if let Some(y2) = second_point(&class) {
        ensure_same("M-weighted core inverse", &x, &(&ga * &y2), &[a, m])?;
    }
    Ok(Existence::Exists(x))
}

/// N-weighted dual core inverse: the unique `X` with `(NXA)* = NXA`, `A^2X = A`, `X^2A = X`.
pub fn n_weighted_dual_core<T: Field>(p: &WeightedProblem<T>) -> Result<Existence<T>> {
    let a = p.a();
    let n = p.require_n()?;
    let g = match group_inverse(a)? {
        Existence::Exists(g) => g,
        other => return Ok(other),
    };
    let class = one_four_n(a, n)?;
    let Some(y) = class.particular.as_ref() else {
        return Ok(Existence::NotExists(NonExistence::FeasibilityEmpty));
    };
    let ag = a * &g;
    let x = y * &ag;
    ensure_equations("N-weighted dual core inverse", a, &x, &[P4N, P8, P9], &EquationContext::new().with_n(n))?;
    if let Some(y2) = second_point(&class) {
        ensure_same("N-weighted dual core inverse", &x, &(&y2 * &ag), &[a, n])?;
    }
    Ok(Existence::Exists(x))
}

/// Generalized weighted Moore-Penrose inverse `A†_{M,N}`, the solution of
/// `{1, 2, 3M, 4N}`; absent when `A{1,3M}` or `A{1,4N}` is empty.
pub fn weighted_mp<T: Field>(p: &WeightedProblem<T>) -> Result<Existence<T>> {
    let a = p.a();
    let m = p.require_m()?;
    let n = p.require_n()?;
    let left = one_three_m(a, m)?;
    let right = one_four_n(a, n)?;
    let (Some(y1), Some(y2)) = (left.particular.as_ref(), right.particular.as_ref()) else {
        return Ok(Existence::NotExists(NonExistence::FeasibilityEmpty));
    };
    let ap = mp_inverse(a)?;
    let assemble = |y1: &Matrix<T>, y2: &Matrix<T>| &(&(y2 * a) * &ap) * &(a * y1);
    let x = assemble(y1, y2);
    let ctx = EquationContext::new().with_m(m).with_n(n);
    ensure_equations("weighted Moore-Penrose inverse", a, &x, &[P1, P2, P3M, P4N], &ctx)?;
    let alt1 = second_point(&left).unwrap_or_else(|| y1.clone());
    let alt2 = second_point(&right).unwrap_or_else(|| y2.clone());
    ensure_same("weighted Moore-Penrose inverse", &x, &assemble(&alt1, &alt2), &[a, m, n])?;
    Ok(Existence::Exists(x))
}

/// `B = M^{-1} A* M` together with the map `Y -> M^{-1} Y* M`, which carries
/// the M-weighted core inverse of `A` to the M-weighted dual core inverse of `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct Duality<T> {
    pub b: Matrix<T>,
    m: Matrix<T>,
    m_inv: Matrix<T>,
}

impl<T: Field> Duality<T> {
    pub fn pullback(&self, y: &Matrix<T>) -> Matrix<T> {
        &(&self.m_inv * &y.adjoint()) * &self.m
    }
}

pub fn duality_transform<T: Field>(a: &Matrix<T>, m: &Matrix<T>) -> Result<Duality<T>> {
    require_square(a)?;
    if m.shape() != a.shape() {
        return Err(GeninvError::DimensionMismatch("M must match A".into()));
    }
    let m_inv = inverse(m)?;
    let b = &(&m_inv * &a.adjoint()) * m;
    Ok(Duality { b, m: m.clone(), m_inv })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IdempotentFlavor {
    Core,
    Dual,
    Mp,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdempotentPair<T> {
    pub p: Matrix<T>,
    pub q: Matrix<T>,
}

fn check(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(GeninvError::PostconditionViolated(format!("idempotent pair: {what}")))
    }
}

/// The idempotents attached to a weighted inverse:
///
/// * `Core`: `P = A X`, `Q = X A` for the M-weighted core inverse `X`
/// * `Dual`: `P = A A#`, `Q = X A` for the N-weighted dual core inverse `X`
/// * `Mp`: `P = A X`, `Q = X A` for the weighted Moore-Penrose inverse `X`
pub fn idempotent_pair<T: Field>(p: &WeightedProblem<T>, flavor: IdempotentFlavor) -> Result<IdempotentPair<T>> {
    let a = p.a();
    let (pp, qq) = match flavor {
        IdempotentFlavor::Core => {
            let x = m_weighted_core(p)?.require("M-weighted core inverse")?;
            (a * &x, &x * a)
        }
        IdempotentFlavor::Dual => {
            let x = n_weighted_dual_core(p)?.require("N-weighted dual core inverse")?;
            let g = group_inverse(a)?.require("group inverse")?;
            (a * &g, &x * a)
        }
        IdempotentFlavor::Mp => {
            let x = weighted_mp(p)?.require("weighted Moore-Penrose inverse")?;
            (a * &x, &x * a)
        }
    };
    let tol = tolerance_for(&[a, &pp, &qq]);
    check((&pp * &pp).approx_eq(&pp, tol), "P is not idempotent")?;
    check((&qq * &qq).approx_eq(&qq, tol), "Q is not idempotent")?;
    let at = a.transpose();
    match flavor {
        IdempotentFlavor::Core => {
            let mp = p.require_m()? * &pp;
            check(mp.is_hermitian(tol), "MP is not Hermitian")?;
            check(range_eq(&pp, a)? && range_eq(&qq, a)?, "R(P) = R(A) = R(Q) fails")?;
            check(range_eq(&qq.transpose(), &at)?, "R(Q^T) = R(A^T) fails")?;
        }
        IdempotentFlavor::Dual => {
            let nq = p.require_n()? * &qq;
            check(nq.is_hermitian(tol), "NQ is not Hermitian")?;
            check(range_eq(&pp, a)?, "R(P) = R(A) fails")?;
            check(
                range_eq(&pp.transpose(), &at)? && range_eq(&qq.transpose(), &at)?,
                "R(P^T) = R(Q^T) = R(A^T) fails",
            )?;
        }
        IdempotentFlavor::Mp => {
            check((p.require_m()? * &pp).is_hermitian(tol), "MP is not Hermitian")?;
            check((p.require_n()? * &qq).is_hermitian(tol), "NQ is not Hermitian")?;
            check(range_eq(&pp, a)?, "R(P) = R(A) fails")?;
            check(range_eq(&qq.transpose(), &at)?, "R(Q^T) = R(A^T) fails")?;
        }
    }
    Ok(IdempotentPair { p: pp, q: qq })
}

/// Idempotents `P` with `R(P) = R(A)` and `MP` Hermitian:
/// `(I - AA†)P = 0`, `PA = A`, `(MP)* = MP`.
pub fn m_projector_set<T: Field>(a: &Matrix<T>, m: &Matrix<T>) -> Result<AffineSet<T>> {
    LinearSystem::new(a.rows(), a.rows())
        .range_within(a)?
        .constrain(move |p| &(p * a) - a)
        .constrain(move |p| {
            let h = m * p;
            &h.adjoint() - &h
        })
        .solve()
}

/// Idempotents `Q` with `R(Q^T) = R(A^T)` and `NQ` Hermitian:
/// `Q(I - A†A) = 0`, `AQ = A`, `(NQ)* = NQ`.
pub fn n_projector_set<T: Field>(a: &Matrix<T>, n: &Matrix<T>) -> Result<AffineSet<T>> {
    LinearSystem::new(a.cols(), a.cols())
        .row_space_within(a)?
        .constrain(move |q| &(a * q) - a)
        .constrain(move |q| {
            let h = n * q;
            &h.adjoint() - &h
        })
        .solve()
}

/// Idempotents `Q` with `R(Q) = R(A)` and `R(Q^T) = R(A^T)`:
/// `(I - AA†)Q = 0`, `Q(I - A†A) = 0`, `QA = A`.
pub fn spectral_projector_set<T: Field>(a: &Matrix<T>) -> Result<AffineSet<T>> {
    LinearSystem::new(a.rows(), a.cols())
        .range_within(a)?
        .row_space_within(a)?
        .constrain(move |q| &(q * a) - a)
        .solve()
}

/// Outcome of solving a defining system that mixes linear and quadratic equations.
#[derive(Clone, Debug, PartialEq)]
pub enum SolutionSet<T> {
    Empty,
    Singleton(Matrix<T>),
    /// The linear relaxation has positive dimension; the count is its real dimension.
    Undetermined(usize),
}

impl<T> SolutionSet<T> {
    pub fn singleton(&self) -> Option<&Matrix<T>> {
        match self {
            SolutionSet::Singleton(x) => Some(x),
            _ => None,
        }
    }
}

fn resolve<T: Field>(
    relaxation: AffineSet<T>,
    a: &Matrix<T>,
    nonlinear: &[EquationTag],
    ctx: &EquationContext<'_, T>,
) -> Result<SolutionSet<T>> {
    match relaxation.dimension() {
        None => Ok(SolutionSet::Empty),
        Some(0) => {
            let x = relaxation.particular.expect("nonempty");
            if crate::equations::check_membership(a, &x, nonlinear, ctx)? {
                Ok(SolutionSet::Singleton(x))
            } else {
                Ok(SolutionSet::Empty)
            }
        }
        Some(d) => Ok(SolutionSet::Undetermined(d)),
    }
}

/// All solutions of `{3M, 6, 7}`.
///
/// `AX^2 = X` forces `R(X) ⊆ R(A)`, so the solutions lie in the affine set
/// `{3M, 6, R(X) ⊆ R(A)}`; when that set is a single point the system reduces
/// to checking `7` there.
pub fn m_core_solution_set<T: Field>(a: &Matrix<T>, m: &Matrix<T>) -> Result<SolutionSet<T>> {
    require_square(a)?;
    let ctx = EquationContext::new().with_m(m);
    let relaxation = LinearSystem::new(a.rows(), a.rows())
        .equation(P3M, a, ctx)?
        .equation(P6, a, ctx)?
        .range_within(a)?
        .solve()?;
    resolve(relaxation, a, &[P7], &ctx)
}

/// All solutions of `{4N, 8, 9}`; `X^2A = X` forces the rows of `X` into the row space of `A`.
pub fn n_dual_core_solution_set<T: Field>(a: &Matrix<T>, n: &Matrix<T>) -> Result<SolutionSet<T>> {
    require_square(a)?;
    let ctx = EquationContext::new().with_n(n);
    let relaxation = LinearSystem::new(a.rows(), a.rows())
        .equation(P4N, a, ctx)?
        .equation(P8, a, ctx)?
        .row_space_within(a)?
        .solve()?;
    resolve(relaxation, a, &[P9], &ctx)
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

    fn weight() -> M {
        M::from_i64(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 1]])
    }

    fn raw(a: M, m: Option<M>, n: Option<M>) -> WeightedProblem<GaussRat> {
        WeightedProblem::new(a, m, n, WeightPolicy::AllowNonHermitian).unwrap()
    }

    #[test]
    fn problem_validation() {
        let a = M::identity(2);
        assert_eq!(
            WeightedProblem::with_m(a.clone(), M::from_i64(&[&[1, 1], &[0, 1]])).unwrap_err(),
            GeninvError::NotHermitian
        );
        assert_eq!(WeightedProblem::with_m(a.clone(), M::from_i64(&[&[1, 1], &[1, 1]])).unwrap_err(), GeninvError::Singular);
        assert!(matches!(WeightedProblem::with_m(a.clone(), M::identity(3)), Err(GeninvError::DimensionMismatch(_))));
        assert!(matches!(WeightedProblem::with_m(M::zeros(2, 3), M::identity(2)), Err(GeninvError::NotSquare { .. })));
        assert!(matches!(
            m_weighted_core(&WeightedProblem::new(a, None, None, WeightPolicy::default()).unwrap()),
            Err(GeninvError::MissingContext(_))
        ));
    }

    #[test]
    fn m_core_examples() {
        let a = M::from_i64(&[&[1, 1], &[0, 0]]);
        let p = raw(a, Some(M::from_i64(&[&[1, 1], &[0, 1]])), None);
        assert_eq!(m_weighted_core(&p).unwrap(), Existence::Exists(M::from_i64(&[&[1, 0], &[0, 0]])));

        let p = WeightedProblem::with_m(example(), weight()).unwrap();
        assert_eq!(m_weighted_core(&p).unwrap(), Existence::Exists(M::diag(&[q(1, 1), q(1, 1), q(0, 1)])));

        let p = WeightedProblem::with_m(M::identity(3), weight()).unwrap();
        assert_eq!(m_weighted_core(&p).unwrap(), Existence::Exists(M::identity(3)));

        let p = WeightedProblem::with_m(M::from_i64(&[&[0, 1], &[0, 0]]), M::identity(2)).unwrap();
        assert_eq!(m_weighted_core(&p).unwrap(), Existence::NotExists(NonExistence::IndexTooHigh));
    }

    #[test]
    fn indefinite_weight_can_empty_the_class() {
        // A{1,3M} = {X : (MAX)* = MAX, AXA = A}; with M = [[0,1],[1,0]] and a
        // rank-one A whose range is isotropic for M the class is empty.
        let a = M::from_i64(&[&[1, 0], &[0, 0]]);
        let m = M::from_i64(&[&[0, 1], &[1, 0]]);
        let p = WeightedProblem::with_m(a, m).unwrap();
        assert_eq!(m_weighted_core(&p).unwrap(), Existence::NotExists(NonExistence::FeasibilityEmpty));
    }

    #[test]
    fn dual_core_examples() {
        let a = M::from_i64(&[&[1, 1], &[0, 0]]);
        let n = M::from_rows(vec![vec![q(1, 2), q(1, 2)], vec![q(3, 10), q(7, 10)]]).unwrap();
        let half = M::from_rows(vec![vec![q(1, 2), q(1, 2)], vec![q(1, 2), q(1, 2)]]).unwrap();
        assert_eq!(n_weighted_dual_core(&raw(a, None, Some(n))).unwrap(), Existence::Exists(half));

        let p = WeightedProblem::with_n(example(), weight()).unwrap();
        let expected = M::from_rows(vec![
            vec![q(1, 2), q(0, 1), q(1, 2)],
            vec![q(0, 1), q(1, 1), q(0, 1)],
            vec![q(1, 2), q(0, 1), q(1, 2)],
        ])
        .unwrap();
        assert_eq!(n_weighted_dual_core(&p).unwrap(), Existence::Exists(expected));

        let p = WeightedProblem::with_n(M::zeros(2, 2), M::identity(2)).unwrap();
        assert_eq!(n_weighted_dual_core(&p).unwrap(), Existence::Exists(M::zeros(2, 2)));
    }

    #[test]
    fn weighted_mp_examples() {
        let p = WeightedProblem::with_mn(example(), weight(), weight()).unwrap();
        let expected = M::from_rows(vec![
            vec![q(1, 2), q(0, 1), q(0, 1)],
            vec![q(0, 1), q(1, 1), q(0, 1)],
            vec![q(1, 2), q(0, 1), q(0, 1)],
        ])
        .unwrap();
        assert_eq!(weighted_mp(&p).unwrap(), Existence::Exists(expected));

        let a = M::from_i64(&[&[2, 1], &[1, 1]]);
        let p = WeightedProblem::with_mn(a.clone(), M::from_i64(&[&[1, 2], &[2, 1]]), M::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(weighted_mp(&p).unwrap(), Existence::Exists(inverse(&a).unwrap()));

        // An isotropic range for M leaves no weighted Moore-Penrose inverse.
        let a = M::from_i64(&[&[1, 0], &[0, 0]]);
        let m = M::from_i64(&[&[0, 1], &[1, 0]]);
        let p = WeightedProblem::with_mn(a, m, M::identity(2)).unwrap();
        assert_eq!(weighted_mp(&p).unwrap(), Existence::NotExists(NonExistence::FeasibilityEmpty));
    }

    #[test]
    fn duality_examples() {
        let d = duality_transform(&M::identity(2), &M::identity(2)).unwrap();
        assert_eq!(d.b, M::identity(2));
        let y = M::from_rows(vec![vec![GaussRat::complex((1, 1), (2, 1)), q(3, 1)], vec![q(0, 1), q(1, 1)]]).unwrap();
        assert_eq!(d.pullback(&y), y.adjoint());

        let d = duality_transform(&example(), &weight()).unwrap();
        let dual = n_weighted_dual_core(&WeightedProblem::with_n(d.b.clone(), weight()).unwrap()).unwrap();
        assert_eq!(dual, Existence::Exists(M::diag(&[q(1, 1), q(1, 1), q(0, 1)])));
        assert!(duality_transform(&example(), &M::zeros(3, 3)).is_err());
    }

    #[test]
    fn idempotent_pairs() {
        let p = WeightedProblem::with_mn(example(), weight(), weight()).unwrap();
        let pair = idempotent_pair(&p, IdempotentFlavor::Core).unwrap();
        assert_eq!(pair.p, M::diag(&[q(1, 1), q(1, 1), q(0, 1)]));
        assert_eq!(pair.q, example());
        idempotent_pair(&p, IdempotentFlavor::Dual).unwrap();
        idempotent_pair(&p, IdempotentFlavor::Mp).unwrap();

        let i = WeightedProblem::with_mn(M::identity(2), M::identity(2), M::identity(2)).unwrap();
        let pair = idempotent_pair(&i, IdempotentFlavor::Core).unwrap();
        assert_eq!((pair.p, pair.q), (M::identity(2), M::identity(2)));
    }

    #[test]
    fn projector_sets_are_singletons() {
        let a = example();
        let p = m_projector_set(&a, &weight()).unwrap();
        assert_eq!(p.particular.clone().unwrap(), M::diag(&[q(1, 1), q(1, 1), q(0, 1)]));
        assert!(p.is_singleton());
        let s = spectral_projector_set(&a).unwrap();
        assert_eq!(s.particular.unwrap(), a);
        assert!(n_projector_set(&a, &weight()).unwrap().is_singleton());
    }

    #[test]
    fn solution_sets_match_closed_forms() {
        let a = example();
        let s = m_core_solution_set(&a, &weight()).unwrap();
        assert_eq!(s, SolutionSet::Singleton(M::diag(&[q(1, 1), q(1, 1), q(0, 1)])));
        let s = n_dual_core_solution_set(&a, &weight()).unwrap();
        let x = n_weighted_dual_core(&WeightedProblem::with_n(a, weight()).unwrap()).unwrap();
        assert_eq!(s.singleton(), x.witness());
        let nil = M::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(m_core_solution_set(&nil, &M::identity(2)).unwrap(), SolutionSet::Empty);
    }
}
