//! Affine solution sets of matrix equations that are linear in the unknown.
//!
//! A constraint is any map `X -> F(X)` that is affine over the reals (this
//! covers `(MAX)* = MAX`, which is linear in the entries and their conjugates).
//! The system is vectorized by probing `F` on the real basis `E_ij` and, for
//! complex fields, on `i E_ij`, splitting every residual entry into real and
//! imaginary rows, and handing the result to [`solve_general`].

use crate::equations::{residual, EquationContext, EquationTag};
use crate::error::{GeninvError, Result};
use crate::geninv::mp_inverse;
use crate::linalg::{solve_general, SolveStatus};
use crate::matrix::Matrix;
use crate::scalar::Field;

/// `{ particular + sum_k c_k D_k : c_k real }`, or empty.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSet<T> {
    pub rows: usize,
    pub cols: usize,
    /// Point with every free real parameter set to zero.
    pub particular: Option<Matrix<T>>,
    /// Real-linearly independent directions.
    pub directions: Vec<Matrix<T>>,
    /// For an empty set, a real row vector `y` combining the stacked real
    /// equations into `0 = nonzero`.
    pub certificate: Option<Matrix<T>>,
}

impl<T: Field> AffineSet<T> {
    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    pub fn is_singleton(&self) -> bool {
        !self.is_empty() && self.directions.is_empty()
    }

    /// Real dimension of the set (`None` when empty).
    pub fn dimension(&self) -> Option<usize> {
        self.particular.as_ref().map(|_| self.directions.len())
    }

    /// `particular + sum_k coeffs[k] D_k`; missing coefficients count as zero.
    pub fn point(&self, coeffs: &[T]) -> Option<Matrix<T>> {
        let mut x = self.particular.clone()?;
        for (d, c) in self.directions.iter().zip(coeffs) {
            if !c.is_zero() {
                x = &x + &d.scale(c);
            }
        }
        Some(x)
    }
}

type Constraint<'a, T> = Box<dyn Fn(&Matrix<T>) -> Matrix<T> + 'a>;

/// Builder for a system of affine constraints on an unknown `rows x cols` matrix.
pub struct LinearSystem<'a, T> {
    rows: usize,
    cols: usize,
    constraints: Vec<Constraint<'a, T>>,
}

impl<'a, T: Field> LinearSystem<'a, T> {
    pub fn new(rows: usize, cols: usize) -> Self {
        LinearSystem { rows, cols, constraints: Vec::new() }
    }

    /// Adds `F(X) = 0`. `F` must be real-affine in `X`.
    pub fn constrain(mut self, f: impl Fn(&Matrix<T>) -> Matrix<T> + 'a) -> Self {
        self.constraints.push(Box::new(f));
        self
    }

    /// Adds one numbered equation; nonlinear tags are rejected.
    pub fn equation(self, tag: EquationTag, a: &'a Matrix<T>, ctx: EquationContext<'a, T>) -> Result<Self> {
        if !tag.is_linear() {
            return Err(GeninvError::UnsupportedTag(tag));
        }
        // Validate shapes and context once so the closure can unwrap.
        residual(tag, a, &Matrix::zeros(self.rows, self.cols), &ctx)?;
        Ok(self.constrain(move |x| residual(tag, a, x, &ctx).expect("validated")))
    }

    /// Adds `R(X) ⊆ R(V)` as `(I - V V†) X = 0`.
    pub fn range_within(self, v: &Matrix<T>) -> Result<Self> {
        if v.rows() != self.rows {
            return Err(GeninvError::DimensionMismatch("range constraint rows".into()));
        }
        let proj = &Matrix::identity(v.rows()) - &(v * &mp_inverse(v)?);
        Ok(self.constrain(move |x| &proj * x))
    }

    /// Adds `R(X*) ⊆ R(V*)` as `X (I - V† V) = 0`.
    pub fn row_space_within(self, v: &Matrix<T>) -> Result<Self> {
        if v.cols() != self.cols {
            return Err(GeninvError::DimensionMismatch("row-space constraint columns".into()));
        }
        let proj = &Matrix::identity(v.cols()) - &(&mp_inverse(v)? * v);
        Ok(self.constrain(move |x| x * &proj))
    }

    fn basis(&self) -> Vec<Matrix<T>> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let mut e = Matrix::zeros(self.rows, self.cols);
                e.set(i, j, T::one());
                out.push(e.clone());
                if let Some(unit) = T::imag_unit() {
                    e.set(i, j, unit);
                    out.push(e);
                }
            }
        }
        out
    }

    fn push_parts(out: &mut Vec<T>, m: &Matrix<T>) {
        for v in m.entries() {
            out.push(v.re_part());
            if T::COMPLEX {
                out.push(v.im_part());
            }
        }
    }

    pub fn solve(&self) -> Result<AffineSet<T>> {
        let zero = Matrix::zeros(self.rows, self.cols);
        let offsets: Vec<Matrix<T>> = self.constraints.iter().map(|f| f(&zero)).collect();
        let mut rhs_entries = Vec::new();
        for off in &offsets {
            Self::push_parts(&mut rhs_entries, &-off);
        }
        let basis = self.basis();
        let height = rhs_entries.len();
        let mut columns: Vec<Vec<T>> = Vec::with_capacity(basis.len());
        for b in &basis {
            let mut col = Vec::with_capacity(height);
            for (f, off) in self.constraints.iter().zip(&offsets) {
                Self::push_parts(&mut col, &(&f(b) - off));
            }
            columns.push(col);
        }
        let unknowns = basis.len();
        if height == 0 {
            let directions = basis;
            return Ok(AffineSet {
                rows: self.rows,
                cols: self.cols,
                particular: Some(zero),
                directions,
                certificate: None,
            });
        }
        let system = Matrix::from_fn(height, unknowns, |r, c| columns[c][r].clone());
        let rhs = Matrix::new(height, 1, rhs_entries)?;
        let solved = solve_general(&system, &rhs)?;
        let assemble = |v: &Matrix<T>| {
            let mut x = Matrix::zeros(self.rows, self.cols);
            for (k, b) in basis.iter().enumerate() {
                let c = v.get(k, 0);
                if !c.is_zero() {
                    x = &x + &b.scale(c);
                }
            }
            x
        };
        if solved.status == SolveStatus::NoSolution {
            return Ok(AffineSet {
                rows: self.rows,
                cols: self.cols,
                particular: None,
                directions: Vec::new(),
                certificate: solved.certificate,
            });
        }
        let particular = solved.particular.as_ref().map(assemble);
        let directions = solved.null_basis.iter().map(assemble).collect();
        Ok(AffineSet { rows: self.rows, cols: self.cols, particular, directions, certificate: None })
    }
}

/// Solution set of the linear equations `tags` in `X` (shape `cols(A) x rows(A)`).
pub fn solve_linear_equations<T: Field>(
    a: &Matrix<T>,
    tags: &[EquationTag],
    ctx: &EquationContext<'_, T>,
) -> Result<AffineSet<T>> {
    let mut sys = LinearSystem::new(a.cols(), a.rows());
    for &tag in tags {
        sys = sys.equation(tag, a, *ctx)?;
    }
    sys.solve()
}

/// Affine set of all `X` satisfying the linear tags, e.g. `A{1,3M}`.
pub fn solve_linear_penrose<T: Field>(
    a: &Matrix<T>,
    tags: &[EquationTag],
    m: Option<&Matrix<T>>,
    n: Option<&Matrix<T>>,
) -> Result<AffineSet<T>> {
    let ctx = EquationContext { m, n, k: None, tolerance: None };
    solve_linear_equations(a, tags, &ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equations::check_membership;
    use crate::scalar::GaussRat;
    use EquationTag::*;

    type M = Matrix<GaussRat>;

    fn q(n: i64, d: i64) -> GaussRat {
        GaussRat::ratio(n, d)
    }

    /// Membership of `x` in the affine set, decided by a second solve.
    fn contains(set: &AffineSet<GaussRat>, x: &M) -> bool {
        let Some(p) = &set.particular else { return false };
        let diff = x - p;
        // Solve sum c_k D_k = diff over real c.
        let cols: Vec<M> = set.directions.iter().map(|d| d.vec()).collect();
        let mut rows = Vec::new();
        for r in 0..diff.rows() * diff.cols() {
            let mut re = Vec::new();
            let mut im = Vec::new();
            for c in &cols {
                re.push(GaussRat::real(c.get(r, 0).re().clone()));
                im.push(GaussRat::real(c.get(r, 0).im().clone()));
            }
            rows.push((re, im));
        }
        if cols.is_empty() {
            return diff.is_zero();
        }
        let mut mat = Vec::new();
        let mut rhs = Vec::new();
        let dv = diff.vec();
        for (r, (re, im)) in rows.into_iter().enumerate() {
            mat.push(re);
            mat.push(im);
            rhs.push(vec![GaussRat::real(dv.get(r, 0).re().clone())]);
            rhs.push(vec![GaussRat::real(dv.get(r, 0).im().clone())]);
        }
        let s = solve_general(&M::from_rows(mat).unwrap(), &M::from_rows(rhs).unwrap()).unwrap();
        s.status != SolveStatus::NoSolution
    }

    #[test]
    fn weighted_class_contains_fixture() {
        let a = M::from_i64(&[&[1, 1], &[0, 0]]);
        let m = M::from_i64(&[&[1, 1], &[0, 1]]);
        let set = solve_linear_penrose(&a, &[P1, P3M], Some(&m), None).unwrap();
        assert!(!set.is_empty());
        assert!(contains(&set, &M::from_i64(&[&[1, 0], &[0, 0]])));
        for d in &set.directions {
            let x = set.particular.as_ref().unwrap() + d;
            assert!(check_membership(&a, &x, &[P1, P3M], &EquationContext::new().with_m(&m)).unwrap());
        }
    }

    #[test]
    fn dual_weighted_class_contains_fixture() {
        let a = M::from_i64(&[&[1, 1], &[0, 0]]);
        let n = M::from_rows(vec![vec![q(1, 2), q(1, 2)], vec![q(3, 10), q(7, 10)]]).unwrap();
        let set = solve_linear_penrose(&a, &[P1, P4N], None, Some(&n)).unwrap();
        let half = q(1, 2);
        let x0 = M::from_rows(vec![vec![half.clone(), half.clone()], vec![half.clone(), half]]).unwrap();
        assert!(contains(&set, &x0));
    }

    #[test]
    fn invertible_forces_inverse() {
        let set = solve_linear_penrose(&M::identity(2), &[P1], None, None).unwrap();
        assert!(set.is_singleton());
        assert_eq!(set.particular.unwrap(), M::identity(2));
    }

    #[test]
    fn infeasible_system_has_certificate() {
        // A^2 X = A has no solution for a nilpotent A of index 2.
        let a = M::from_i64(&[&[0, 1], &[0, 0]]);
        let set = solve_linear_penrose(&a, &[P8], None, None).unwrap();
        assert!(set.is_empty());
        assert!(!set.certificate.unwrap().is_zero());
    }

    #[test]
    fn nonlinear_tags_rejected() {
        let a = M::identity(2);
        for tag in [P2, P7, P9] {
            assert_eq!(solve_linear_penrose(&a, &[tag], None, None), Err(GeninvError::UnsupportedTag(tag)));
        }
        assert!(matches!(solve_linear_penrose(&a, &[P3M], None, None), Err(GeninvError::MissingContext(_))));
    }

    #[test]
    fn probing_matches_kronecker_form() {
        // For real A, {X : AXA = 0} has dimension n^2 - rank(A^T kron A) per real/imag part.
        let a = M::from_i64(&[&[1, 2, 0], &[0, 1, 1], &[1, 3, 1]]);
        let set = LinearSystem::new(3, 3).constrain(|x| &(&a * x) * &a).solve().unwrap();
        let k = a.transpose().kron(&a);
        let expected = 2 * (9 - crate::linalg::rank(&k));
        assert_eq!(set.dimension(), Some(expected));
    }

    #[test]
    fn range_constraints() {
        let a = M::from_i64(&[&[1, 1], &[0, 0]]);
        let set = LinearSystem::new(2, 2).range_within(&a).unwrap().row_space_within(&a).unwrap().solve().unwrap();
        // Matrices c [[1,1],[0,0]] with complex c: real dimension 2.
        assert_eq!(set.dimension(), Some(2));
    }
}
