//! Row reduction, rank, general solving, inversion and full-rank factorization.

use crate::error::{GeninvError, Result};
use crate::matrix::Matrix;
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct RrefResult<T> {
    pub rref: Matrix<T>,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
    /// Invertible `rows x rows` matrix with `transform * input = rref`.
    pub transform: Matrix<T>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Unique,
    Infinite,
    NoSolution,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult<T> {
    pub status: SolveStatus,
    /// Solution with every free variable set to zero.
    pub particular: Option<Matrix<T>>,
    /// Column vectors spanning `{x : A x = 0}`; every solution is
    /// `particular + sum_k v_k c_k^T` for arbitrary row vectors `c_k`.
    pub null_basis: Vec<Matrix<T>>,
    /// On `NoSolution`, a row vector `y` with `y A = 0` and `y B != 0`.
    pub certificate: Option<Matrix<T>>,
}

fn add_row_multiple<T: Field>(m: &mut Matrix<T>, target: usize, src: usize, factor: &T) {
    for j in 0..m.cols() {
        let s = m.get(src, j);
        if s.is_zero() {
            continue;
        }
        let delta = factor.clone() * s;
        let slot = m.get_mut(target, j);
        *slot = std::mem::replace(slot, T::zero()) - delta;
    }
}

fn scale_row<T: Field>(m: &mut Matrix<T>, row: usize, factor: &T) {
    for j in 0..m.cols() {
        let slot = m.get_mut(row, j);
        *slot = std::mem::replace(slot, T::zero()) * factor;
    }
}

/// Reduced row echelon form with the elimination transform.
///
/// Exact fields take the topmost nonzero entry of the leftmost remaining
/// column as pivot. Floating fields take the largest entry in modulus (first
/// one on ties) and treat anything under the pivot tolerance as zero.
pub fn rref<T: Field>(a: &Matrix<T>) -> RrefResult<T> {
    let mut t = Matrix::identity(a.rows());
    let (r, pivot_cols) = reduce(a.clone(), a.cols(), a.max_norm(), Some(&mut t));
    RrefResult { rank: pivot_cols.len(), rref: r, pivot_cols, transform: t }
}

/// Row-reduce `r` in place, pivoting only in the first `pivot_limit` columns.
/// Row operations are mirrored on `t` when given.
fn reduce<T: Field>(mut r: Matrix<T>, pivot_limit: usize, scale: f64, mut t: Option<&mut Matrix<T>>) -> (Matrix<T>, Vec<usize>) {
    let m = r.rows();
    let tol = T::pivot_tolerance(scale, m.max(pivot_limit));
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..pivot_limit {
        if row == m {
            break;
        }
        let candidate = if T::EXACT {
            (row..m).find(|&i| !r.get(i, col).is_zero())
        } else {
            let mut best: Option<(usize, f64)> = None;
            for i in row..m {
                let v = r.get(i, col).modulus();
                if v > tol && best.is_none_or(|(_, b)| v > b) {
                    best = Some((i, v));
                }
            }
            best.map(|(i, _)| i)
        };
        let Some(p) = candidate else {
            if !T::EXACT {
                for i in row..m {
                    r.set(i, col, T::zero());
                }
            }
            continue;
        };
        r.swap_rows(p, row);
        let inv = T::one() / r.get(row, col);
        scale_row(&mut r, row, &inv);
        r.set(row, col, T::one());
        if let Some(t) = t.as_deref_mut() {
            t.swap_rows(p, row);
            scale_row(t, row, &inv);
        }
        for i in 0..m {
            if i == row || r.get(i, col).is_zero() {
                continue;
            }
            let f = r.get(i, col).clone();
            add_row_multiple(&mut r, i, row, &f);
            if let Some(t) = t.as_deref_mut() {
                add_row_multiple(t, i, row, &f);
            }
            r.set(i, col, T::zero());
        }
        pivot_cols.push(col);
        row += 1;
    }
    (r, pivot_cols)
}

pub fn rank<T: Field>(a: &Matrix<T>) -> usize {
    reduce(a.clone(), a.cols(), a.max_norm(), None).1.len()
}

/// All solutions of `A X = B`.
pub fn solve_general<T: Field>(a: &Matrix<T>, b: &Matrix<T>) -> Result<SolveResult<T>> {
    if a.rows() != b.rows() {
        return Err(GeninvError::DimensionMismatch(format!(
            "A has {} rows, B has {}",
            a.rows(),
            b.rows()
        )));
    }
    let (r, pivot_cols) = reduce(a.hstack(b)?, a.cols(), a.max_norm(), None);
    let rank = pivot_cols.len();
    let tol = T::residual_tolerance(a.max_norm().max(b.max_norm()));
    let n = a.cols();
    let inconsistent = (rank..a.rows()).any(|i| (0..b.cols()).any(|j| !r.get(i, n + j).is_negligible(tol)));
    if inconsistent {
        // Rare path: redo the elimination with the transform for a certificate.
        let rr = rref(a);
        let c = &rr.transform * b;
        let i = (rr.rank..a.rows())
            .find(|&i| (0..c.cols()).any(|j| !c.get(i, j).is_negligible(tol)))
            .unwrap_or(rr.rank.min(a.rows() - 1));
        return Ok(SolveResult {
            status: SolveStatus::NoSolution,
            particular: None,
            null_basis: Vec::new(),
            certificate: Some(rr.transform.select_rows(&[i])),
        });
    }
    let mut x = Matrix::zeros(n, b.cols());
    for (k, &pc) in pivot_cols.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(pc, j, r.get(k, n + j).clone());
        }
    }
    let null_basis = null_vectors(&r, &pivot_cols, n);
    let status = if null_basis.is_empty() { SolveStatus::Unique } else { SolveStatus::Infinite };
    Ok(SolveResult { status, particular: Some(x), null_basis, certificate: None })
}

fn null_vectors<T: Field>(rref: &Matrix<T>, pivot_cols: &[usize], n: usize) -> Vec<Matrix<T>> {
    let mut is_pivot = vec![false; n];
    for &p in pivot_cols {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = Matrix::zeros(n, 1);
            v.set(f, 0, T::one());
            for (k, &pc) in pivot_cols.iter().enumerate() {
                v.set(pc, 0, -rref.get(k, f).clone());
            }
            v
        })
        .collect()
}

/// Basis of the right null space as column vectors.
pub fn null_space<T: Field>(a: &Matrix<T>) -> Vec<Matrix<T>> {
    let (r, pivots) = reduce(a.clone(), a.cols(), a.max_norm(), None);
    null_vectors(&r, &pivots, a.cols())
}

/// `A = F G` with `F` the pivot columns of `A` and `G` the nonzero rows of its RREF.
pub fn full_rank_factorize<T: Field>(a: &Matrix<T>) -> Result<(Matrix<T>, Matrix<T>)> {
    let (r, pivots) = reduce(a.clone(), a.cols(), a.max_norm(), None);
    if pivots.is_empty() {
        return Err(GeninvError::ZeroMatrix);
    }
    let f = a.select_cols(&pivots);
    let g = r.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
    Ok((f, g))
}

pub fn inverse<T: Field>(a: &Matrix<T>) -> Result<Matrix<T>> {
    if !a.is_square() {
        return Err(GeninvError::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let rr = rref(a);
    if rr.rank < a.rows() {
        return Err(GeninvError::Singular);
    }
    Ok(rr.transform)
}

pub fn is_invertible<T: Field>(a: &Matrix<T>) -> bool {
    a.is_square() && rank(a) == a.rows()
}

/// `R(U) ⊆ R(V)`, decided by `rank([V | U]) = rank(V)`.
pub fn range_contains<T: Field>(v: &Matrix<T>, u: &Matrix<T>) -> Result<bool> {
    Ok(rank(&v.hstack(u)?) == rank(v))
}

/// `R(U*) ⊆ R(V*)`, i.e. the row space of `U` lies in the row space of `V`.
pub fn row_space_contains<T: Field>(v: &Matrix<T>, u: &Matrix<T>) -> Result<bool> {
    range_contains(&v.adjoint(), &u.adjoint())
}

/// `R(U) = R(V)` via `rank(U) = rank(V) = rank([U | V])`.
pub fn range_eq<T: Field>(u: &Matrix<T>, v: &Matrix<T>) -> Result<bool> {
    let ru = rank(u);
    Ok(ru == rank(v) && ru == rank(&u.hstack(v)?))
}

/// Positive definiteness of a Hermitian matrix by symmetric elimination:
/// every pivot must be real and positive.
pub fn is_positive_definite<T: Field>(h: &Matrix<T>) -> bool {
    let tol = T::residual_tolerance(h.max_norm());
    if !h.is_hermitian(tol) {
        return false;
    }
    let n = h.rows();
    let mut w = h.clone();
    for k in 0..n {
        let p = w.get(k, k).clone();
        if !p.is_real_positive(tol) {
            return false;
        }
        for i in k + 1..n {
            let f = w.get(i, k).clone() / &p;
            if f.is_zero() {
                continue;
            }
            add_row_multiple(&mut w, i, k, &f);
        }
    }
    true
}

pub fn is_unitary<T: Field>(u: &Matrix<T>) -> bool {
    u.is_square() && {
        let tol = T::residual_tolerance(u.max_norm());
        (&u.adjoint() * u).approx_eq(&Matrix::identity(u.rows()), tol)
    }
}
