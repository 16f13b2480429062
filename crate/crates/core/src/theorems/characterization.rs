//! Equivalent characterizations of the weighted core inverses, the weighted
//! Moore-Penrose inverse and weighted-EP matrices.
//!
//! Clause names use `cM(A)` for the M-weighted core inverse, `dN(A)` for the
//! N-weighted dual core inverse and `wMN(A)` for the weighted Moore-Penrose inverse.

use crate::equations::{EquationContext, EquationTag};
use crate::error::{GeninvError, Result};
use crate::feasibility::{AffineSet, LinearSystem};
use crate::geninv::index;
use crate::linalg::inverse;
use crate::matrix::Matrix;
use crate::scalar::Field;
use crate::weighted::{m_projector_set, n_projector_set, one_four_n, one_three_m, spectral_projector_set, WeightedProblem};

use super::checks::{group, mcore, ndual, wmp, Checker, Test};
use super::{verify_theorem, Clause, ClauseRole, TheoremId, TheoremInputs};

use ClauseRole::*;
use EquationTag::*;

/// Solutions of a linear relaxation plus nonlinear equations, when the
/// relaxation is known to contain at most one solution of the full system.
///
/// Returns the truth of "exactly one solution" and the solution itself. A
/// relaxation of positive dimension counts as "no solution": callers only use
/// relaxations that collapse to a point whenever the full system is solvable.
fn unique_point<T: Field>(
    relax: &AffineSet<T>,
    a: &Matrix<T>,
    nonlinear: &[EquationTag],
    ctx: &EquationContext<'_, T>,
) -> Result<(Test<T>, Option<Matrix<T>>)> {
    match relax.dimension() {
        None => Ok((Test::nonempty(relax), None)),
        Some(0) => {
            let x = relax.particular.clone().expect("nonempty");
            let t = Test::member(a, &x, nonlinear, ctx)?;
            let x = t.holds.then_some(x);
            Ok((t, x))
        }
        Some(_) => Ok((Test::singleton(relax), None)),
    }
}

/// Nonempty relaxation whose particular point also satisfies `nonlinear`.
fn some_point<T: Field>(
    relax: &AffineSet<T>,
    a: &Matrix<T>,
    nonlinear: &[EquationTag],
    ctx: &EquationContext<'_, T>,
) -> Result<Test<T>> {
    match &relax.particular {
        None => Ok(Test::nonempty(relax)),
        Some(x) => Test::member(a, x, nonlinear, ctx),
    }
}

fn one_inverse_label(k: usize) -> String {
    if k == 0 {
        "A(1) = A†".to_string()
    } else {
        format!("perturbed A(1) #{k}")
    }
}

pub(super) fn m_core_characterization<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>, m: &Matrix<T>) -> Result<()> {
    ck.weight_hypothesis("M", m);
    ck.index_hypothesis("A", a)?;
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let n = a.rows();
    let ctx = EquationContext::new().with_m(m);
    let am = &a.adjoint() * m;
    let inner = LinearSystem::new(n, n).equation(P1, a, ctx)?.range_within(a)?.row_space_within(&am)?.solve()?;
    ck.push(Equivalent, "(a) some X in A{1} has R(X) = R(A) and R(X^T) = R((A*M)^T)", Test::nonempty(&inner));

    let relax = LinearSystem::new(n, n).equation(P3M, a, ctx)?.equation(P6, a, ctx)?.range_within(a)?.solve()?;
    let (unique, x_c) = unique_point(&relax, a, &[P7], &ctx)?;
    let b = match &x_c {
        Some(x) => Test::member(a, x, &[P1, P2], &ctx)?,
        None => unique.clone(),
    };
    ck.push(Equivalent, "(b) exactly one X satisfies 1, 2, 3M, 6, 7", b);
    ck.push(Equivalent, "(c) exactly one X satisfies 3M, 6, 7", unique);

    let g = group(a)?;
    let class = one_three_m(a, m)?;
    ck.push(Equivalent, "(d) A# exists and A{1,3M} is nonempty", Test::exists(g.as_ref()).and(Test::nonempty(&class)));

    let pset = m_projector_set(a, m)?;
    let qset = spectral_projector_set(a)?;
    ck.push(
        Equivalent,
        "(e) unique idempotents P, Q with MP Hermitian, R(P) = R(Q) = R(A), R(Q^T) = R(A^T)",
        Test::singleton(&pset).and(Test::singleton(&qset)),
    );

    let Some(x) = mcore(a, m)? else {
        return Ok(());
    };
    ck.eq_opt(Conclusion, "the solution of 3M, 6, 7 is cM(A)", x_c.as_ref(), Some(&x));
    if let (Some(p), Some(q)) = (&pset.particular, &qset.particular) {
        for (k, g1) in ck.one_inverses(a, 5)?.iter().enumerate() {
            ck.eq(Conclusion, format!("cM(A) = Q A(1) P with {}", one_inverse_label(k)), &(&(q * g1) * p), &x);
        }
        ck.eq(Conclusion, "P = A cM(A)", p, &(a * &x));
        ck.eq(Conclusion, "Q = cM(A) A", q, &(&x * a));
    }
    if let Some(g) = &g {
        for k in 1..=5 {
            if let Some(y) = ck.random_point(&class) {
                ck.eq(Conclusion, format!("cM(A) = A# A Y for sampled Y #{k} in A{{1,3M}}"), &(&(g * a) * &y), &x);
            }
        }
        ck.eq(Conclusion, "A# = cM(A)^2 A", g, &(&(&x * &x) * a));
        if let Some(q) = &qset.particular {
            ck.eq(Conclusion, "Q = A# A", q, &(g * a));
        }
    }
    Ok(())
}

pub(super) fn n_dual_characterization<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>, nw: &Matrix<T>) -> Result<()> {
    ck.weight_hypothesis("N", nw);
    ck.index_hypothesis("A", a)?;
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let n = a.rows();
    let ctx = EquationContext::new().with_n(nw);
    let ah = a.adjoint();
    let off_range = &Matrix::identity(n) - &(&ah * &crate::geninv::mp_inverse(&ah)?);
    let inner = LinearSystem::new(n, n)
        .equation(P1, a, ctx)?
        .constrain(move |x| &off_range * &(nw * x))
        .row_space_within(a)?
        .solve()?;
    ck.push(Equivalent, "(a) some X in A{1} has R(NX) = R(A*) and R(X^T) = R(A^T)", Test::nonempty(&inner));

    let relax = LinearSystem::new(n, n).equation(P4N, a, ctx)?.equation(P8, a, ctx)?.row_space_within(a)?.solve()?;
    let (unique, x_c) = unique_point(&relax, a, &[P9], &ctx)?;
    let b = match &x_c {
        Some(x) => Test::member(a, x, &[P1, P2], &ctx)?,
        None => unique.clone(),
    };
    ck.push(Equivalent, "(b) exactly one X satisfies 1, 2, 4N, 8, 9", b);
    ck.push(Equivalent, "(c) exactly one X satisfies 4N, 8, 9", unique);

    let g = group(a)?;
    let class = one_four_n(a, nw)?;
    ck.push(Equivalent, "(d) A# exists and A{1,4N} is nonempty", Test::exists(g.as_ref()).and(Test::nonempty(&class)));

    let pset = spectral_projector_set(a)?;
    let qset = n_projector_set(a, nw)?;
    ck.push(
        Equivalent,
        "(e) unique idempotents P, Q with NQ Hermitian, R(P) = R(A), R(P^T) = R(Q^T) = R(A^T)",
        Test::singleton(&pset).and(Test::singleton(&qset)),
    );

    let Some(x) = ndual(a, nw)? else {
        return Ok(());
    };
    ck.eq_opt(Conclusion, "the solution of 4N, 8, 9 is dN(A)", x_c.as_ref(), Some(&x));
    if let (Some(p), Some(q)) = (&pset.particular, &qset.particular) {
        for (k, g1) in ck.one_inverses(a, 5)?.iter().enumerate() {
            ck.eq(Conclusion, format!("dN(A) = Q A(1) P with {}", one_inverse_label(k)), &(&(q * g1) * p), &x);
        }
        ck.eq(Conclusion, "P = A dN(A)", p, &(a * &x));
        ck.eq(Conclusion, "Q A = dN(A) A", &(q * a), &(&x * a));
        // As printed this says dN(A) A^2 = dN(A) A; the mirror of Q = cM(A) A is Q = dN(A) A.
        ck.eq(Info, "Q = dN(A) A", q, &(&x * a));
    }
    if let Some(g) = &g {
        for k in 1..=5 {
            if let Some(y) = ck.random_point(&class) {
                ck.eq(Conclusion, format!("dN(A) = Y A A# for sampled Y #{k} in A{{1,4N}}"), &(&(&y * a) * g), &x);
            }
        }
        ck.eq(Conclusion, "A# = A dN(A)^2", g, &(&(a * &x) * &x));
        if let Some(p) = &pset.particular {
            ck.eq(Conclusion, "P = A A#", p, &(a * g));
        }
    }
    Ok(())
}

pub(super) fn weighted_mp_existence<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>, m: &Matrix<T>, nw: &Matrix<T>) -> Result<()> {
    ck.weight_hypothesis("M", m);
    ck.weight_hypothesis("N", nw);
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let x = wmp(a, m, nw)?;
    ck.push(Equivalent, "(a) wMN(A) exists", Test::exists(x.as_ref()));
    let pset = m_projector_set(a, m)?;
    let qset = n_projector_set(a, nw)?;
    ck.push(
        Equivalent,
        "(b) unique idempotents P, Q with MP, NQ Hermitian, R(P) = R(A), R(Q^T) = R(A^T)",
        Test::singleton(&pset).and(Test::singleton(&qset)),
    );
    let (Some(x), Some(p), Some(q)) = (x, &pset.particular, &qset.particular) else {
        return Ok(());
    };
    for (k, g1) in ck.one_inverses(a, 5)?.iter().enumerate() {
        ck.eq(Conclusion, format!("wMN(A) = Q A(1) P with {}", one_inverse_label(k)), &(&(q * g1) * p), &x);
    }
    ck.eq(Conclusion, "P = A wMN(A)", p, &(a * &x));
    ck.eq(Conclusion, "Q = wMN(A) A", q, &(&x * a));
    Ok(())
}

pub(super) fn weighted_ep_single_weight<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>, m: &Matrix<T>) -> Result<()> {
    ck.weight_hypothesis("M", m);
    ck.index_hypothesis("A", a)?;
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let n = a.rows();
    let tol = ck.tol;
    let g = group(a)?.expect("index at most one");
    let w = wmp(a, m, m)?;
    let x = mcore(a, m)?;
    let y = ndual(a, m)?;
    let m_inv = inverse(m)?;
    let ah = a.adjoint();

    ck.push(Equivalent, "(a) wMM(A) exists and equals A#", Test::eq_opt(w.as_ref(), Some(&g), tol));

    let ctx = EquationContext::new().with_m(m).with_n(m);
    let relax_b = LinearSystem::new(n, n).equation(P3M, a, ctx)?.equation(P8, a, ctx)?.row_space_within(a)?.solve()?;
    let t = some_point(&relax_b, a, &[P9], &ctx)?;
    ck.push(Equivalent, "(b) some X satisfies 3M, 8, 9", t);
    let relax_c = LinearSystem::new(n, n).equation(P4N, a, ctx)?.equation(P6, a, ctx)?.range_within(a)?.solve()?;
    let t = some_point(&relax_c, a, &[P7], &ctx)?;
    ck.push(Equivalent, "(c) some X satisfies (MXA)* = MXA, 6, 7", t);

    let t = Test::eq_opt(x.as_ref(), Some(&g), tol).and(Test::eq_opt(y.as_ref(), Some(&g), tol));
    ck.push(Equivalent, "(d) cM(A) = A# = dM(A)", t);
    let t = Test::eq_opt(x.as_ref(), w.as_ref(), tol).and(Test::eq_opt(w.as_ref(), y.as_ref(), tol));
    ck.push(Equivalent, "(e) cM(A) = wMM(A) = dM(A)", t);

    let t = Test::rows_in(a, &(&ah * m), tol)?;
    ck.push(Equivalent, "(f) R(A^T) ⊆ R((A*M)^T)", t);
    let t = Test::range_in(a, &(&m_inv * &ah), tol)?;
    ck.push(Equivalent, "(g) R(A) ⊆ R(M^-1 A*)", t);
    let t = Test::range_in(&ah, &(m * a), tol)?;
    ck.push(Equivalent, "(h) R(A*) ⊆ R(MA)", t);

    let t = Test::hermitian(&(&(m * a) * &g), tol);
    ck.push(Info, "M A A# is Hermitian", t);
    Ok(())
}

pub(super) fn weighted_ep_two_weights<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>, m: &Matrix<T>, nw: &Matrix<T>) -> Result<()> {
    ck.weight_hypothesis("M", m);
    ck.weight_hypothesis("N", nw);
    ck.index_hypothesis("A", a)?;
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let n = a.rows();
    let tol = ck.tol;
    let g = group(a)?.expect("index at most one");
    let w = wmp(a, m, nw)?;
    let m_inv = inverse(m)?;
    let n_inv = inverse(nw)?;
    let ah = a.adjoint();

    ck.push(Equivalent, "(a) wMN(A) exists and equals A#", Test::eq_opt(w.as_ref(), Some(&g), tol));

    let ctx_m = EquationContext::new().with_m(m).with_n(m);
    let ctx_n = EquationContext::new().with_m(nw).with_n(nw);
    let relax_b = LinearSystem::new(n, n)
        .equation(P3M, a, ctx_m)?
        .equation(P3M, a, ctx_n)?
        .equation(P8, a, ctx_m)?
        .row_space_within(a)?
        .solve()?;
    let t = some_point(&relax_b, a, &[P9], &ctx_m)?;
    ck.push(Equivalent, "(b) some X satisfies 3M, (NAX)* = NAX, 8, 9", t);
    let relax_c = LinearSystem::new(n, n)
        .equation(P4N, a, ctx_m)?
        .equation(P4N, a, ctx_n)?
        .equation(P6, a, ctx_m)?
        .range_within(a)?
        .solve()?;
    let t = some_point(&relax_c, a, &[P7], &ctx_m)?;
    ck.push(Equivalent, "(c) some X satisfies (MXA)* = MXA, 4N, 6, 7", t);

    let t = Test::range_in(a, &(&n_inv * &ah), tol)?.and(Test::rows_in(a, &(&ah * m), tol)?);
    ck.push(Equivalent, "(d) R(A) ⊆ R(N^-1 A*) and R(A^T) ⊆ R((A*M)^T)", t);
    let t = Test::rows_in(&(a * &n_inv), &ah, tol)?.and(Test::range_in(a, &(&m_inv * &ah), tol)?);
    ck.push(Equivalent, "(e) R((AN^-1)^T) ⊆ R((A*)^T) and R(A) ⊆ R(M^-1 A*)", t);
    let t = Test::range_in(&(&n_inv * &ah), a, tol)?.and(Test::rows_in(&ah, &(a * &m_inv), tol)?);
    ck.push(Equivalent, "(f) R(N^-1 A*) ⊆ R(A) and R((A*)^T) ⊆ R((AM^-1)^T)", t);
    let t = Test::rows_in(&ah, &(a * &n_inv), tol)?.and(Test::range_in(a, &(a * m), tol)?);
    ck.push(Equivalent, "(g) R((A*)^T) ⊆ R((AN^-1)^T) and R(A) ⊆ R(AM)", t);
    // R(A) ⊆ R(AM) holds for every invertible M; the reverse of the second half of (e) is the evident intent.
    let t = Test::rows_in(&ah, &(a * &n_inv), tol)?.and(Test::range_in(&(&m_inv * &ah), a, tol)?);
    ck.push(Info, "(g) read with R(M^-1 A*) ⊆ R(A) as its second half", t);

    let t = Test::hermitian(&(&(m * a) * &g), tol).and(Test::hermitian(&(&(nw * &g) * a), tol));
    ck.push(Info, "M A A# and N A# A are Hermitian", t);
    Ok(())
}

pub(super) fn weighted_ep_definite<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>, m: &Matrix<T>, nw: &Matrix<T>) -> Result<()> {
    ck.definite_hypothesis("M", m);
    ck.definite_hypothesis("N", nw);
    ck.index_hypothesis("A", a)?;
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let g = group(a)?.expect("index at most one");
    let w = wmp(a, m, nw)?;
    let x = mcore(a, m)?;
    let y = ndual(a, nw)?;
    let tol = ck.tol;
    ck.push(Equivalent, "(a) wMN(A) = A#", Test::eq_opt(w.as_ref(), Some(&g), tol));
    let (Some(x), Some(y)) = (x, y) else {
        ck.push(Conclusion, "cM(A) and dN(A) exist for definite weights", Test::fail(None));
        return Ok(());
    };
    let mut ap = a.clone();
    let mut gp = g.clone();
    for j in 1..=4 {
        ck.eq(Equivalent, format!("(b) A^{j} cM(A) = dN(A) A^{j}"), &(&ap * &x), &(&y * &ap));
        ck.eq(Equivalent, format!("(c) (A#)^{j} cM(A) = dN(A) (A#)^{j}"), &(&gp * &x), &(&y * &gp));
        ap = &ap * a;
        gp = &gp * &g;
    }
    let xx = mcore(&x, m)?;
    let yy = ndual(&y, nw)?;
    ck.eq_opt(Equivalent, "(d) cM(cM(A)) = dN(dN(A))", xx.as_ref(), yy.as_ref());
    ck.eq(Equivalent, "(e) cM(A) = dN(A)", &x, &y);
    Ok(())
}

/// Whether `A` is weighted-EP for `(M, N)`, with the characterizing clauses.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedEpReport<T> {
    pub weighted_ep: bool,
    pub clauses: Vec<Clause<T>>,
}

/// `A` is weighted-EP when `ind(A) <= 1` and `wMN(A)` exists and equals `A#`.
/// `N` defaults to `M`; with a single weight the single-weight clauses are included too.
pub fn is_weighted_ep<T: Field>(p: &WeightedProblem<T>) -> Result<WeightedEpReport<T>> {
    let a = p.a();
    let m = p.require_m()?;
    let nw = p.n().unwrap_or(m);
    if index(a)?.k > 1 {
        return Err(GeninvError::IndexTooHigh);
    }
    let g = group(a)?.expect("index at most one");
    let w = wmp(a, m, nw)?;
    let weighted_ep = Test::eq_opt(w.as_ref(), Some(&g), crate::geninv::tolerance_for(&[a, m, nw])).holds;
    let inputs = TheoremInputs::new(a.clone()).with_m(m.clone()).with_n(nw.clone());
    let mut clauses = verify_theorem(TheoremId::T3_18, &inputs)?.clauses;
    if p.n().is_none() {
        let single = TheoremInputs::new(a.clone()).with_m(m.clone());
        clauses.extend(verify_theorem(TheoremId::T3_17, &single)?.clauses);
    }
    Ok(WeightedEpReport { weighted_ep, clauses })
}
