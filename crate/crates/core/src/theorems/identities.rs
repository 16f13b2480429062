//! Identity families and implication checks.
//!
//! Notation as in the characterization checks: `cM(A)`, `dN(A)`, `wMN(A)`.

use crate::equations::{EquationContext, EquationTag};
use crate::error::Result;
use crate::feasibility::LinearSystem;
use crate::geninv::core_inverse;
use crate::linalg::{inverse, solve_general};
use crate::matrix::Matrix;
use crate::scalar::Field;
use crate::weighted::{duality_transform, one_four_n, one_three_m};

use super::checks::{group, mcore, ndual, then, wmp, Checker, Test};
use super::ClauseRole::*;

use EquationTag::*;

const CLASS_NOTE: &str = "the class condition on A is read as: the class is nonempty";

pub(super) fn m_core_identities<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>, m: &Matrix<T>) -> Result<()> {
    ck.weight_hypothesis("M", m);
    ck.index_hypothesis("A", a)?;
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    ck.note(CLASS_NOTE);
    ck.push(Hypothesis, "A{1,3M} is nonempty", Test::nonempty(&one_three_m(a, m)?));
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let x = mcore(a, m)?;
    let g = group(a)?;
    let Some(x) = x else {
        ck.push(Conclusion, "cM(A) exists", Test::fail(None));
        return Ok(());
    };
    let a2x = &(a * a) * &x;
    ck.eq_opt(Conclusion, "(a) cM(A)# = A^2 cM(A)", group(&x)?.as_ref(), Some(&a2x));
    ck.eq_opt(Conclusion, "(a) wMM(cM(A)) = A^2 cM(A)", wmp(&x, m, m)?.as_ref(), Some(&a2x));
    ck.eq_opt(Conclusion, "(a) cM(cM(A)) = A^2 cM(A)", mcore(&x, m)?.as_ref(), Some(&a2x));
    ck.eq_opt(Conclusion, "(a) dM(cM(A)) = A^2 cM(A)", ndual(&x, m)?.as_ref(), Some(&a2x));
    ck.eq_opt(Conclusion, "(b) cM(A#) = A^2 cM(A)", then(&g, |g| mcore(g, m))?.as_ref(), Some(&a2x));
    ck.eq_opt(Conclusion, "(c) A# = cM(A)^2 A", g.as_ref(), Some(&(&(&x * &x) * a)));
    let (mut ap, mut xp) = (a.clone(), x.clone());
    for j in 1..=4 {
        ck.eq_opt(Conclusion, format!("(d) cM(A^{j}) = cM(A)^{j}"), mcore(&ap, m)?.as_ref(), Some(&xp));
        ap = &ap * a;
        xp = &xp * &x;
    }
    let twice = then(&mcore(&x, m)?, |y| mcore(y, m))?;
    ck.eq_opt(Conclusion, "(e) cM(cM(cM(A))) = cM(A)", twice.as_ref(), Some(&x));
    Ok(())
}

pub(super) fn n_dual_identities<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>, nw: &Matrix<T>) -> Result<()> {
    ck.weight_hypothesis("N", nw);
    ck.index_hypothesis("A", a)?;
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    ck.note(CLASS_NOTE);
    ck.push(Hypothesis, "A{1,4N} is nonempty", Test::nonempty(&one_four_n(a, nw)?));
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let y = ndual(a, nw)?;
    let g = group(a)?;
    let Some(y) = y else {
        ck.push(Conclusion, "dN(A) exists", Test::fail(None));
        return Ok(());
    };
    let ya2 = &(&y * a) * a;
    ck.eq_opt(Conclusion, "(a) dN(A)# = dN(A) A^2", group(&y)?.as_ref(), Some(&ya2));
    ck.eq_opt(Conclusion, "(a) wNN(dN(A)) = dN(A) A^2", wmp(&y, nw, nw)?.as_ref(), Some(&ya2));
    ck.eq_opt(Conclusion, "(a) dN(dN(A)) = dN(A) A^2", ndual(&y, nw)?.as_ref(), Some(&ya2));
    ck.eq_opt(Conclusion, "(a) cN(dN(A)) = dN(A) A^2", mcore(&y, nw)?.as_ref(), Some(&ya2));
    ck.eq_opt(Conclusion, "(b) dN(A#) = dN(A) A^2", then(&g, |g| ndual(g, nw))?.as_ref(), Some(&ya2));
    ck.eq_opt(Conclusion, "(c) A# = A dN(A)^2", g.as_ref(), Some(&(&(a * &y) * &y)));
    let (mut ap, mut yp) = (a.clone(), y.clone());
    for j in 1..=4 {
        ck.eq_opt(Conclusion, format!("(d) dN(A^{j}) = dN(A)^{j}"), ndual(&ap, nw)?.as_ref(), Some(&yp));
        ap = &ap * a;
        yp = &yp * &y;
    }
    let twice = then(&ndual(&y, nw)?, |z| ndual(z, nw))?;
    ck.eq_opt(Conclusion, "(e) dN(dN(dN(A))) = dN(A)", twice.as_ref(), Some(&y));
    Ok(())
}

pub(super) fn group_weighted_mp<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>, m: &Matrix<T>, nw: &Matrix<T>) -> Result<()> {
    ck.weight_hypothesis("M", m);
    ck.weight_hypothesis("N", nw);
    ck.index_hypothesis("A", a)?;
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    ck.note(CLASS_NOTE);
    ck.push(Hypothesis, "A{1,3M} is nonempty", Test::nonempty(&one_three_m(a, m)?));
    ck.push(Hypothesis, "A{1,4N} is nonempty", Test::nonempty(&one_four_n(a, nw)?));
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let (Some(g), Some(x), Some(y)) = (group(a)?, mcore(a, m)?, ndual(a, nw)?) else {
        ck.push(Conclusion, "A#, cM(A) and dN(A) exist", Test::fail(None));
        return Ok(());
    };
    let a3 = &(a * a) * a;
    ck.eq_opt(Conclusion, "(a) wMN(A#) = dN(A) A^3 cM(A)", wmp(&g, m, nw)?.as_ref(), Some(&(&(&y * &a3) * &x)));
    ck.eq(Conclusion, "(b) A# = cM(A) A dN(A)", &g, &(&(&x * a) * &y));
    Ok(())
}

pub(super) fn group_existence<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>) -> Result<()> {
    let a2 = a * a;
    ck.push(Equivalent, "A# exists", Test::exists(group(a)?.as_ref()));
    let right = solve_general(&a2, a)?;
    let left = solve_general(&a2.adjoint(), &a.adjoint())?;
    let t = Test::flag(right.particular.is_some())
        .and(Test::flag(left.particular.is_some()))
        .or(Test::fail(right.certificate.or(left.certificate)));
    ck.push(Equivalent, "some X, Y satisfy A^2 X = A = Y A^2", t);
    Ok(())
}

pub(super) fn group_representations<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>) -> Result<()> {
    ck.index_hypothesis("A", a)?;
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let g = group(a)?.expect("index at most one");
    let a2 = a * a;
    let xs = ck.solutions(&a2, a, 2)?;
    let ys: Vec<Matrix<T>> = ck.solutions(&a2.adjoint(), &a.adjoint(), 2)?.iter().map(Matrix::adjoint).collect();
    for (k, (x, y)) in xs.iter().zip(&ys).enumerate() {
        ck.eq(Conclusion, format!("A# = A X^2 for solution pair #{k}"), &g, &(&(a * x) * x));
        ck.eq(Conclusion, format!("A# = Y A X for solution pair #{k}"), &g, &(&(y * a) * x));
        ck.eq(Conclusion, format!("A# = Y^2 A for solution pair #{k}"), &g, &(&(y * y) * a));
    }
    Ok(())
}

/// Candidates `A A# W` for `W` in `A{1}`, plus the given closed-form witnesses.
fn check_implication<T: Field>(
    ck: &mut Checker<T>,
    a: &Matrix<T>,
    candidates: Vec<(String, Matrix<T>)>,
    premise: &[EquationTag],
    ctx: &EquationContext<'_, T>,
) -> Result<()> {
    for (label, x) in candidates {
        let p = Test::member(a, &x, premise, ctx)?;
        let tags = premise.iter().map(|t| t.label()).collect::<Vec<_>>().join(",");
        if ck.push(Info, format!("{label} satisfies {tags}"), p) {
            let t = Test::member(a, &x, &[P1, P2], ctx)?;
            ck.push(Conclusion, format!("{label} satisfies 1, 2"), t);
        }
    }
    Ok(())
}

pub(super) fn core_equations_imply_reflexive<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>, m: Option<&Matrix<T>>) -> Result<()> {
    ck.index_hypothesis("A", a)?;
    if let Some(m) = m {
        ck.weight_hypothesis("M", m);
    }
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let g = group(a)?.expect("index at most one");
    let aag = a * &g;
    let mut candidates = Vec::new();
    for (k, w) in ck.one_inverses(a, 5)?.into_iter().enumerate() {
        candidates.push((format!("A A# W with W in A{{1}} #{k}"), &aag * &w));
    }
    if let Some(c) = core_inverse(a)?.into_option() {
        candidates.push(("core inverse".into(), c));
    }
    if let Some(x) = m.map(|m| mcore(a, m)).transpose()?.flatten() {
        candidates.push(("cM(A)".into(), x));
    }
    check_implication(ck, a, candidates, &[P6, P7], &EquationContext::new())
}

pub(super) fn dual_equations_imply_reflexive<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>, nw: Option<&Matrix<T>>) -> Result<()> {
    ck.index_hypothesis("A", a)?;
    if let Some(nw) = nw {
        ck.weight_hypothesis("N", nw);
    }
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let g = group(a)?.expect("index at most one");
    let aag = a * &g;
    let mut candidates = Vec::new();
    for (k, w) in ck.one_inverses(a, 5)?.into_iter().enumerate() {
        candidates.push((format!("W A A# with W in A{{1}} #{k}"), &w * &aag));
    }
    let dual_core = crate::geninv::core_inverse(&a.adjoint())?.into_option().map(|c| c.adjoint());
    if let Some(d) = dual_core {
        candidates.push(("dual core inverse".into(), d));
    }
    if let Some(y) = nw.map(|nw| ndual(a, nw)).transpose()?.flatten() {
        candidates.push(("dN(A)".into(), y));
    }
    check_implication(ck, a, candidates, &[P8, P9], &EquationContext::new())
}

pub(super) fn m_core_alternative_reflexive<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>, m: &Matrix<T>) -> Result<()> {
    ck.weight_hypothesis("M", m);
    ck.index_hypothesis("A", a)?;
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let n = a.rows();
    let ctx = EquationContext::new().with_m(m);
    let x = mcore(a, m)?;
    // {2, 3M, 6} forces R(X) = R(A), so its solutions lie in this affine set.
    let relax = LinearSystem::new(n, n).equation(P3M, a, ctx)?.equation(P6, a, ctx)?.range_within(a)?.solve()?;
    match relax.dimension() {
        None => {
            ck.push(Conclusion, "no X satisfies 2, 3M, 6 and cM(A) does not exist", Test::flag(x.is_none()));
        }
        Some(0) => {
            let x0 = relax.particular.clone().expect("nonempty");
            if ck.push(Info, "the only candidate satisfies 2", Test::member(a, &x0, &[P2], &ctx)?) {
                ck.eq_opt(Conclusion, "the solution of 2, 3M, 6 is cM(A)", Some(&x0), x.as_ref());
            } else {
                ck.push(Conclusion, "no X satisfies 2, 3M, 6 and cM(A) does not exist", Test::flag(x.is_none()));
            }
        }
        Some(_) => {
            // A solution would be cM(A), and then the affine set is a point.
            ck.push(Conclusion, "no X satisfies 2, 3M, 6 and cM(A) does not exist", Test::flag(x.is_none()));
        }
    }
    Ok(())
}

pub(super) fn m_core_alternative_inner<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>, m: &Matrix<T>) -> Result<()> {
    ck.weight_hypothesis("M", m);
    ck.index_hypothesis("A", a)?;
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let n = a.rows();
    let ctx = EquationContext::new().with_m(m);
    let x = mcore(a, m)?;
    // 7 forces R(X) ⊆ R(A).
    let relax = LinearSystem::new(n, n).equation(P1, a, ctx)?.equation(P3M, a, ctx)?.range_within(a)?.solve()?;
    match relax.dimension() {
        None => {
            ck.push(Conclusion, "no X satisfies 1, 3M, 7 and cM(A) does not exist", Test::flag(x.is_none()));
        }
        Some(0) => {
            let x0 = relax.particular.clone().expect("nonempty");
            if ck.push(Info, "the only candidate satisfies 7", Test::member(a, &x0, &[P7], &ctx)?) {
                ck.eq_opt(Conclusion, "the solution of 1, 3M, 7 is cM(A)", Some(&x0), x.as_ref());
            } else {
                ck.push(Conclusion, "no X satisfies 1, 3M, 7 and cM(A) does not exist", Test::flag(x.is_none()));
            }
        }
        Some(_) => {
            ck.push(Conclusion, "the solutions of 1, 3M, 7 form a single point", Test::singleton(&relax));
        }
    }
    Ok(())
}

pub(super) fn duality_round_trip<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>, m: &Matrix<T>) -> Result<()> {
    ck.weight_hypothesis("M", m);
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let d = duality_transform(a, m)?;
    let x = mcore(a, m)?;
    let y = ndual(&d.b, m)?;
    ck.push(Equivalent, "cM(A) exists", Test::exists(x.as_ref()));
    ck.push(Equivalent, "dM(M^-1 A* M) exists", Test::exists(y.as_ref()));
    if let (Some(x), Some(y)) = (&x, &y) {
        let m_inv = inverse(m)?;
        ck.eq(Conclusion, "dM(M^-1 A* M) = M^-1 cM(A)* M", y, &(&(&m_inv * &x.adjoint()) * m));
        ck.eq(Conclusion, "pulling dM(M^-1 A* M) back gives cM(A)", &d.pullback(y), x);
    }
    Ok(())
}
