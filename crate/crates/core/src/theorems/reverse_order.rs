//! Reverse-order laws for the weighted core inverses.
//!
//! `cM(.)` is the M-weighted core inverse and `dN(.)` the N-weighted dual core inverse.

use crate::equations::{EquationContext, EquationTag};
use crate::error::Result;
use crate::geninv::index;
use crate::linalg::is_unitary;
use crate::matrix::Matrix;
use crate::scalar::Field;

use super::checks::{mcore, ndual, Checker, Test};
use super::ClauseRole::*;

fn exists_hypothesis<T: Field>(ck: &mut Checker<T>, name: &str, x: &Option<Matrix<T>>) -> bool {
    ck.push(Hypothesis, format!("{name} exists"), Test::exists(x.as_ref()))
}

pub(super) fn commuting_m_core<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>, b: &Matrix<T>, m: &Matrix<T>) -> Result<()> {
    ck.weight_hypothesis("M", m);
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let xa = mcore(a, m)?;
    let xb = mcore(b, m)?;
    exists_hypothesis(ck, "cM(A)", &xa);
    exists_hypothesis(ck, "cM(B)", &xb);
    let (Some(xa), Some(xb)) = (xa, xb) else {
        return Ok(());
    };
    ck.eq(Hypothesis, "cM(A) B = cM(B) A", &(&xa * b), &(&xb * a));
    ck.eq(Hypothesis, "A cM(A) = B cM(A)", &(a * &xa), &(b * &xa));
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let xab = mcore(&(a * b), m)?;
    let prod = &xb * &xa;
    let sq = &xa * &xa;
    ck.eq_opt(Conclusion, "cM(AB) = cM(B) cM(A)", xab.as_ref(), Some(&prod));
    ck.eq(Conclusion, "cM(B) cM(A) = cM(A)^2", &prod, &sq);
    ck.eq_opt(Conclusion, "cM(A)^2 = cM(A^2)", Some(&sq), mcore(&(a * a), m)?.as_ref());
    Ok(())
}

pub(super) fn commuting_n_dual<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>, b: &Matrix<T>, nw: &Matrix<T>) -> Result<()> {
    ck.weight_hypothesis("N", nw);
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let ya = ndual(a, nw)?;
    let yb = ndual(b, nw)?;
    exists_hypothesis(ck, "dN(A)", &ya);
    exists_hypothesis(ck, "dN(B)", &yb);
    let (Some(ya), Some(yb)) = (ya, yb) else {
        return Ok(());
    };
    ck.eq(Hypothesis, "A dN(B) = B dN(A)", &(a * &yb), &(b * &ya));
    ck.eq(Hypothesis, "dN(B) B = dN(B) A", &(&yb * b), &(&yb * a));
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let yab = ndual(&(a * b), nw)?;
    let prod = &yb * &ya;
    let sq = &yb * &yb;
    ck.eq_opt(Conclusion, "dN(AB) = dN(B) dN(A)", yab.as_ref(), Some(&prod));
    ck.eq(Conclusion, "dN(B) dN(A) = dN(B)^2", &prod, &sq);
    ck.eq_opt(Conclusion, "dN(B)^2 = dN(B^2)", Some(&sq), ndual(&(b * b), nw)?.as_ref());
    Ok(())
}

pub(super) fn necessary_conditions<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>, b: &Matrix<T>, m: &Matrix<T>) -> Result<()> {
    ck.weight_hypothesis("M", m);
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let ab = a * b;
    let xa = mcore(a, m)?;
    let xb = mcore(b, m)?;
    let xab = mcore(&ab, m)?;
    exists_hypothesis(ck, "cM(A)", &xa);
    exists_hypothesis(ck, "cM(B)", &xb);
    exists_hypothesis(ck, "cM(AB)", &xab);
    let (Some(xa), Some(xb), Some(xab)) = (xa, xb, xab) else {
        return Ok(());
    };
    let prod = &xb * &xa;
    ck.eq(Hypothesis, "cM(AB) = cM(B) cM(A)", &xab, &prod);
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let tol = ck.tol_for(&[&xa, &xb]);
    let ba = b * a;
    ck.push(Conclusion, "(a) R(cM(B) A) ⊆ R(AB)", Test::range_in(&(&xb * a), &ab, tol)?);
    ck.push(Conclusion, "(a) R(AB) ⊆ R(BA)", Test::range_in(&ab, &ba, tol)?);
    let c = &ab * &xb;
    let z = b * &prod;
    let ctx = EquationContext::new().with_m(m);
    let t = Test::member(&c, &z, &[EquationTag::P3M, EquationTag::P6], &ctx)?;
    ck.push(Conclusion, "(b) B cM(B) cM(A) lies in C{3M,6} for C = AB cM(B)", t);
    Ok(())
}

fn index_at_most_one<T: Field>(x: &Matrix<T>) -> Result<bool> {
    Ok(index(x)?.k <= 1)
}

pub(super) fn left_absorbing<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>, b: &Matrix<T>, m: &Matrix<T>) -> Result<()> {
    ck.weight_hypothesis("M", m);
    ck.index_hypothesis("A", a)?;
    ck.index_hypothesis("B", b)?;
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    ck.eq(Hypothesis, "A^2 = BA", &(a * a), &(b * a));
    let xa = mcore(a, m)?;
    let xb = mcore(b, m)?;
    exists_hypothesis(ck, "cM(A)", &xa);
    exists_hypothesis(ck, "cM(B)", &xb);
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let (xa, xb) = (xa.expect("checked"), xb.expect("checked"));
    let ab = a * b;
    ck.push(Conclusion, "(a) ind(AB) <= 1", Test::flag(index_at_most_one(&ab)?));
    ck.eq_opt(Conclusion, "(b) cM(AB) = cM(B) cM(A)", mcore(&ab, m)?.as_ref(), Some(&(&xb * &xa)));
    Ok(())
}

pub(super) fn right_absorbing<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>, b: &Matrix<T>, nw: &Matrix<T>) -> Result<()> {
    ck.weight_hypothesis("N", nw);
    ck.index_hypothesis("A", a)?;
    ck.index_hypothesis("B", b)?;
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    ck.eq(Hypothesis, "B^2 = BA", &(b * b), &(b * a));
    let ya = ndual(a, nw)?;
    let yb = ndual(b, nw)?;
    exists_hypothesis(ck, "dN(A)", &ya);
    exists_hypothesis(ck, "dN(B)", &yb);
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let (ya, yb) = (ya.expect("checked"), yb.expect("checked"));
    let ab = a * b;
    ck.push(Conclusion, "(a) ind(AB) <= 1", Test::flag(index_at_most_one(&ab)?));
    ck.eq_opt(Conclusion, "(b) dN(AB) = dN(B) dN(A)", ndual(&ab, nw)?.as_ref(), Some(&(&yb * &ya)));
    Ok(())
}

pub(super) fn unitary_factor<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>, b: &Matrix<T>, m: &Matrix<T>) -> Result<()> {
    let ab = a * b;
    ck.weight_hypothesis("M", m);
    ck.index_hypothesis("A", a)?;
    ck.index_hypothesis("B", b)?;
    ck.index_hypothesis("AB", &ab)?;
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let xa = mcore(a, m)?;
    exists_hypothesis(ck, "cM(A)", &xa);
    let Some(xa) = xa else {
        return Ok(());
    };
    let tol = ck.tol_for(&[&xa]);
    let part_a = if is_unitary(b) {
        Test::range_in(&(&b.adjoint() * &xa), &xa, tol)?
    } else {
        Test::fail(Some(&(&b.adjoint() * b) - &Matrix::identity(b.rows())))
    };
    let part_b = if is_unitary(a) {
        Test::range_in(a, b, tol)?
    } else {
        Test::fail(Some(&(&a.adjoint() * a) - &Matrix::identity(a.rows())))
    };
    let xab = mcore(&ab, m)?;
    if ck.push(Alternative, "(a) B is unitary and R(B* cM(A)) ⊆ R(cM(A))", part_a) {
        ck.eq_opt(Conclusion, "(a) cM(AB) = B* cM(A)", xab.as_ref(), Some(&(&b.adjoint() * &xa)));
    }
    if ck.push(Alternative, "(b) A is unitary and R(A) ⊆ R(B)", part_b) {
        let rhs = mcore(b, m)?.map(|xb| &xb * &a.adjoint());
        ck.eq_opt(Conclusion, "(b) cM(AB) = cM(B) A*", xab.as_ref(), rhs.as_ref());
    }
    Ok(())
}

pub(super) fn range_characterization<T: Field>(ck: &mut Checker<T>, a: &Matrix<T>, b: &Matrix<T>, m: &Matrix<T>) -> Result<()> {
    let ab = a * b;
    ck.weight_hypothesis("M", m);
    ck.index_hypothesis("A", a)?;
    ck.index_hypothesis("B", b)?;
    ck.index_hypothesis("AB", &ab)?;
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let xa = mcore(a, m)?;
    let xb = mcore(b, m)?;
    let xab = mcore(&ab, m)?;
    exists_hypothesis(ck, "cM(A)", &xa);
    exists_hypothesis(ck, "cM(B)", &xb);
    exists_hypothesis(ck, "cM(AB)", &xab);
    let tol = ck.tol;
    let ah = a.adjoint();
    let amb = &(&ah * m) * b;
    let mba = &(m * b) * &ah;
    let t = Test::range_in(&amb, &mba, tol)?.and(Test::range_in(&mba, &amb, tol)?);
    ck.push(Hypothesis, "R(A* M B) = R(M B A*)", t);
    if !ck.hypotheses_hold() {
        return Ok(());
    }
    let (xa, xb, xab) = (xa.expect("checked"), xb.expect("checked"), xab.expect("checked"));
    let tol = ck.tol_for(&[&xa, &xb, &xab]);
    let prod = &xb * &xa;
    ck.eq(Equivalent, "cM(AB) = cM(B) cM(A)", &xab, &prod);
    let ba = b * a;
    let range_chain = Test::range_in(&(&xb * a), &ab, tol)?.and(Test::range_in(&ab, &ba, tol)?);
    let pa = a * &xa;
    let pb = b * &xb;
    let weighted = Test::eq(&(&(m * &pb) * &pa), &(&(m * &pa) * &pb), tol);
    let plain = Test::eq(&(&pb * &pa), &(&pa * &pb), tol);
    ck.push(
        Equivalent,
        "(a) R(cM(B) A) ⊆ R(AB) ⊆ R(BA), and (b) M B cM(B) A cM(A) = M A cM(A) B cM(B) or B cM(B) A cM(A) = A cM(A) B cM(B)",
        range_chain.and(weighted.or(plain)),
    );
    Ok(())
}
