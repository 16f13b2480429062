//! Instance-wise conformance checks for the weighted core results and the
//! reverse-order laws.
//!
//! Every check instantiates each clause of a statement on concrete inputs and
//! evaluates it exactly (or within the float tolerance). Clause roles decide
//! the verdict:
//!
//! * `Hypothesis`: all must hold, otherwise the verdict is `HypothesisNotMet`
//! * `Alternative`: at least one must hold, otherwise `HypothesisNotMet`
//! * `Equivalent`: all must share one truth value, otherwise `Fail`
//! * `Conclusion`: must hold, otherwise `Fail`
//! * `Info`: reported only
//!
//! A false clause always carries a nonzero witness matrix.

mod checks;
mod characterization;
mod identities;
mod reverse_order;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GeninvError, Result};
use crate::io::digest;
use crate::matrix::Matrix;
use crate::scalar::Field;

pub use characterization::{is_weighted_ep, WeightedEpReport};
pub(crate) use checks::{mcore, ndual, Checker};

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    T3_7,
    T3_9,
    T3_13,
    T3_14,
    T3_15,
    T3_16cor,
    T3_17,
    T3_18,
    T3_19,
    ROL4_1,
    ROL4_2,
    ROL4_3,
    ROL4_4,
    ROL4_5,
    ROL4_6,
    ROL4_7,
    L2_6,
    C2_7,
    P3_2,
    P3_5,
    P3_11,
    P3_12,
    L3_8,
}

/// Which matrices a check reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Signature {
    A,
    AM,
    AN,
    AMN,
    ABM,
    ABN,
}

impl TheoremId {
    pub const ALL: [TheoremId; 23] = [
        TheoremId::T3_7,
        TheoremId::T3_9,
        TheoremId::T3_13,
        TheoremId::T3_14,
        TheoremId::T3_15,
        TheoremId::T3_16cor,
        TheoremId::T3_17,
        TheoremId::T3_18,
        TheoremId::T3_19,
        TheoremId::ROL4_1,
        TheoremId::ROL4_2,
        TheoremId::ROL4_3,
        TheoremId::ROL4_4,
        TheoremId::ROL4_5,
        TheoremId::ROL4_6,
        TheoremId::ROL4_7,
        TheoremId::L2_6,
        TheoremId::C2_7,
        TheoremId::P3_2,
        TheoremId::P3_5,
        TheoremId::P3_11,
        TheoremId::P3_12,
        TheoremId::L3_8,
    ];

    pub fn signature(self) -> Signature {
        use TheoremId::*;
        match self {
            L2_6 | C2_7 | P3_2 | P3_5 => Signature::A,
            T3_7 | T3_14 | T3_17 | P3_11 | P3_12 | L3_8 => Signature::AM,
            T3_9 | T3_15 => Signature::AN,
            T3_13 | T3_16cor | T3_18 | T3_19 => Signature::AMN,
            ROL4_2 | ROL4_5 => Signature::ABN,
            ROL4_1 | ROL4_3 | ROL4_4 | ROL4_6 | ROL4_7 => Signature::ABM,
        }
    }

    pub fn is_reverse_order_law(self) -> bool {
        matches!(self.signature(), Signature::ABM | Signature::ABN)
    }

    pub fn name(self) -> &'static str {
        use TheoremId::*;
        match self {
            T3_7 => "T3_7",
            T3_9 => "T3_9",
            T3_13 => "T3_13",
            T3_14 => "T3_14",
            T3_15 => "T3_15",
            T3_16cor => "T3_16cor",
            T3_17 => "T3_17",
            T3_18 => "T3_18",
            T3_19 => "T3_19",
            ROL4_1 => "ROL4_1",
            ROL4_2 => "ROL4_2",
            ROL4_3 => "ROL4_3",
            ROL4_4 => "ROL4_4",
            ROL4_5 => "ROL4_5",
            ROL4_6 => "ROL4_6",
            ROL4_7 => "ROL4_7",
            L2_6 => "L2_6",
            C2_7 => "C2_7",
            P3_2 => "P3_2",
            P3_5 => "P3_5",
            P3_11 => "P3_11",
            P3_12 => "P3_12",
            L3_8 => "L3_8",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = GeninvError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        TheoremId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(t))
            .ok_or_else(|| GeninvError::UnknownTheorem(t.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremInputs<T> {
    pub a: Matrix<T>,
    pub b: Option<Matrix<T>>,
    pub m: Option<Matrix<T>>,
    pub n: Option<Matrix<T>>,
}

impl<T: Field> TheoremInputs<T> {
    pub fn new(a: Matrix<T>) -> Self {
        TheoremInputs { a, b: None, m: None, n: None }
    }

    pub fn with_b(mut self, b: Matrix<T>) -> Self {
        self.b = Some(b);
        self
    }

    pub fn with_m(mut self, m: Matrix<T>) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_n(mut self, n: Matrix<T>) -> Self {
        self.n = Some(n);
        self
    }

    pub fn named(&self) -> Vec<(&'static str, &Matrix<T>)> {
        let mut v = vec![("A", &self.a)];
        for (name, m) in [("B", &self.b), ("M", &self.m), ("N", &self.n)] {
            if let Some(m) = m {
                v.push((name, m));
            }
        }
        v
    }

    /// SHA-256 over the canonical serialization of the present inputs.
    pub fn digest(&self) -> String {
        digest(&self.named())
    }

    fn validate(&self, id: TheoremId) -> Result<()> {
        let (need_b, need_m, need_n) = match id.signature() {
            Signature::A => (false, false, false),
            Signature::AM => (false, true, false),
            Signature::AN => (false, false, true),
            Signature::AMN => (false, true, true),
            Signature::ABM => (true, true, false),
            Signature::ABN => (true, false, true),
        };
        // The unweighted implication checks also accept an optional weight.
        let (opt_m, opt_n) = match id {
            TheoremId::P3_2 => (true, false),
            TheoremId::P3_5 => (false, true),
            _ => (false, false),
        };
        let check = |name: &str, present: bool, needed: bool, optional: bool| -> Result<()> {
            match (present, needed || optional) {
                (false, _) if needed => Err(GeninvError::MalformedInputs(format!("{id} requires {name}"))),
                (true, false) => Err(GeninvError::MalformedInputs(format!("{id} does not take {name}"))),
                _ => Ok(()),
            }
        };
        check("B", self.b.is_some(), need_b, false)?;
        check("M", self.m.is_some(), need_m, opt_m)?;
        check("N", self.n.is_some(), need_n, opt_n)?;
        let (r, c) = self.a.shape();
        if r != c || r == 0 {
            return Err(GeninvError::MalformedInputs(format!("A must be square and nonempty, got {r}x{c}")));
        }
        for (name, m) in self.named() {
            if m.shape() != (r, r) {
                return Err(GeninvError::MalformedInputs(format!(
                    "{name} is {}x{}, expected {r}x{r}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClauseRole {
    Hypothesis,
    Alternative,
    Equivalent,
    Conclusion,
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Field", deserialize = "T: Field"))]
pub struct Clause<T> {
    pub name: String,
    pub role: ClauseRole,
    pub holds: bool,
    /// Nonzero matrix exhibiting the failure of a false clause.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Matrix<T>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
    HypothesisNotMet,
    InterpretationNote,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", bound(serialize = "T: Field", deserialize = "T: Field"))]
pub struct VerificationReport<T> {
    pub theorem: TheoremId,
    pub instance_digest: String,
    pub clauses: Vec<Clause<T>>,
    pub verdict: Verdict,
    /// How literal readings of the statement were resolved on this instance.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl<T> VerificationReport<T> {
    pub fn failed_clauses(&self) -> impl Iterator<Item = &Clause<T>> {
        self.clauses.iter().filter(|c| !c.holds)
    }

    pub fn hypothesis_met(&self) -> bool {
        self.verdict != Verdict::HypothesisNotMet
    }
}

pub(crate) fn decide<T>(clauses: &[Clause<T>]) -> Verdict {
    let of = |role| clauses.iter().filter(move |c: &&Clause<T>| c.role == role);
    if of(ClauseRole::Hypothesis).any(|c| !c.holds) {
        return Verdict::HypothesisNotMet;
    }
    if of(ClauseRole::Alternative).count() > 0 && !of(ClauseRole::Alternative).any(|c| c.holds) {
        return Verdict::HypothesisNotMet;
    }
    let mut eq = of(ClauseRole::Equivalent).map(|c| c.holds);
    if let Some(first) = eq.next() {
        if eq.any(|h| h != first) {
            return Verdict::Fail;
        }
    }
    if of(ClauseRole::Conclusion).any(|c| !c.holds) {
        return Verdict::Fail;
    }
    Verdict::Pass
}

/// Evaluation settings for floating-point scalars; ignored in exact arithmetic.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct VerifyOptions {
    /// Fixed tolerance for matrix comparisons instead of `2^-30 (1 + scale)`.
    pub tolerance: Option<f64>,
}

/// Check one statement on one instance.
pub fn verify_theorem<T: Field>(id: TheoremId, inputs: &TheoremInputs<T>) -> Result<VerificationReport<T>> {
    verify_theorem_with(id, inputs, VerifyOptions::default())
}

pub fn verify_theorem_with<T: Field>(
    id: TheoremId,
    inputs: &TheoremInputs<T>,
    options: VerifyOptions,
) -> Result<VerificationReport<T>> {
    inputs.validate(id)?;
    let digest = inputs.digest();
    let mut ck = Checker::new(inputs, &digest, options.tolerance);
    let a = &inputs.a;
    let b = || inputs.b.as_ref().expect("validated");
    let m = || inputs.m.as_ref().expect("validated");
    let n = || inputs.n.as_ref().expect("validated");
    use TheoremId::*;
    match id {
        T3_7 => characterization::m_core_characterization(&mut ck, a, m())?,
        T3_9 => characterization::n_dual_characterization(&mut ck, a, n())?,
        T3_13 => characterization::weighted_mp_existence(&mut ck, a, m(), n())?,
        T3_17 => characterization::weighted_ep_single_weight(&mut ck, a, m())?,
        T3_18 => characterization::weighted_ep_two_weights(&mut ck, a, m(), n())?,
        T3_19 => characterization::weighted_ep_definite(&mut ck, a, m(), n())?,
        T3_14 => identities::m_core_identities(&mut ck, a, m())?,
        T3_15 => identities::n_dual_identities(&mut ck, a, n())?,
        T3_16cor => identities::group_weighted_mp(&mut ck, a, m(), n())?,
        L2_6 => identities::group_existence(&mut ck, a)?,
        C2_7 => identities::group_representations(&mut ck, a)?,
        P3_2 => identities::core_equations_imply_reflexive(&mut ck, a, inputs.m.as_ref())?,
        P3_5 => identities::dual_equations_imply_reflexive(&mut ck, a, inputs.n.as_ref())?,
        P3_11 => identities::m_core_alternative_reflexive(&mut ck, a, m())?,
        P3_12 => identities::m_core_alternative_inner(&mut ck, a, m())?,
        L3_8 => identities::duality_round_trip(&mut ck, a, m())?,
        ROL4_1 => reverse_order::commuting_m_core(&mut ck, a, b(), m())?,
        ROL4_2 => reverse_order::commuting_n_dual(&mut ck, a, b(), n())?,
        ROL4_3 => reverse_order::necessary_conditions(&mut ck, a, b(), m())?,
        ROL4_4 => reverse_order::left_absorbing(&mut ck, a, b(), m())?,
        ROL4_5 => reverse_order::right_absorbing(&mut ck, a, b(), n())?,
        ROL4_6 => reverse_order::unitary_factor(&mut ck, a, b(), m())?,
        ROL4_7 => reverse_order::range_characterization(&mut ck, a, b(), m())?,
    }
    Ok(ck.finish(id, digest))
}

/// Check a reverse-order law on `(A, B)` with the weight it uses (`M`, or `N`
/// for `ROL4_2` and `ROL4_5`).
pub fn verify_reverse_order_law<T: Field>(
    id: TheoremId,
    a: &Matrix<T>,
    b: &Matrix<T>,
    weight: &Matrix<T>,
) -> Result<VerificationReport<T>> {
    if !id.is_reverse_order_law() {
        return Err(GeninvError::UnknownTheorem(format!("{id} is not a reverse-order law")));
    }
    let inputs = TheoremInputs::new(a.clone()).with_b(b.clone());
    let inputs = match id.signature() {
        Signature::ABN => inputs.with_n(weight.clone()),
        _ => inputs.with_m(weight.clone()),
    };
    verify_theorem(id, &inputs)
}
