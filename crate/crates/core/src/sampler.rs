//! Seeded generators of structured exact instances.
//!
//! Every generator is a pure function of its sample spec and seed: the same inputs
//! give bitwise identical matrices.

use serde::{Deserialize, Serialize};

use crate::error::{GeninvError, Result};
use crate::geninv::{group_inverse, index};
use crate::linalg::{inverse, is_invertible, is_positive_definite, is_unitary};
use crate::matrix::Matrix;
use crate::rng::Rng;
use crate::scalar::GaussRat;
use crate::theorems::{mcore as mcore_exact, ndual as ndual_exact, verify_reverse_order_law, Signature, TheoremId, TheoremInputs, Verdict};

type Q = Matrix<GaussRat>;

pub const DEFAULT_ENTRY_BOUND: i64 = 3;
pub const DEFAULT_ATTEMPT_CAP: usize = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SampleKind {
    /// `S diag(C, 0) S^-1` with `C` invertible of size `r`.
    IndexOne,
    /// `B + B*`, sometimes shifted by a rational multiple of `I`.
    HermitianInvertible,
    /// `B* B + I`.
    PositiveDefinite,
    /// Products of signed permutations and Pythagorean plane rotations.
    RationalUnitary,
    /// Products of elementary matrices.
    Invertible,
    /// `S diag(C, J) S^-1` with `J` a single nilpotent Jordan block of size `n - r`.
    HigherIndex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SampleSpec {
    pub n: usize,
    /// Target rank for `IndexOne` and `HigherIndex`; ignored otherwise.
    pub r: usize,
    pub seed: u64,
    pub entry_bound: i64,
    pub kind: SampleKind,
    /// Draw Gaussian-rational entries instead of real ones.
    #[serde(default)]
    pub complex: bool,
}

impl SampleSpec {
    pub fn new(kind: SampleKind, n: usize, seed: u64) -> Self {
        SampleSpec { n, r: n, seed, entry_bound: DEFAULT_ENTRY_BOUND, kind, complex: false }
    }

    pub fn with_rank(mut self, r: usize) -> Self {
        self.r = r;
        self
    }

    pub fn with_entry_bound(mut self, bound: i64) -> Self {
        self.entry_bound = bound;
        self
    }

    pub fn with_complex(mut self, complex: bool) -> Self {
        self.complex = complex;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(GeninvError::InvalidSpec("n must be positive".into()));
        }
        if self.r > self.n {
            return Err(GeninvError::InvalidSpec(format!("rank {} exceeds n = {}", self.r, self.n)));
        }
        if self.entry_bound < 1 {
            return Err(GeninvError::InvalidSpec("entry bound must be at least 1".into()));
        }
        if self.kind == SampleKind::HigherIndex && self.r + 2 > self.n {
            return Err(GeninvError::InvalidSpec("index at least 2 needs r <= n - 2".into()));
        }
        Ok(())
    }
}

pub fn sample(spec: &SampleSpec) -> Result<Q> {
    spec.validate()?;
    let mut g = Gen { rng: Rng::new(spec.seed), bound: spec.entry_bound, complex: spec.complex };
    let n = spec.n;
    let out = match spec.kind {
        SampleKind::IndexOne => g.index_one(n, spec.r).0,
        SampleKind::HigherIndex => g.higher_index(n, spec.r),
        SampleKind::HermitianInvertible => g.hermitian_invertible(n)?,
        SampleKind::PositiveDefinite => g.positive_definite(n),
        SampleKind::RationalUnitary => g.unitary(n),
        SampleKind::Invertible => g.invertible(n),
    };
    Ok(out)
}

struct Gen {
    rng: Rng,
    bound: i64,
    complex: bool,
}

fn q(v: i64) -> GaussRat {
    GaussRat::from_int(v)
}

fn block_diag(a: &Q, b: &Q) -> Q {
    let n = a.rows() + b.rows();
    let mut out = Q::zeros(n, n);
    out = out.with_block(0, 0, a);
    out.with_block(a.rows(), a.rows(), b)
}

impl Gen {
    fn scalar(&mut self) -> GaussRat {
        self.rng.scalar(self.bound, self.complex)
    }

    fn nonzero(&mut self) -> GaussRat {
        let re = self.rng.nonzero_rational(self.bound);
        if self.complex && self.rng.chance(1, 2) {
            GaussRat::new(re, self.rng.rational(self.bound))
        } else {
            GaussRat::real(re)
        }
    }

    fn dense(&mut self, rows: usize, cols: usize) -> Q {
        self.rng.matrix(rows, cols, self.bound, self.complex)
    }

    fn invertible(&mut self, n: usize) -> Q {
        let mut m = Q::identity(n);
        for _ in 0..3 * n {
            let op = if n < 2 { 1 } else { self.rng.below(3) };
            match op {
                0 => {
                    let i = self.rng.below(n);
                    let j = (i + 1 + self.rng.below(n - 1)) % n;
                    let c = self.scalar();
                    for col in 0..n {
                        let v = m.get(i, col).clone() + &(c.clone() * m.get(j, col));
                        m.set(i, col, v);
                    }
                }
                1 => {
                    let i = self.rng.below(n);
                    let c = self.nonzero();
                    for col in 0..n {
                        let v = m.get(i, col).clone() * &c;
                        m.set(i, col, v);
                    }
                }
                _ => {
                    let i = self.rng.below(n);
                    let j = (i + 1 + self.rng.below(n - 1)) % n;
                    m.swap_rows(i, j);
                }
            }
        }
        m
    }

    /// `(S diag(C, 0) S^-1, S)`.
    fn index_one(&mut self, n: usize, r: usize) -> (Q, Q) {
        let s = self.invertible(n);
        let c = self.invertible(r.max(1));
        let core = if r == 0 { Q::zeros(n, n) } else { block_diag(&c, &Q::zeros(n - r, n - r)) };
        let a = &(&s * &core) * &inverse(&s).expect("invertible by construction");
        (a, s)
    }

    fn higher_index(&mut self, n: usize, r: usize) -> Q {
        let s = self.invertible(n);
        let k = n - r;
        let j = Q::from_fn(k, k, |i, jj| if jj == i + 1 { q(1) } else { q(0) });
        let core = if r == 0 { j } else { block_diag(&self.invertible(r), &j) };
        &(&s * &core) * &inverse(&s).expect("invertible by construction")
    }

    fn hermitian_invertible(&mut self, n: usize) -> Result<Q> {
        for _ in 0..DEFAULT_ATTEMPT_CAP {
            let b = self.dense(n, n);
            let mut h = &b + &b.adjoint();
            if self.rng.chance(1, 3) {
                let c = GaussRat::real(self.rng.rational(self.bound));
                h = &h - &Q::identity(n).scale(&c);
            }
            if is_invertible(&h) {
                return Ok(h);
            }
        }
        Err(GeninvError::InvalidSpec("no invertible Hermitian sample within the attempt cap".into()))
    }

    fn positive_definite(&mut self, n: usize) -> Q {
        let b = self.dense(n, n);
        &(&b.adjoint() * &b) + &Q::identity(n)
    }

    fn signed_permutation(&mut self, n: usize) -> Q {
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, self.rng.below(i + 1));
        }
        let signs: Vec<i64> = (0..n).map(|_| if self.rng.chance(1, 2) { -1 } else { 1 }).collect();
        Q::from_fn(n, n, |i, j| if perm[i] == j { q(signs[i]) } else { q(0) })
    }

    fn rotation(&mut self, n: usize) -> Q {
        const TRIPLES: [(i64, i64, i64); 3] = [(3, 4, 5), (5, 12, 13), (8, 15, 17)];
        let (a, b, c) = TRIPLES[self.rng.below(TRIPLES.len())];
        let s = if self.rng.chance(1, 2) { -1 } else { 1 };
        let i = self.rng.below(n);
        let j = (i + 1 + self.rng.below(n - 1)) % n;
        let mut g = Q::identity(n);
        g.set(i, i, GaussRat::ratio(a, c));
        g.set(i, j, GaussRat::ratio(-s * b, c));
        g.set(j, i, GaussRat::ratio(s * b, c));
        g.set(j, j, GaussRat::ratio(a, c));
        g
    }

    fn unitary(&mut self, n: usize) -> Q {
        let mut u = self.signed_permutation(n);
        for _ in 0..n + 1 {
            let f = if n >= 2 && self.rng.chance(2, 3) { self.rotation(n) } else { self.signed_permutation(n) };
            u = &u * &f;
        }
        if self.complex {
            // Unit-modulus Gaussian rational phase on one coordinate.
            let i = self.rng.below(n);
            let mut d = Q::identity(n);
            d.set(i, i, GaussRat::complex((3, 5), (4, 5)));
            u = &u * &d;
        }
        u
    }

    fn hermitian_diag(&mut self, k: usize, definite: bool) -> Q {
        let mut d = Q::zeros(k, k);
        for i in 0..k {
            let mut v = self.rng.nonzero_rational(self.bound);
            if definite && v < num_traits::Zero::zero() {
                v = -v;
            }
            d.set(i, i, GaussRat::real(v));
        }
        d
    }

    /// Hermitian invertible `D`: definite, or a random congruence of an indefinite diagonal.
    fn hermitian_block(&mut self, k: usize, definite: bool) -> Q {
        if k == 0 {
            return Q::zeros(0, 0);
        }
        let d = self.hermitian_diag(k, definite);
        let p = self.invertible(k);
        &(&p.adjoint() * &d) * &p
    }

    /// `S^-* D S^-1` with `D = blockdiag(D1, D2)` split at `r`: then `M A A#`
    /// is Hermitian for `A = S diag(C, 0) S^-1`.
    fn adapted_weight(&mut self, s: &Q, r: usize, definite: bool) -> Q {
        let n = s.rows();
        let d1 = self.hermitian_block(r, definite);
        let d2 = self.hermitian_block(n - r, definite);
        let d = if r == 0 {
            d2
        } else if r == n {
            d1
        } else {
            block_diag(&d1, &d2)
        };
        congruence(s, &d)
    }

    /// `S^-* D S^-1` where `D` pairs coordinate `0` with coordinate `r` hyperbolically,
    /// so both diagonal blocks of `D` are singular and `A{1,3M}`, `A{1,4M}` are empty.
    fn degenerate_weight(&mut self, s: &Q, r: usize) -> Option<Q> {
        let n = s.rows();
        if r == 0 || r == n {
            return None;
        }
        let mut d = self.hermitian_diag(n, false);
        d.set(0, 0, q(0));
        d.set(r, r, q(0));
        d.set(0, r, q(1));
        d.set(r, 0, q(1));
        Some(congruence(s, &d))
    }
}

fn congruence(s: &Q, d: &Q) -> Q {
    let si = inverse(s).expect("invertible by construction");
    &(&si.adjoint() * d) * &si
}

/// How a weight relates to the sampled matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightKind {
    PositiveDefinite,
    Indefinite,
    /// Block-adapted to the range/null space split of `A`; makes `A` weighted-EP.
    Adapted,
    /// Degenerate on the range of `A`, so the weighted classes are empty.
    Degenerate,
}

/// Which weight families an instance sampler may draw.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeightMix {
    /// Positive definite, indefinite, adapted and degenerate weights.
    #[default]
    Mixed,
    /// Positive definite only (plain or adapted).
    PositiveDefinite,
    /// Hermitian invertible without the adapted or degenerate constructions.
    Generic,
}

/// A sampled theorem instance with the construction that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub inputs: TheoremInputs<GaussRat>,
    pub rank: usize,
    pub weights: Vec<WeightKind>,
    pub complex: bool,
}

impl Gen {
    fn weight(&mut self, s: &Q, r: usize, mix: WeightMix) -> Result<(Q, WeightKind)> {
        let n = s.rows();
        let roll = self.rng.below(20);
        let kind = match mix {
            WeightMix::PositiveDefinite => {
                if roll < 10 {
                    WeightKind::PositiveDefinite
                } else {
                    WeightKind::Adapted
                }
            }
            WeightMix::Generic => {
                if roll < 10 {
                    WeightKind::PositiveDefinite
                } else {
                    WeightKind::Indefinite
                }
            }
            WeightMix::Mixed => match roll {
                0..=5 => WeightKind::PositiveDefinite,
                6..=11 => WeightKind::Indefinite,
                12..=16 => WeightKind::Adapted,
                _ => WeightKind::Degenerate,
            },
        };
        let definite = mix == WeightMix::PositiveDefinite;
        Ok(match kind {
            WeightKind::PositiveDefinite => (self.positive_definite(n), kind),
            WeightKind::Indefinite => (self.hermitian_invertible(n)?, kind),
            WeightKind::Adapted => (self.adapted_weight(s, r, definite), kind),
            WeightKind::Degenerate => match self.degenerate_weight(s, r) {
                Some(w) => (w, kind),
                None => (self.hermitian_invertible(n)?, WeightKind::Indefinite),
            },
        })
    }
}

/// Random instance for a non reverse-order statement: an index-one matrix of
/// uniformly drawn rank (occasionally a higher-index one) with weights as
/// required by the statement's signature.
pub fn sample_instance(id: TheoremId, n: usize, seed: u64, entry_bound: i64, mix: WeightMix) -> Result<Instance> {
    if id.is_reverse_order_law() {
        return Err(GeninvError::InvalidSpec(format!("{id} takes pairs; use sample_rol_pair")));
    }
    if n == 0 || entry_bound < 1 {
        return Err(GeninvError::InvalidSpec("n and the entry bound must be positive".into()));
    }
    let complex = Rng::new(seed ^ 0xC0).chance(1, 4);
    let mut g = Gen { rng: Rng::new(seed), bound: entry_bound, complex };
    let r = g.rng.below(n + 1);
    let (a, s) = if n >= 3 && r + 2 <= n && g.rng.chance(1, 8) {
        let s = g.invertible(n);
        (g.higher_index(n, r), s)
    } else {
        g.index_one(n, r)
    };
    let mix = if id == TheoremId::T3_19 { WeightMix::PositiveDefinite } else { mix };
    let mut inputs = TheoremInputs::new(a);
    let mut weights = Vec::new();
    let sig = id.signature();
    if matches!(sig, Signature::AM | Signature::AMN) {
        let (m, k) = g.weight(&s, r, mix)?;
        inputs = inputs.with_m(m);
        weights.push(k);
    }
    if matches!(sig, Signature::AN | Signature::AMN) {
        let (w, k) = g.weight(&s, r, mix)?;
        inputs = inputs.with_n(w);
        weights.push(k);
    }
    Ok(Instance { inputs, rank: r, weights, complex })
}

/// Pair `(A, B)` with weight satisfying the hypotheses of a reverse-order law.
#[derive(Clone, Debug, PartialEq)]
pub struct RolPair {
    pub a: Q,
    pub b: Q,
    pub weight: Q,
    /// Candidates drawn before one satisfied the hypotheses.
    pub attempts: usize,
}

/// Constructive where the hypotheses allow it, rejection sampling otherwise;
/// every released pair has passed the hypothesis clauses of `id`.
pub fn sample_rol_pair(id: TheoremId, n: usize, seed: u64) -> Result<RolPair> {
    sample_rol_pair_with(id, n, seed, DEFAULT_ENTRY_BOUND, DEFAULT_ATTEMPT_CAP)
}

pub fn sample_rol_pair_with(id: TheoremId, n: usize, seed: u64, entry_bound: i64, cap: usize) -> Result<RolPair> {
    if !id.is_reverse_order_law() {
        return Err(GeninvError::InvalidSpec(format!("{id} is not a reverse-order law")));
    }
    if n == 0 || entry_bound < 1 {
        return Err(GeninvError::InvalidSpec("n and the entry bound must be positive".into()));
    }
    let mut g = Gen { rng: Rng::new(seed), bound: entry_bound, complex: false };
    for attempt in 1..=cap {
        let Some((a, b, weight)) = g.rol_candidate(id, n)? else {
            continue;
        };
        let report = verify_reverse_order_law(id, &a, &b, &weight)?;
        if report.verdict != Verdict::HypothesisNotMet {
            return Ok(RolPair { a, b, weight, attempts: attempt });
        }
    }
    Err(GeninvError::HypothesisSamplingExhausted { attempts: cap })
}

impl Gen {
    fn rank(&mut self, n: usize) -> usize {
        self.rng.below(n + 1)
    }

    fn rol_candidate(&mut self, id: TheoremId, n: usize) -> Result<Option<(Q, Q, Q)>> {
        use TheoremId::*;
        let i = Q::identity(n);
        Ok(match id {
            ROL4_4 => {
                let r = self.rank(n);
                let (a, s) = self.index_one(n, r);
                let g = group_inverse(&a)?.into_option().expect("index one");
                let z = self.split_perturbation(&s, r);
                let b = &(&(&a * &a) * &g) + &(&z * &(&i - &(&a * &g)));
                Some((a, b, self.positive_definite(n)))
            }
            ROL4_5 => {
                let r = self.rank(n);
                let (b, s) = self.index_one(n, r);
                let g = group_inverse(&b)?.into_option().expect("index one");
                let z = self.split_perturbation(&s, r);
                let a = &b + &(&(&i - &(&b * &g)) * &z);
                Some((a, b, self.positive_definite(n)))
            }
            ROL4_1 => {
                let r = self.rank(n);
                let (a, s) = self.index_one(n, r);
                let m = if self.rng.chance(1, 2) { self.adapted_weight(&s, r, true) } else { self.positive_definite(n) };
                let Some(xa) = mcore_exact(&a, &m)? else { return Ok(None) };
                let g = group_inverse(&a)?.into_option().expect("index one");
                let off = &i - &(&a * &g);
                let w = self.dense(n, n);
                let b = match self.rng.below(4) {
                    0 => a.clone(),
                    1 => &a + &(&(&(&i - &(&a * &xa)) * &w) * &off),
                    2 => &a + &(&(&off * &w) * &off),
                    _ => self.polynomial(&a),
                };
                Some((a, b, m))
            }
            ROL4_2 => {
                let r = self.rank(n);
                let (b, s) = self.index_one(n, r);
                let nw = if self.rng.chance(1, 2) { self.adapted_weight(&s, r, true) } else { self.positive_definite(n) };
                let Some(yb) = ndual_exact(&b, &nw)? else { return Ok(None) };
                let g = group_inverse(&b)?.into_option().expect("index one");
                let off = &i - &(&b * &g);
                let w = self.dense(n, n);
                let a = match self.rng.below(4) {
                    0 => b.clone(),
                    1 => &b + &(&(&off * &w) * &(&i - &(&yb * &b))),
                    2 => &b + &(&(&off * &w) * &off),
                    _ => self.polynomial(&b),
                };
                Some((a, b, nw))
            }
            ROL4_3 => {
                let r = self.rank(n);
                let (a, _) = self.index_one(n, r);
                let m = self.positive_definite(n);
                let b = match self.rng.below(3) {
                    0 => {
                        let g = group_inverse(&a)?.into_option().expect("index one");
                        let z = self.dense(n, n);
                        &(&(&a * &a) * &g) + &(&z * &(&i - &(&a * &g)))
                    }
                    1 => self.polynomial(&a),
                    _ => {
                        let rb = self.rank(n);
                        self.index_one(n, rb).0
                    }
                };
                Some((a, b, m))
            }
            ROL4_6 => {
                let m = self.positive_definite(n);
                if self.rng.chance(1, 2) {
                    // R(A) = V span(e_1..e_r) is invariant under B* = V blockdiag(U1, U2)* V*.
                    let r = self.rank(n);
                    let v = self.unitary(n);
                    let mut core = Q::zeros(n, n);
                    if r > 0 {
                        core = core.with_block(0, 0, &self.invertible(r));
                        if r < n {
                            core = core.with_block(0, r, &self.dense(r, n - r));
                        }
                    }
                    let u = match r {
                        0 => self.unitary(n),
                        _ if r == n => self.unitary(n),
                        _ => block_diag(&self.unitary(r), &self.unitary(n - r)),
                    };
                    let a = &(&v * &core) * &v.adjoint();
                    let b = &(&v * &u) * &v.adjoint();
                    Some((a, b, m))
                } else {
                    Some((self.unitary(n), self.invertible(n), m))
                }
            }
            ROL4_7 => {
                let m_pd;
                let (a, b) = match self.rng.below(3) {
                    0 => {
                        // S = V L with V unitary and L diagonal: all products reduce to diagonals.
                        let v = self.unitary(n);
                        let l = Q::diag(&(0..n).map(|_| GaussRat::real(self.rng.nonzero_rational(self.bound))).collect::<Vec<_>>());
                        let s = &v * &l;
                        let si = inverse(&s).expect("invertible");
                        let mut diag = || {
                            Q::diag(&(0..n).map(|_| if self.rng.chance(1, 3) { q(0) } else { self.nonzero() }).collect::<Vec<_>>())
                        };
                        let (da, db) = (diag(), diag());
                        let d = self.hermitian_diag(n, true);
                        m_pd = congruence(&s, &d);
                        (&(&s * &da) * &si, &(&s * &db) * &si)
                    }
                    1 => {
                        m_pd = self.positive_definite(n);
                        (self.invertible(n), self.invertible(n))
                    }
                    _ => {
                        let r = self.rank(n);
                        let (a, _) = self.index_one(n, r);
                        let g = group_inverse(&a)?.into_option().expect("index one");
                        let z = self.dense(n, n);
                        m_pd = self.positive_definite(n);
                        let b = &(&(&a * &a) * &g) + &(&z * &(&i - &(&a * &g)));
                        (a, b)
                    }
                };
                Some((a, b, m_pd))
            }
            _ => unreachable!("checked by caller"),
        })
    }

    /// `S Z' S^-1` for a random `Z'` whose trailing `(n-r)` block is itself index one.
    ///
    /// For `A = S diag(C, 0) S^-1` the matrix `A + Z(I - AA#)` is then
    /// `S [[C, Z12], [0, Z22]] S^-1` (or its lower-triangular mirror for
    /// `A + (I - AA#)Z`), whose index equals that of `Z22`.
    fn split_perturbation(&mut self, s: &Q, r: usize) -> Q {
        let n = s.rows();
        let mut z = self.dense(n, n);
        if r < n {
            let k = n - r;
            let rk = self.rank(k);
            z = z.with_block(r, r, &self.index_one(k, rk).0);
        }
        &(s * &z) * &inverse(s).expect("invertible by construction")
    }

    /// `c0 I + c1 A + c2 A^2` with small integer coefficients.
    fn polynomial(&mut self, a: &Q) -> Q {
        let n = a.rows();
        let c: Vec<GaussRat> = (0..3).map(|_| q(self.rng.range(-2, 2))).collect();
        let a2 = a * a;
        &(&Q::identity(n).scale(&c[0]) + &a.scale(&c[1])) + &a2.scale(&c[2])
    }
}

/// Validators used by the sampler tests and the suite: every generator output
/// is re-checked by an independent predicate.
pub fn validate_sample(spec: &SampleSpec, m: &Q) -> Result<bool> {
    Ok(match spec.kind {
        SampleKind::IndexOne => {
            let ix = index(m)?;
            ix.k <= 1 && ix.rank_chain[1] == spec.r
        }
        SampleKind::HigherIndex => index(m)?.k == spec.n - spec.r && crate::linalg::rank(m) == spec.n - 1,
        SampleKind::HermitianInvertible => m.is_hermitian(0.0) && is_invertible(m),
        SampleKind::PositiveDefinite => is_positive_definite(m),
        SampleKind::RationalUnitary => is_unitary(m),
        SampleKind::Invertible => is_invertible(m),
    })
}
