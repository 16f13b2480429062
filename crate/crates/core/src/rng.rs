//! Seeded random stream used by the samplers.
//!
//! The engine is SplitMix64: state `s += 0x9E3779B97F4A7C15`, output
//! `z = s; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9; z = (z ^ (z >> 27)) * 0x94D049BB133111EB; z ^ (z >> 31)`.
//! Bounded integers are drawn as `lo + word % (hi - lo + 1)`, and child seeds
//! as the first word of a stream seeded with `parent ^ (tag * 0x9E3779B97F4A7C15)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::matrix::Matrix;
use crate::scalar::GaussRat;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

pub struct Rng(SplitMix64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform-ish integer in `lo..=hi` (modulo reduction, as documented).
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi, "empty range");
        let span = (hi - lo) as u64 + 1;
        lo + (self.next_u64() % span) as i64
    }

    /// Index in `0..n`.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "empty choice");
        (self.next_u64() % n as u64) as usize
    }

    /// `true` with probability `num / den`.
    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.next_u64() % den < num
    }

    /// `p/q` with `|p| <= bound`, `1 <= q <= bound`.
    pub fn rational(&mut self, bound: i64) -> BigRational {
        let p = self.range(-bound, bound);
        let q = self.range(1, bound);
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    pub fn nonzero_rational(&mut self, bound: i64) -> BigRational {
        let p = self.range(1, bound) * if self.chance(1, 2) { -1 } else { 1 };
        let q = self.range(1, bound);
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    pub fn scalar(&mut self, bound: i64, complex: bool) -> GaussRat {
        let re = self.rational(bound);
        if complex {
            GaussRat::new(re, self.rational(bound))
        } else {
            GaussRat::real(re)
        }
    }

    pub fn matrix(&mut self, rows: usize, cols: usize, bound: i64, complex: bool) -> Matrix<GaussRat> {
        Matrix::from_fn(rows, cols, |_, _| self.scalar(bound, complex))
    }

    /// Small integer matrix, used for perturbations.
    pub fn int_matrix(&mut self, rows: usize, cols: usize, bound: i64) -> Matrix<GaussRat> {
        Matrix::from_fn(rows, cols, |_, _| GaussRat::from_int(self.range(-bound, bound)))
    }
}

pub fn derive_seed(parent: u64, tag: u64) -> u64 {
    Rng::new(parent ^ tag.wrapping_mul(GOLDEN)).next_u64()
}

/// Seed derived from a hex digest (its first 16 hex digits).
pub fn seed_from_digest(digest: &str) -> u64 {
    u64::from_str_radix(&digest[..16.min(digest.len())], 16).unwrap_or(0)
}
