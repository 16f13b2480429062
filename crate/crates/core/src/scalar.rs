//! Scalar fields the matrix kernel is generic over.
//!
//! The exact field is [`GaussRat`], complex numbers with arbitrary precision
//! rational real and imaginary parts. `Complex64` and `f64` implement the same
//! trait so every algorithm can also run in binary64 with tolerances.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::GeninvError;

/// Element type of a [`Matrix`](crate::Matrix).
///
/// Reference arithmetic (`T op &T`) is required so the kernels can avoid
/// cloning big rationals in inner loops.
pub trait Field:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'r> Add<&'r Self, Output = Self>
    + for<'r> Sub<&'r Self, Output = Self>
    + for<'r> Mul<&'r Self, Output = Self>
    + for<'r> Div<&'r Self, Output = Self>
{
    /// Whether equality tests are exact (no tolerance).
    const EXACT: bool;
    /// Whether the field carries an imaginary part.
    const COMPLEX: bool;

    fn conj(&self) -> Self;
    /// Real part, embedded back into the field.
    fn re_part(&self) -> Self;
    /// Imaginary part as a real number embedded into the field.
    fn im_part(&self) -> Self;
    /// The imaginary unit, `None` for real fields.
    fn imag_unit() -> Option<Self>;
    fn from_i64(v: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_exact(v: &GaussRat) -> Self;
    fn modulus(&self) -> f64;
    /// `true` when the value is zero, exactly or within `tol`.
    fn is_negligible(&self, tol: f64) -> bool;
    /// `true` when the value is real and strictly positive.
    fn is_real_positive(&self, tol: f64) -> bool;
    /// Canonical `[re, im]` strings used by the file formats.
    fn to_part_strings(&self) -> [String; 2];

    /// Threshold below which a pivot candidate counts as zero.
    fn pivot_tolerance(scale: f64, dim: usize) -> f64 {
        if Self::EXACT {
            0.0
        } else {
            (dim.max(1) as f64) * 1.0e3 * f64::EPSILON * (1.0 + scale)
        }
    }

    /// Residual tolerance `2^-30 * (1 + scale)` in floating mode, zero otherwise.
    fn residual_tolerance(scale: f64) -> f64 {
        if Self::EXACT {
            0.0
        } else {
            (1.0 + scale) * 2f64.powi(-30)
        }
    }
}

/// Exact complex number `re + i im` over the rationals.
///
/// Both parts are kept in lowest terms with a positive denominator, which
/// `BigRational` guarantees after every operation, so structural equality is
/// value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    re: BigRational,
    im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat { re, im: BigRational::zero() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(v)))
    }

    /// `num/den + i*0`; panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn complex(re: (i64, i64), im: (i64, i64)) -> Self {
        GaussRat {
            re: BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
            im: BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Parses a `[re, im]` pair where each part is `"p"`, `"p/q"` or a decimal.
    pub fn parse_parts(re: &str, im: &str) -> Result<Self, GeninvError> {
        Ok(GaussRat { re: parse_rational(re)?, im: parse_rational(im)? })
    }

    /// Largest absolute numerator or denominator across both parts, in bits.
    pub fn bit_size(&self) -> u64 {
        [self.re.numer(), self.re.denom(), self.im.numer(), self.im.denom()]
            .iter()
            .map(|v| v.bits())
            .max()
            .unwrap_or(0)
    }
}

/// Lowest-terms string: `"p"` for integers, `"p/q"` otherwise.
pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"`, `"p/q"`, or an exact decimal such as `"-0.25"` or `"1.5e-3"`.
pub fn parse_rational(s: &str) -> Result<BigRational, GeninvError> {
    let t = s.trim();
    let bad = || GeninvError::Parse(format!("invalid rational literal {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(GeninvError::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = t[pos + 1..].parse().map_err(|_| bad())?;
            (&t[..pos], e)
        }
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer = BigInt::from_str(&all_digits).map_err(|_| bad())?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = rational_to_string(&self.re);
        if self.im.is_zero() {
            return write!(f, "{re}");
        }
        let im = rational_to_string(&self.im.abs());
        let sign = if self.im.is_negative() { '-' } else { '+' };
        if self.re.is_zero() {
            let lead = if self.im.is_negative() { "-" } else { "" };
            write!(f, "{lead}{im}i")
        } else {
            write!(f, "{re}{sign}{im}i")
        }
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::real(BigRational::one())
    }
}

impl Add<&GaussRat> for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: self.re + &rhs.re, im: self.im + &rhs.im }
    }
}

impl Sub<&GaussRat> for GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: self.re - &rhs.re, im: self.im - &rhs.im }
    }
}

impl Mul<&GaussRat> for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRat::real(self.re * &rhs.re);
        }
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = self.re * &rhs.im + self.im * &rhs.re;
        GaussRat { re, im }
    }
}

impl Div<&GaussRat> for GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: &GaussRat) -> GaussRat {
        assert!(!rhs.is_zero(), "division by zero");
        if rhs.im.is_zero() {
            return GaussRat { re: self.re / &rhs.re, im: self.im / &rhs.re };
        }
        let d = rhs.norm_sqr();
        let num = self * &rhs.conj_ref();
        GaussRat { re: num.re / &d, im: num.im / d }
    }
}

impl GaussRat {
    fn conj_ref(&self) -> GaussRat {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }
}

macro_rules! forward_by_value {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: GaussRat) -> GaussRat {
                $tr::$m(self, &rhs)
            }
        }
    )*};
}
forward_by_value!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re, im: -self.im }
    }
}

impl Field for GaussRat {
    const EXACT: bool = true;
    const COMPLEX: bool = true;

    fn conj(&self) -> Self {
        self.conj_ref()
    }
    fn re_part(&self) -> Self {
        GaussRat::real(self.re.clone())
    }
    fn im_part(&self) -> Self {
        GaussRat::real(self.im.clone())
    }
    fn imag_unit() -> Option<Self> {
        Some(GaussRat { re: BigRational::zero(), im: BigRational::one() })
    }
    fn from_i64(v: i64) -> Self {
        GaussRat::from_int(v)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        GaussRat::ratio(num, den)
    }
    fn from_exact(v: &GaussRat) -> Self {
        v.clone()
    }
    fn modulus(&self) -> f64 {
        let re = self.re.to_f64().unwrap_or(f64::INFINITY);
        let im = self.im.to_f64().unwrap_or(f64::INFINITY);
        re.hypot(im)
    }
    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
    fn is_real_positive(&self, _tol: f64) -> bool {
        self.im.is_zero() && self.re.is_positive()
    }
    fn to_part_strings(&self) -> [String; 2] {
        [rational_to_string(&self.re), rational_to_string(&self.im)]
    }
}

impl Field for Complex64 {
    const EXACT: bool = false;
    const COMPLEX: bool = true;

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn re_part(&self) -> Self {
        Complex64::new(self.re, 0.0)
    }
    fn im_part(&self) -> Self {
        Complex64::new(self.im, 0.0)
    }
    fn imag_unit() -> Option<Self> {
        Some(Complex64::i())
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }
    fn from_exact(v: &GaussRat) -> Self {
        Complex64::new(
            v.re.to_f64().unwrap_or(f64::NAN),
            v.im.to_f64().unwrap_or(f64::NAN),
        )
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
    fn is_negligible(&self, tol: f64) -> bool {
        self.norm() <= tol
    }
    fn is_real_positive(&self, tol: f64) -> bool {
        self.im.abs() <= tol && self.re > tol
    }
    fn to_part_strings(&self) -> [String; 2] {
        [format!("{}", self.re), format!("{}", self.im)]
    }
}

impl Field for f64 {
    const EXACT: bool = false;
    const COMPLEX: bool = false;

    fn conj(&self) -> Self {
        *self
    }
    fn re_part(&self) -> Self {
        *self
    }
    fn im_part(&self) -> Self {
        0.0
    }
    fn imag_unit() -> Option<Self> {
        None
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn from_exact(v: &GaussRat) -> Self {
        v.re.to_f64().unwrap_or(f64::NAN)
    }
    fn modulus(&self) -> f64 {
        self.abs()
    }
    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }
    fn is_real_positive(&self, tol: f64) -> bool {
        *self > tol
    }
    fn to_part_strings(&self) -> [String; 2] {
        [format!("{self}"), "0".to_string()]
    }
}

/// Parses a `[re, im]` string pair into any field by way of the exact value.
pub fn parse_entry<T: Field>(re: &str, im: &str) -> Result<T, GeninvError> {
    GaussRat::parse_parts(re, im).map(|v| T::from_exact(&v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parts_stay_in_lowest_terms() {
        let a = GaussRat::complex((2, 4), (-3, -9));
        assert_eq!(a.re(), &q(1, 2));
        assert_eq!(a.im(), &q(1, 3));
        let b = a.clone() * &a.conj();
        assert_eq!(b, GaussRat::ratio(13, 36));
        assert!(b.re().denom() > &BigInt::zero());
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = GaussRat::complex((3, 5), (-4, 5));
        let b = GaussRat::complex((1, 2), (7, 3));
        let c = a.clone() * &b;
        assert_eq!(c / &b, a);
    }

    #[test]
    fn decimal_strings_parse_exactly() {
        assert_eq!(parse_rational("0.5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-0.3").unwrap(), q(-3, 10));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert_eq!(parse_rational("6/-4").unwrap(), q(-3, 2));
        assert_eq!(parse_rational("1.25e2").unwrap(), q(125, 1));
        assert_eq!(parse_rational("2e-3").unwrap(), q(1, 500));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(GaussRat::ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(GaussRat::complex((0, 1), (-2, 1)).to_string(), "-2i");
        assert_eq!(GaussRat::complex((1, 1), (1, 3)).to_string(), "1+1/3i");
        assert_eq!(GaussRat::ratio(3, 6).to_part_strings(), ["1/2".to_string(), "0".to_string()]);
    }

    #[test]
    fn float_tolerances() {
        assert_eq!(GaussRat::residual_tolerance(10.0), 0.0);
        let t = <Complex64 as Field>::residual_tolerance(1.0);
        assert_eq!(t, 2.0 * 2f64.powi(-30));
        assert!(Complex64::new(1e-12, 0.0).is_negligible(t));
    }
}
