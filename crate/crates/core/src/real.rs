//! Real parameters that stay exact when they can.
//!
//! Equation parameters and every quantity derived from them in the
//! metricity procedures are carried as [`Real`]: an exact rational when
//! the inputs allow it, a binary double otherwise. Arithmetic between two
//! exact values stays exact; anything touching a float becomes a float.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational used by every exact code path.
pub type Rational = BigRational;

#[derive(Clone, Debug)]
pub enum Real {
    Exact(Rational),
    Float(f64),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRealError {
    #[error("empty number")]
    Empty,
    #[error("malformed number `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("non-finite number `{0}`")]
    NonFinite(String),
}

impl Real {
    pub fn int(v: i64) -> Self {
        Real::Exact(Rational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Real::Exact(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero() -> Self {
        Real::int(0)
    }

    pub fn one() -> Self {
        Real::int(1)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Real::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Real::Exact(q) => Some(q),
            Real::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Real::Float(x) => *x,
        }
    }

    /// Converts to the floating representation, dropping exactness.
    pub fn to_float(&self) -> Real {
        Real::Float(self.to_f64())
    }

    /// Exact rational of a finite double (every finite double is rational).
    pub fn exact_from_f64(x: f64) -> Option<Real> {
        Rational::from_float(x).map(Real::Exact)
    }

    /// The integer value, if this is an exact integer or an integral float.
    pub fn as_integer(&self) -> Option<i64> {
        match self {
            Real::Exact(q) if q.is_integer() => q.to_integer().to_i64(),
            Real::Exact(_) => None,
            Real::Float(x) => {
                if x.is_finite() && libm::trunc(*x) == *x && x.abs() < 9.0e15 {
                    Some(*x as i64)
                } else {
                    None
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Real::Exact(q) => q.is_zero(),
            Real::Float(x) => *x == 0.0,
        }
    }

    pub fn abs(&self) -> Real {
        match self {
            Real::Exact(q) => Real::Exact(q.abs()),
            Real::Float(x) => Real::Float(x.abs()),
        }
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self {
            Real::Exact(q) => {
                if q.is_zero() {
                    0
                } else if q.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Real::Float(x) => {
                if *x == 0.0 {
                    0
                } else if *x > 0.0 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Real::Exact(_) => true,
            Real::Float(x) => x.is_finite(),
        }
    }

    /// Integer power; exact for exact bases (a zero base with a negative
    /// exponent yields an infinite float).
    pub fn powi(&self, n: i64) -> Real {
        match self {
            Real::Exact(q) => {
                if n < 0 && q.is_zero() {
                    return Real::Float(f64::INFINITY);
                }
                let mag = rational_pow(q, n.unsigned_abs());
                if n < 0 {
                    Real::Exact(mag.recip())
                } else {
                    Real::Exact(mag)
                }
            }
            Real::Float(x) => Real::Float(libm::pow(*x, n as f64)),
        }
    }

    /// `self^exponent`; exact when the base is exact and the exponent is an
    /// exact integer.
    pub fn pow(&self, exponent: &Real) -> Real {
        match (self, exponent) {
            (Real::Exact(_), Real::Exact(e)) if e.is_integer() => match e.to_integer().to_i64() {
                Some(n) => self.powi(n),
                None => Real::Float(libm::pow(self.to_f64(), exponent.to_f64())),
            },
            _ => Real::Float(libm::pow(self.to_f64(), exponent.to_f64())),
        }
    }

    /// Square root; exact when the argument is the square of a rational.
    pub fn sqrt(&self) -> Real {
        if let Real::Exact(q) = self {
            if !q.is_negative() {
                let (n, d) = (q.numer(), q.denom());
                let (rn, rd) = (n.sqrt(), d.sqrt());
                if &(&rn * &rn) == n && &(&rd * &rd) == d {
                    return Real::Exact(Rational::new(rn, rd));
                }
            }
        }
        Real::Float(libm::sqrt(self.to_f64()))
    }

    pub fn checked_div(&self, rhs: &Real) -> Option<Real> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }

    /// Exact comparison for two exact values, float comparison otherwise.
    pub fn partial_cmp_real(&self, other: &Real) -> Option<Ordering> {
        match (self, other) {
            (Real::Exact(x), Real::Exact(y)) => Some(x.cmp(y)),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }

    /// Parses integers (`-3`), fractions (`-5/4`) and decimals with an
    /// optional exponent (`0.06`, `1e-3`) into exact rationals.
    pub fn parse_exact(s: &str) -> Result<Real, ParseRealError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRealError::Empty);
        }
        if let Some((n, d)) = s.split_once('/') {
            let num = parse_decimal(n.trim()).ok_or_else(|| ParseRealError::Malformed(s.to_string()))?;
            let den = parse_decimal(d.trim()).ok_or_else(|| ParseRealError::Malformed(s.to_string()))?;
            if den.is_zero() {
                return Err(ParseRealError::ZeroDenominator(s.to_string()));
            }
            return Ok(Real::Exact(num / den));
        }
        parse_decimal(s)
            .map(Real::Exact)
            .ok_or_else(|| ParseRealError::Malformed(s.to_string()))
    }

    /// Parses like [`Real::parse_exact`] and rounds to a double.
    pub fn parse_float(s: &str) -> Result<Real, ParseRealError> {
        let x = Real::parse_exact(s)?.to_f64();
        if x.is_finite() {
            Ok(Real::Float(x))
        } else {
            Err(ParseRealError::NonFinite(s.to_string()))
        }
    }
}

fn rational_pow(q: &Rational, n: u64) -> Rational {
    let mut result = Rational::one();
    let mut base = q.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = &result * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    result
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut all = String::with_capacity(int_part.len() + frac_part.len());
    all.push_str(int_part);
    all.push_str(frac_part);
    let mut numer = BigInt::from_str(&all).ok()?;
    if negative {
        numer = -numer;
    }
    let scale = exponent as i64 - frac_part.len() as i64;
    if scale.unsigned_abs() > 4096 {
        return None;
    }
    let ten = Rational::from_integer(BigInt::from(10));
    let factor = rational_pow(&ten, scale.unsigned_abs());
    let value = Rational::from_integer(numer);
    Some(if scale >= 0 { value * factor } else { value / factor })
}

impl FromStr for Real {
    type Err = ParseRealError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Real::parse_exact(s)
    }
}

impl From<f64> for Real {
    fn from(x: f64) -> Self {
        Real::Float(x)
    }
}

impl From<i64> for Real {
    fn from(v: i64) -> Self {
        Real::int(v)
    }
}

impl From<Rational> for Real {
    fn from(q: Rational) -> Self {
        Real::Exact(q)
    }
}

/// Exact values print as `p` or `p/q`; floats use the shortest
/// round-trip decimal form.
impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Real::Float(x) => write!(f, "{x:?}"),
        }
    }
}

/// Two values are equal when they denote the same number, regardless of
/// representation.
impl PartialEq for Real {
    fn eq(&self, other: &Real) -> bool {
        match (self, other) {
            (Real::Exact(x), Real::Exact(y)) => x == y,
            (Real::Exact(x), Real::Float(y)) | (Real::Float(y), Real::Exact(x)) => {
                Rational::from_float(*y).is_some_and(|fy| &fy == x)
            }
            (Real::Float(x), Real::Float(y)) => x == y,
        }
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Real) -> Option<Ordering> {
        self.partial_cmp_real(other)
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                match (self, rhs) {
                    (Real::Exact(x), Real::Exact(y)) => Real::Exact(x $op y),
                    _ => Real::Float(self.to_f64() $op rhs.to_f64()),
                }
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                &self $op &rhs
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                &self $op rhs
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self $op &rhs
            }
        }
    };
}

real_binop!(Add, add, +);
real_binop!(Sub, sub, -);
real_binop!(Mul, mul, *);

impl Div<&Real> for &Real {
    type Output = Real;
    /// Exact division by an exact zero degrades to a float infinity/NaN.
    fn div(self, rhs: &Real) -> Real {
        match (self, rhs) {
            (Real::Exact(x), Real::Exact(y)) if !y.is_zero() => Real::Exact(x / y),
            _ => Real::Float(self.to_f64() / rhs.to_f64()),
        }
    }
}

impl Div<Real> for Real {
    type Output = Real;
    fn div(self, rhs: Real) -> Real {
        &self / &rhs
    }
}

impl Div<&Real> for Real {
    type Output = Real;
    fn div(self, rhs: &Real) -> Real {
        &self / rhs
    }
}

impl Div<Real> for &Real {
    type Output = Real;
    fn div(self, rhs: Real) -> Real {
        self / &rhs
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        match self {
            Real::Exact(q) => Real::Exact(-q),
            Real::Float(x) => Real::Float(-x),
        }
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        self.clone().neg()
    }
}
