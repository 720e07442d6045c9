use core::fmt::Debug;
use core::ops::Neg;

use num_bigint::BigInt;
use num_traits::{Num, ToPrimitive};
use twofloat::TwoFloat;

use crate::real::{Rational, Real};

/// Coefficient field of a [`TrigPoly`](super::TrigPoly).
///
/// Implemented for `f64`, double-double `TwoFloat` and exact [`Rational`]s;
/// the same operator code runs over all of them.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static {
    /// Whether arithmetic in this field is exact.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    /// Converts a parameter value into the field. Exact fields reject floats.
    fn from_real(v: &Real) -> Option<Self>;

    fn to_f64(&self) -> f64;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_real(v: &Real) -> Option<Self> {
        Some(v.to_f64())
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_real(v: &Real) -> Option<Self> {
        v.as_exact().cloned()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Double-double: about 32 significant digits, for measurements that would
/// otherwise sit on the `f64` rounding floor.
impl Scalar for TwoFloat {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        TwoFloat::from(v)
    }

    fn from_real(v: &Real) -> Option<Self> {
        match v {
            Real::Float(x) => Some(TwoFloat::from(*x)),
            Real::Exact(q) => {
                let num = ToPrimitive::to_f64(q.numer())?;
                let den = ToPrimitive::to_f64(q.denom())?;
                Some(TwoFloat::from(num) / TwoFloat::from(den))
            }
        }
    }

    fn to_f64(&self) -> f64 {
        self.hi() + self.lo()
    }
}
