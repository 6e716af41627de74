//! Coefficient fields usable by the series engine.
//!
//! Everything above this module is generic over [`Scalar`]. The exact
//! pipeline (builders, Wronskians, certification, the CLI) is instantiated at
//! [`Rational`](crate::Rational); the floating-point impls exist for quick
//! numerical exploration and carry rounding error like any float code.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// A field of series coefficients.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// The element `num / den`; `den` is nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_rational(r: &BigRational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    /// Exact rational value, when the field has one.
    fn to_rational(&self) -> Option<BigRational>;

    /// Whether the field is exact, i.e. zero tests are meaningful.
    const EXACT: bool;
}

impl Scalar for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    const EXACT: bool = true;
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }

    const EXACT: bool = false;
}

impl Scalar for f32 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f32 / den as f32
    }

    fn from_rational(r: &BigRational) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }

    fn to_rational(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }

    const EXACT: bool = false;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_is_reduced() {
        let r = BigRational::from_ratio(6, -4);
        assert_eq!(r, BigRational::new(BigInt::from(-3), BigInt::from(2)));
        assert!(r.denom() > &BigInt::zero());
    }

    #[test]
    fn float_conversions() {
        assert_eq!(f64::from_ratio(1, 4), 0.25);
        assert_eq!(f32::from_int(-3), -3.0);
        let half = BigRational::from_ratio(1, 2);
        assert_eq!(f64::from_rational(&half), 0.5);
    }
}
