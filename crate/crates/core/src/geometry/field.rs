use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::upoly::UPoly;

/// Exact rationals.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Exact scalars for the linear algebra. `inv` returns `None` for zero and
/// for zero divisors (which only arise in a non-field quotient ring).
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn from_q(value: &Q) -> Self;

    fn from_i64(value: i64) -> Self {
        Self::from_q(&q(value))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// For a nonzero non-unit, a proper factor of the modulus it exposes.
    fn zero_divisor_factor(&self) -> Option<UPoly> {
        None
    }
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn from_q(value: &Q) -> Self {
        value.clone()
    }
}
