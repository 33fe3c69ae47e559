//! Elements of `Q[t]/(f)` for a squarefree `f`.
//!
//! When `f` is irreducible this is a number field. When it is not, every
//! computation is still valid factor by factor as long as only units are
//! inverted; a non-unit pivot is reported through
//! [`Field::zero_divisor_factor`] so the caller can split `f` and retry.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{Field, Q};
use super::upoly::UPoly;

#[derive(Debug, Clone)]
pub struct AlgNum {
    modulus: Option<Arc<UPoly>>,
    value: UPoly,
}

impl AlgNum {
    pub fn constant(c: Q) -> Self {
        AlgNum {
            modulus: None,
            value: UPoly::constant(c),
        }
    }

    /// The class of `t` modulo `modulus`.
    pub fn generator(modulus: &Arc<UPoly>) -> Self {
        AlgNum::from_poly(modulus, UPoly::var())
    }

    pub fn from_poly(modulus: &Arc<UPoly>, p: UPoly) -> Self {
        match modulus.degree() {
            None | Some(0) => return AlgNum::constant(p.coeff(0)),
            Some(1) => {
                let root = -modulus.coeff(0) / modulus.coeff(1);
                return AlgNum::constant(p.eval(&root));
            }
            _ => {}
        }
        AlgNum {
            value: p.rem(modulus),
            modulus: Some(modulus.clone()),
        }
    }

    pub fn modulus(&self) -> Option<&Arc<UPoly>> {
        self.modulus.as_ref()
    }

    /// Representative of degree below that of the modulus.
    pub fn value(&self) -> &UPoly {
        &self.value
    }

    /// The value when it is rational.
    pub fn as_rational(&self) -> Option<Q> {
        match self.value.degree() {
            None => Some(Q::from_integer(0.into())),
            Some(0) => Some(self.value.coeff(0)),
            _ => None,
        }
    }

    /// Re-reads this element modulo a factor of its modulus.
    pub fn reduce(&self, factor: &Arc<UPoly>) -> AlgNum {
        AlgNum::from_poly(factor, self.value.clone())
    }

    fn combine(&self, other: &AlgNum, value: UPoly) -> AlgNum {
        let modulus = match (&self.modulus, &other.modulus) {
            (Some(a), Some(b)) => {
                debug_assert!(Arc::ptr_eq(a, b) || a == b, "mixed moduli");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        };
        let value = match &modulus {
            Some(m) => value.rem(m),
            None => value,
        };
        AlgNum { modulus, value }
    }
}

impl PartialEq for AlgNum {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl Add for AlgNum {
    type Output = AlgNum;
    fn add(self, rhs: AlgNum) -> AlgNum {
        let v = self.value.add(&rhs.value);
        self.combine(&rhs, v)
    }
}

impl Sub for AlgNum {
    type Output = AlgNum;
    fn sub(self, rhs: AlgNum) -> AlgNum {
        let v = self.value.sub(&rhs.value);
        self.combine(&rhs, v)
    }
}

impl Mul for AlgNum {
    type Output = AlgNum;
    fn mul(self, rhs: AlgNum) -> AlgNum {
        let v = self.value.mul(&rhs.value);
        self.combine(&rhs, v)
    }
}

impl Neg for AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        AlgNum {
            value: UPoly::zero().sub(&self.value),
            modulus: self.modulus,
        }
    }
}

impl Field for AlgNum {
    fn zero() -> Self {
        AlgNum {
            modulus: None,
            value: UPoly::zero(),
        }
    }

    fn one() -> Self {
        AlgNum::constant(<Q as Field>::one())
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn inv(&self) -> Option<Self> {
        if self.value.is_zero() {
            return None;
        }
        match &self.modulus {
            None => Some(AlgNum::constant(self.value.coeff(0).recip())),
            Some(m) => {
                let (g, s) = self.value.gcd_cofactor(m);
                (g.degree() == Some(0)).then(|| AlgNum::from_poly(m, s))
            }
        }
    }

    fn from_q(value: &Q) -> Self {
        AlgNum::constant(value.clone())
    }

    fn zero_divisor_factor(&self) -> Option<UPoly> {
        let m = self.modulus.as_ref()?;
        if self.value.is_zero() {
            return None;
        }
        let g = self.value.gcd(m);
        (g.degree().unwrap_or(0) > 0 && g.degree() < m.degree()).then_some(g)
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "({})", self.value),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::field::q;

    fn sqrt2() -> AlgNum {
        let m = Arc::new(UPoly::new(vec![q(-2), q(0), q(1)]));
        AlgNum::generator(&m)
    }

    #[test]
    fn number_field_arithmetic() {
        let s = sqrt2();
        assert_eq!(s.clone() * s.clone(), AlgNum::from_i64(2));
        let a = s.clone() + AlgNum::from_i64(1);
        let inv = a.inv().unwrap();
        assert!((a * inv).is_one());
        assert_eq!(s.clone() - s, AlgNum::zero());
    }

    #[test]
    fn zero_divisors_are_detected() {
        let m = Arc::new(UPoly::new(vec![q(-1), q(0), q(1)]));
        let t = AlgNum::generator(&m);
        let z = t + AlgNum::from_i64(1);
        assert!(z.inv().is_none());
        assert_eq!(z.zero_divisor_factor(), Some(UPoly::new(vec![q(1), q(1)])));
    }
}
