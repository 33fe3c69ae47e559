//! Dense univariate polynomials over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Q;

/// Coefficients from the constant term upward, with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UPoly(Vec<Q>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: Q) -> Self {
        UPoly::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn var() -> Self {
        UPoly(vec![Q::zero(), Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.0.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.0.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let len = self.0.len().max(other.0.len());
        UPoly::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        let len = self.0.len().max(other.0.len());
        UPoly::new((0..len).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, s: &Q) -> UPoly {
        UPoly::new(self.0.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Q::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().recip();
        let mut rem = self.0.clone();
        let mut quot = vec![Q::zero(); self.0.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = &rem[top] * &lead_inv;
            if !c.is_zero() {
                for (i, d) in divisor.0.iter().enumerate() {
                    rem[top - dd + i] -= &c * d;
                }
                quot[top - dd] = c;
            }
            rem.pop();
        }
        (UPoly::new(quot), UPoly::new(rem))
    }

    pub fn rem(&self, divisor: &UPoly) -> UPoly {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s)` with `g = gcd(self, modulus)` monic and `s * self = g (mod modulus)`.
    pub fn gcd_cofactor(&self, modulus: &UPoly) -> (UPoly, UPoly) {
        let (mut r0, mut r1) = (modulus.clone(), self.rem(modulus));
        let (mut s0, mut s1) = (UPoly::zero(), UPoly::constant(Q::one()));
        while !r1.is_zero() {
            let (qt, r) = r0.div_rem(&r1);
            let s = s0.sub(&qt.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        let lc = r0.leading().recip();
        (r0.scale(&lc), s0.scale(&lc))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.0.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Approximate complex roots (Durand-Kerner), used only to propose exact candidates.
    pub fn approximate_roots(&self) -> Vec<Complex64> {
        let Some(d) = self.degree() else {
            return Vec::new();
        };
        if d == 0 {
            return Vec::new();
        }
        let m = self.monic().to_f64();
        let eval = |z: Complex64| m.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
        let bound = 1.0 + m[..d].iter().map(|c| c.abs()).fold(0.0, f64::max);
        let seed = Complex64::new(0.4, 0.9);
        let mut roots: Vec<Complex64> = (0..d).map(|i| seed.powu(i as u32) * (bound / 2.0)).collect();
        for _ in 0..500 {
            let mut delta = 0.0f64;
            for i in 0..d {
                let mut denom = Complex64::new(1.0, 0.0);
                for j in 0..d {
                    if i != j {
                        denom *= roots[i] - roots[j];
                    }
                }
                let step = eval(roots[i]) / denom;
                roots[i] -= step;
                delta = delta.max(step.norm());
            }
            if delta < 1e-15 * bound {
                break;
            }
        }
        roots
    }

    /// Scales to a primitive integer polynomial with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if self.leading().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    /// Factors a squarefree polynomial of degree at most 4 into monic irreducibles.
    ///
    /// Rational roots and quadratic factors are proposed from floating-point root
    /// approximations and accepted only after exact division. A factor that the
    /// approximation misses is returned unsplit, and callers detect it later as a
    /// zero divisor.
    pub fn factor_small(&self) -> Vec<UPoly> {
        let mut rest = self.monic();
        let mut out = Vec::new();
        if rest.degree().unwrap_or(0) == 0 {
            return out;
        }
        let lead = self.primitive_integer().last().cloned().unwrap_or_else(BigInt::one);
        let lead_q = Q::from_integer(lead.clone());
        for z in self.approximate_roots() {
            if z.im.abs() > 1e-6 * (1.0 + z.norm()) {
                continue;
            }
            let guess = (z.re * lead.to_f64().unwrap_or(1.0)).round();
            let Some(num) = BigInt::from_f64_checked(guess) else {
                continue;
            };
            let x = Q::from_integer(num) / &lead_q;
            if rest.degree().unwrap_or(0) > 0 && rest.eval(&x).is_zero() {
                let lin = UPoly::new(vec![-x, Q::one()]);
                rest = rest.div_rem(&lin).0;
                out.push(lin);
            }
        }
        if rest.degree() == Some(4) {
            if let Some((a, b)) = rest.split_quadratics() {
                out.push(a);
                out.push(b);
                rest = UPoly::constant(Q::one());
            }
        }
        if rest.degree().unwrap_or(0) > 0 {
            out.push(rest);
        }
        out.sort_by_key(|p| p.degree());
        out
    }

    fn split_quadratics(&self) -> Option<(UPoly, UPoly)> {
        let roots = self.approximate_roots();
        let lead = self.primitive_integer().last().cloned().unwrap_or_else(BigInt::one);
        let lf = lead.to_f64()?;
        let lead_q = Q::from_integer(lead);
        for (i, j) in [(0, 1), (0, 2), (0, 3)] {
            let s = roots[i] + roots[j];
            let p = roots[i] * roots[j];
            if s.im.abs() > 1e-6 * (1.0 + s.norm()) || p.im.abs() > 1e-6 * (1.0 + p.norm()) {
                continue;
            }
            let b = BigInt::from_f64_checked((-s.re * lf).round())?;
            let c = BigInt::from_f64_checked((p.re * lf * lf).round())?;
            let quad = UPoly::new(vec![
                Q::from_integer(c) / (&lead_q * &lead_q),
                Q::from_integer(b) / &lead_q,
                Q::one(),
            ]);
            let (qt, r) = self.div_rem(&quad);
            if r.is_zero() {
                return Some((quad, qt.monic()));
            }
        }
        None
    }
}

trait FromF64Checked: Sized {
    fn from_f64_checked(x: f64) -> Option<Self>;
}

impl FromF64Checked for BigInt {
    fn from_f64_checked(x: f64) -> Option<Self> {
        if x.is_finite() {
            num_traits::FromPrimitive::from_f64(x)
        } else {
            None
        }
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format!("{c}"),
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{i}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::field::q;

    fn p(v: &[i64]) -> UPoly {
        UPoly::new(v.iter().map(|&c| q(c)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (qt, r) = a.div_rem(&b);
        assert_eq!(qt, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(a.derivative(), p(&[0, 2]));
        assert_eq!(a.eval(&q(3)), q(8));
        assert!(a.is_squarefree());
        assert!(!p(&[1, 2, 1]).is_squarefree());
    }

    #[test]
    fn inverse_mod() {
        let f = p(&[-2, 0, 1]);
        let a = p(&[1, 1]);
        let (g, s) = a.gcd_cofactor(&f);
        assert_eq!(g, p(&[1]));
        assert_eq!(s.mul(&a).rem(&f), p(&[1]));
    }

    #[test]
    fn factoring() {
        // (t - 1/2)(t + 3)(t^2 - 2)
        let f = p(&[-1, 2])
            .mul(&p(&[3, 1]))
            .mul(&p(&[-2, 0, 1]));
        let fs = f.factor_small();
        assert_eq!(fs.len(), 3);
        assert_eq!(fs.iter().map(|x| x.degree().unwrap()).sum::<usize>(), 4);
        // (t^2 - 2)(t^2 + 3t + 5)
        let g = p(&[-2, 0, 1]).mul(&p(&[5, 3, 1]));
        let gs = g.factor_small();
        assert_eq!(gs.len(), 2);
        assert!(gs.contains(&p(&[-2, 0, 1])));
        // irreducible quartic
        assert_eq!(p(&[-3, 1, 0, 0, 1]).factor_small().len(), 1);
        assert_eq!(p(&[3, -1]).factor_small(), vec![p(&[-3, 1])]);
    }
}
