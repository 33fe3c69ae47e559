//! Schubert-class arithmetic: the Pieri-type products by special classes,
//! the Poincaré duality pairing and triple-intersection numbers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::shapes::{ShapeError, SignedSequence, SkewShape, StrictPartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Odd orthogonal, classes `P_lambda`.
    B,
    /// Symplectic, classes `Q_lambda`.
    C,
}

impl Family {
    pub fn symbol(self) -> char {
        match self {
            Family::B => 'P',
            Family::C => 'Q',
        }
    }
}

impl FromStr for Family {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            other => Err(RingError::UnknownFamily(other.to_string())),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::B => write!(f, "B"),
            Family::C => write!(f, "C"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("m = {m} is outside 1..={n}")]
    MOutOfRange { m: usize, n: usize },
    #[error("codim(lambda) = {lambda} but codim(mu) + m = {expected}")]
    DegreeMismatch { lambda: usize, expected: usize },
    #[error("class vectors live in different rings ({0} and {1})")]
    Mismatch(String, String),
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("malformed class vector: {0}")]
    Malformed(String),
    #[error(transparent)]
    Shape(#[from] ShapeError),
}

/// A formal integer combination of Schubert classes of one family and rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassVector {
    family: Family,
    n: usize,
    terms: BTreeMap<StrictPartition, BigInt>,
}

impl ClassVector {
    pub fn zero(family: Family, n: usize) -> Self {
        ClassVector {
            family,
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The single class indexed by `sigma`.
    pub fn basis(family: Family, sigma: &SignedSequence) -> Self {
        let mut v = ClassVector::zero(family, sigma.n());
        v.add_term(sigma.partition().clone(), BigInt::one());
        v
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<StrictPartition, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, parts: &StrictPartition) -> BigInt {
        self.terms.get(parts).cloned().unwrap_or_default()
    }

    /// Adds `c` to the coefficient of `parts`, dropping indices not valid for `n`.
    pub fn add_term(&mut self, parts: StrictPartition, c: BigInt) {
        if parts.largest() > self.n || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(parts.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&parts);
        }
    }

    /// Multiplication by the special class of degree `m` (linear extension of [`pieri`]).
    pub fn multiply_special(&self, m: usize) -> Result<ClassVector, RingError> {
        let mut out = ClassVector::zero(self.family, self.n);
        for (parts, c) in &self.terms {
            let mu = SignedSequence::from_strict_partition(parts.clone(), self.n)?;
            for (lam, d) in pieri(self.family, &mu, m)?.terms {
                out.add_term(lam, c * d);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ClassVectorJson::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, RingError> {
        let raw: ClassVectorJson =
            serde_json::from_str(text).map_err(|e| RingError::Malformed(e.to_string()))?;
        let mut v = ClassVector::zero(raw.family, raw.n);
        for t in raw.terms {
            let parts = StrictPartition::new(t.parts)?;
            if parts.largest() > raw.n {
                return Err(RingError::Malformed(format!("{parts} has a part exceeding n")));
            }
            v.add_term(parts, BigInt::from(t.coeff));
        }
        Ok(v)
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let sym = self.family.symbol();
        let mut first = true;
        for (parts, c) in &self.terms {
            let idx: Vec<String> = parts.parts().iter().map(|p| p.to_string()).collect();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}[{}]", c.abs(), sym, idx.join(","))?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    parts: Vec<usize>,
    coeff: i64,
}

#[derive(Serialize, Deserialize)]
struct ClassVectorJson {
    family: Family,
    n: usize,
    terms: Vec<TermJson>,
}

impl From<&ClassVector> for ClassVectorJson {
    fn from(v: &ClassVector) -> Self {
        ClassVectorJson {
            family: v.family,
            n: v.n,
            terms: v
                .terms
                .iter()
                .map(|(p, c)| TermJson {
                    parts: p.parts().to_vec(),
                    coeff: c.to_i64().expect("coefficient fits in i64"),
                })
                .collect(),
        }
    }
}

/// Exponent of 2 in the coefficient of `lambda` in a Pieri product.
pub fn standard_exponent(family: Family, skew: &SkewShape) -> u32 {
    match family {
        Family::B => skew.delta() as u32 - 1,
        Family::C => skew.epsilon() as u32,
    }
}

/// Skew shapes `lambda / mu` with `|lambda| = |mu| + m` that are skew rows.
pub fn skew_rows(mu: &SignedSequence, m: usize) -> Vec<SkewShape> {
    let n = mu.n();
    let mp = mu.partition();
    let target = mp.size() + m;
    let slots = mp.len() + 1;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(slots);
    interlace(mp, n, slots, target, &mut current, &mut out);
    out.into_iter()
        .filter_map(|parts| {
            let lambda = SignedSequence::from_strict_partition(parts, n).ok()?;
            let skew = SkewShape::new(&lambda, mu).ok()?;
            skew.is_skew_row().then_some(skew)
        })
        .collect()
}

fn interlace(
    mu: &StrictPartition,
    n: usize,
    slots: usize,
    target: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<StrictPartition>,
) {
    let i = current.len();
    if i == slots {
        if current.iter().sum::<usize>() == target {
            if let Ok(p) = StrictPartition::new(current.clone()) {
                out.push(p);
            }
        }
        return;
    }
    let lo = mu.part(i);
    let hi = if i == 0 { n } else { mu.part(i - 1) };
    for v in lo..=hi {
        current.push(v);
        interlace(mu, n, slots, target, current, out);
        current.pop();
    }
}

/// `P_mu * p_m` (family B) or `Q_mu * q_m` (family C).
pub fn pieri(family: Family, mu: &SignedSequence, m: usize) -> Result<ClassVector, RingError> {
    pieri_with(family, mu, m, standard_exponent)
}

/// [`pieri`] with a caller-supplied multiplicity exponent.
pub fn pieri_with(
    family: Family,
    mu: &SignedSequence,
    m: usize,
    exponent: impl Fn(Family, &SkewShape) -> u32,
) -> Result<ClassVector, RingError> {
    let n = mu.n();
    if m == 0 || m > n {
        return Err(RingError::MOutOfRange { m, n });
    }
    let mut out = ClassVector::zero(family, n);
    for skew in skew_rows(mu, m) {
        let c = BigInt::one() << exponent(family, &skew);
        out.add_term(skew.lambda().partition().clone(), c);
    }
    Ok(out)
}

/// `sum_lambda v(lambda) w(lambda^c)`.
pub fn pairing(v: &ClassVector, w: &ClassVector) -> Result<BigInt, RingError> {
    if v.family != w.family || v.n != w.n {
        return Err(RingError::Mismatch(
            format!("{}{}", v.family, v.n),
            format!("{}{}", w.family, w.n),
        ));
    }
    let mut total = BigInt::zero();
    for (parts, c) in &v.terms {
        let lam = SignedSequence::from_strict_partition(parts.clone(), v.n)?;
        total += c * w.coeff(lam.complement().partition());
    }
    Ok(total)
}

/// Coefficient of `lambda` in the Pieri product of `mu` by the special class of degree `m`.
pub fn triple_number(
    family: Family,
    mu: &SignedSequence,
    lambda: &SignedSequence,
    m: usize,
) -> Result<BigInt, RingError> {
    if lambda.codim() != mu.codim() + m {
        return Err(RingError::DegreeMismatch {
            lambda: lambda.codim(),
            expected: mu.codim() + m,
        });
    }
    Ok(pieri(family, mu, m)?.coeff(lambda.partition()))
}
