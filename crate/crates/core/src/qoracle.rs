//! Brute-force Schur Q-function oracle for Pieri coefficients.
//!
//! Symmetric polynomials are stored by their coefficients on sorted exponent
//! vectors (the monomial symmetric basis), truncated to a fixed number of
//! variables. `Q_lambda` is built from the one-row functions `q_r` by the
//! two-row rule and a Pfaffian, and products are expanded back into the
//! Q-basis by peeling off lex-leading monomials.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::ring::Family;
use crate::shapes::StrictPartition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("integer overflow in exact coefficient arithmetic")]
    Overflow,
    #[error("Q_{lambda} needs at least {needed} variables, have {have}")]
    TooFewVariables {
        lambda: StrictPartition,
        needed: usize,
        have: usize,
    },
    #[error("polynomial is not in the span of the Q-functions (leading monomial {0:?})")]
    NotInSpan(Vec<u32>),
    #[error("B-adjusted coefficient of {0} is not a positive integer")]
    NonIntegralAdjustment(StrictPartition),
    #[error("polynomials in {0} and {1} variables cannot be combined")]
    VariableMismatch(usize, usize),
}

/// A symmetric polynomial in `num_vars` variables with exact integer coefficients.
///
/// Keys are partitions (exponent vectors sorted decreasingly, zeros dropped);
/// the coefficient of any monomial is the coefficient of its sorted exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricPolynomial {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, i128>,
}

fn sorted_key(exps: &[u32]) -> Vec<u32> {
    let mut k: Vec<u32> = exps.iter().copied().filter(|&e| e > 0).collect();
    k.sort_unstable_by(|a, b| b.cmp(a));
    k
}

fn checked_add(a: i128, b: i128) -> Result<i128, OracleError> {
    a.checked_add(b).ok_or(OracleError::Overflow)
}

fn checked_mul(a: i128, b: i128) -> Result<i128, OracleError> {
    a.checked_mul(b).ok_or(OracleError::Overflow)
}

/// Partitions of `total` with at most `max_len` parts, each at most `max_part`.
fn partitions(total: u32, max_len: usize, max_part: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max_len: usize, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for p in (1..=max_part.min(rest)).rev() {
            cur.push(p);
            go(rest - p, max_len, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, max_len, max_part, &mut Vec::new(), &mut out);
    out
}

/// Largest length of a strict partition of `degree`.
pub fn max_strict_length(degree: usize) -> usize {
    let mut l = 0;
    while (l + 1) * (l + 2) / 2 <= degree {
        l += 1;
    }
    l.max(1)
}

impl SymmetricPolynomial {
    pub fn zero(num_vars: usize) -> Self {
        SymmetricPolynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        let mut p = SymmetricPolynomial::zero(num_vars);
        p.terms.insert(Vec::new(), 1);
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sorted exponent vectors with their coefficients.
    pub fn terms(&self) -> &BTreeMap<Vec<u32>, i128> {
        &self.terms
    }

    /// Coefficient of the monomial with the given exponents (any order).
    pub fn coeff(&self, exps: &[u32]) -> i128 {
        if exps.len() > self.num_vars {
            return 0;
        }
        self.terms.get(&sorted_key(exps)).copied().unwrap_or(0)
    }

    /// Lex-greatest monomial (as a sorted exponent vector) and its coefficient.
    pub fn leading(&self) -> Option<(&Vec<u32>, i128)> {
        self.terms.iter().next_back().map(|(k, &c)| (k, c))
    }

    /// Every monomial with its full exponent vector of length `num_vars`.
    pub fn expand_full(&self) -> BTreeMap<Vec<u32>, i128> {
        let mut out = BTreeMap::new();
        for (key, &c) in &self.terms {
            let mut base = key.clone();
            base.resize(self.num_vars, 0);
            base.sort_unstable();
            // iterate distinct permutations in lexicographic order
            loop {
                out.insert(base.clone(), c);
                if !next_permutation(&mut base) {
                    break;
                }
            }
        }
        out
    }

    fn add_to(&mut self, key: Vec<u32>, c: i128) -> Result<(), OracleError> {
        if c == 0 {
            return Ok(());
        }
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e = checked_add(*e, c)?;
        if *e == 0 {
            self.terms.remove(&key);
        }
        Ok(())
    }

    fn check_vars(&self, other: &Self) -> Result<(), OracleError> {
        if self.num_vars != other.num_vars {
            return Err(OracleError::VariableMismatch(self.num_vars, other.num_vars));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, OracleError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.add_to(k.clone(), c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, s: i128) -> Result<Self, OracleError> {
        let mut out = SymmetricPolynomial::zero(self.num_vars);
        for (k, &c) in &self.terms {
            out.add_to(k.clone(), checked_mul(c, s)?)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, OracleError> {
        self.add(&other.scale(-1)?)
    }

    fn by_degree(&self) -> BTreeMap<u32, Vec<(&Vec<u32>, i128)>> {
        let mut out: BTreeMap<u32, Vec<(&Vec<u32>, i128)>> = BTreeMap::new();
        for (k, &c) in &self.terms {
            out.entry(k.iter().sum()).or_default().push((k, c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, OracleError> {
        self.check_vars(other)?;
        let nv = self.num_vars;
        let mut out = SymmetricPolynomial::zero(nv);
        for (&da, _) in self.by_degree().iter() {
            for (&db, _) in other.by_degree().iter() {
                for gamma in partitions(da + db, nv, da + db) {
                    let mut g = gamma.clone();
                    g.resize(nv, 0);
                    let mut acc = 0i128;
                    let mut alpha = vec![0u32; nv];
                    sum_splits(&g, 0, da, &mut alpha, &mut |a| {
                        let fa = self.coeff(a);
                        if fa == 0 {
                            return Ok(());
                        }
                        let rest: Vec<u32> = g.iter().zip(a).map(|(x, y)| x - y).collect();
                        let gb = other.coeff(&rest);
                        if gb != 0 {
                            acc = checked_add(acc, checked_mul(fa, gb)?)?;
                        }
                        Ok(())
                    })?;
                    out.add_to(gamma, acc)?;
                }
            }
        }
        Ok(out)
    }
}

/// Calls `f` on every `alpha <= bound` (componentwise) with `sum(alpha[i..]) = rest`.
fn sum_splits(
    bound: &[u32],
    i: usize,
    rest: u32,
    alpha: &mut Vec<u32>,
    f: &mut impl FnMut(&[u32]) -> Result<(), OracleError>,
) -> Result<(), OracleError> {
    if i == bound.len() {
        return if rest == 0 { f(alpha) } else { Ok(()) };
    }
    let tail: u32 = bound[i + 1..].iter().sum();
    let lo = rest.saturating_sub(tail);
    for v in lo..=bound[i].min(rest) {
        alpha[i] = v;
        sum_splits(bound, i + 1, rest - v, alpha, f)?;
    }
    alpha[i] = 0;
    Ok(())
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for SymmetricPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(k, c)| format!("{c}*m{k:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Entries a Pfaffian can be expanded over.
pub trait PfaffianEntry: Clone {
    type Error;
    fn zero_like(&self) -> Self;
    fn try_add(&self, other: &Self) -> Result<Self, Self::Error>;
    fn try_sub(&self, other: &Self) -> Result<Self, Self::Error>;
    fn try_mul(&self, other: &Self) -> Result<Self, Self::Error>;
}

impl PfaffianEntry for SymmetricPolynomial {
    type Error = OracleError;
    fn zero_like(&self) -> Self {
        SymmetricPolynomial::zero(self.num_vars)
    }
    fn try_add(&self, o: &Self) -> Result<Self, OracleError> {
        self.add(o)
    }
    fn try_sub(&self, o: &Self) -> Result<Self, OracleError> {
        self.sub(o)
    }
    fn try_mul(&self, o: &Self) -> Result<Self, OracleError> {
        self.mul(o)
    }
}

impl PfaffianEntry for i128 {
    type Error = OracleError;
    fn zero_like(&self) -> Self {
        0
    }
    fn try_add(&self, o: &Self) -> Result<Self, OracleError> {
        checked_add(*self, *o)
    }
    fn try_sub(&self, o: &Self) -> Result<Self, OracleError> {
        self.checked_sub(*o).ok_or(OracleError::Overflow)
    }
    fn try_mul(&self, o: &Self) -> Result<Self, OracleError> {
        checked_mul(*self, *o)
    }
}

/// Pfaffian of the antisymmetric matrix restricted to `idx`, expanded along
/// the entry `row` of `idx`. Only entries above the diagonal are read, so the
/// caller must supply `entry(i, j)` for `i < j`.
fn pfaffian_sub<T: PfaffianEntry>(
    entry: &impl Fn(usize, usize) -> T,
    idx: &[usize],
    row: usize,
    unit: &T,
) -> Result<T, T::Error> {
    if idx.is_empty() {
        return Ok(unit.clone());
    }
    if idx.len() % 2 == 1 {
        return Ok(unit.zero_like());
    }
    let mut acc = unit.zero_like();
    let r = idx[row];
    for (pos, &c) in idx.iter().enumerate() {
        if pos == row {
            continue;
        }
        let rest: Vec<usize> = idx.iter().copied().filter(|&x| x != r && x != c).collect();
        let minor = pfaffian_sub(entry, &rest, 0, unit)?;
        // a_{rc} with a_{cr} = -a_{rc}
        let (a, flip) = if r < c { (entry(r, c), false) } else { (entry(c, r), true) };
        let term = a.try_mul(&minor)?;
        let negative = ((row + pos + 1) % 2 == 1) ^ (pos < row) ^ flip;
        acc = if negative { acc.try_sub(&term)? } else { acc.try_add(&term)? };
    }
    Ok(acc)
}

/// Pfaffian of an antisymmetric `2k x 2k` matrix by expansion along `row`.
pub fn pfaffian_along_row<T: PfaffianEntry>(
    matrix: &[Vec<T>],
    row: usize,
    unit: &T,
) -> Result<T, T::Error> {
    let idx: Vec<usize> = (0..matrix.len()).collect();
    pfaffian_sub(&|i, j| matrix[i][j].clone(), &idx, row, unit)
}

/// Pfaffian by first-row expansion.
pub fn pfaffian<T: PfaffianEntry>(matrix: &[Vec<T>], unit: &T) -> Result<T, T::Error> {
    pfaffian_along_row(matrix, 0, unit)
}

/// `q_r` in `num_vars` variables: the degree-`r` part of `prod (1 + x_i t) / (1 - x_i t)`.
///
/// Each variable contributes `1 + 2 x t + 2 x^2 t^2 + ...`, so the coefficient
/// of `x^gamma` is `2^(number of nonzero exponents)`.
pub fn q_poly(r: usize, num_vars: usize) -> SymmetricPolynomial {
    let mut p = SymmetricPolynomial::zero(num_vars);
    for gamma in partitions(r as u32, num_vars, r as u32) {
        let c = 1i128 << gamma.len();
        p.terms.insert(gamma, c);
    }
    p
}

/// `Q_{(a,b)} = q_a q_b + 2 sum_{i=1}^{b} (-1)^i q_{a+i} q_{b-i}`, antisymmetric in `(a, b)`.
pub fn q_pair(a: usize, b: usize, num_vars: usize) -> Result<SymmetricPolynomial, OracleError> {
    if a == b {
        return Ok(SymmetricPolynomial::zero(num_vars));
    }
    if a < b {
        return q_pair(b, a, num_vars)?.scale(-1);
    }
    let mut acc = q_poly(a, num_vars).mul(&q_poly(b, num_vars))?;
    for i in 1..=b {
        let sign = if i % 2 == 0 { 2 } else { -2 };
        let t = q_poly(a + i, num_vars).mul(&q_poly(b - i, num_vars))?;
        acc = acc.add(&t.scale(sign)?)?;
    }
    Ok(acc)
}

/// Caching oracle over a fixed number of variables.
#[derive(Debug, Clone)]
pub struct QOracle {
    num_vars: usize,
    pairs: HashMap<(usize, usize), SymmetricPolynomial>,
    lambdas: HashMap<StrictPartition, SymmetricPolynomial>,
}

impl QOracle {
    pub fn new(num_vars: usize) -> Self {
        QOracle {
            num_vars,
            pairs: HashMap::new(),
            lambdas: HashMap::new(),
        }
    }

    /// An oracle with enough variables for every Q-function of degree `<= degree`.
    pub fn for_degree(degree: usize) -> Self {
        QOracle::new(max_strict_length(degree))
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    fn pair(&mut self, a: usize, b: usize) -> Result<SymmetricPolynomial, OracleError> {
        if let Some(p) = self.pairs.get(&(a, b)) {
            return Ok(p.clone());
        }
        let p = q_pair(a, b, self.num_vars)?;
        self.pairs.insert((a, b), p.clone());
        Ok(p)
    }

    /// `Q_lambda` as the Pfaffian of `[Q_{(l_i, l_j)}]`, padded to even length with a zero part.
    pub fn q_lambda(&mut self, lambda: &StrictPartition) -> Result<SymmetricPolynomial, OracleError> {
        if lambda.len() > self.num_vars {
            return Err(OracleError::TooFewVariables {
                lambda: lambda.clone(),
                needed: lambda.len(),
                have: self.num_vars,
            });
        }
        if let Some(p) = self.lambdas.get(lambda) {
            return Ok(p.clone());
        }
        let mut parts = lambda.parts().to_vec();
        if parts.len() % 2 == 1 {
            parts.push(0);
        }
        let size = parts.len();
        let mut matrix = vec![vec![SymmetricPolynomial::zero(self.num_vars); size]; size];
        for i in 0..size {
            for j in i + 1..size {
                let p = self.pair(parts[i], parts[j])?;
                matrix[j][i] = p.scale(-1)?;
                matrix[i][j] = p;
            }
        }
        let q = pfaffian(&matrix, &SymmetricPolynomial::one(self.num_vars))?;
        self.lambdas.insert(lambda.clone(), q.clone());
        Ok(q)
    }

    /// Writes `p` in the Q-basis by repeatedly removing the lex-leading monomial.
    pub fn expand_in_q_basis(
        &mut self,
        p: &SymmetricPolynomial,
        degree: usize,
    ) -> Result<BTreeMap<StrictPartition, i128>, OracleError> {
        let mut rest = p.clone();
        let mut out = BTreeMap::new();
        while let Some((key, c)) = rest.leading() {
            let key = key.clone();
            let strict = key.windows(2).all(|w| w[0] > w[1]);
            let deg: u32 = key.iter().sum();
            let len = key.len() as u32;
            if !strict || deg as usize != degree || c % (1i128 << len) != 0 {
                return Err(OracleError::NotInSpan(key));
            }
            let lambda =
                StrictPartition::new(key.iter().map(|&k| k as usize).collect()).expect("strict");
            let coeff = c >> len;
            let q = self.q_lambda(&lambda)?;
            rest = rest.sub(&q.scale(coeff)?)?;
            out.insert(lambda, coeff);
        }
        Ok(out)
    }

    /// Pieri coefficients from the product `q_m * Q_mu`, restricted to parts `<= n`.
    ///
    /// Family C returns the Q-coefficients. Family B rescales by
    /// `2^(len(lambda) - len(mu) - 1)` since `P_lambda = 2^(-len(lambda)) Q_lambda`.
    pub fn pieri(
        &mut self,
        family: Family,
        mu: &StrictPartition,
        m: usize,
        n: usize,
    ) -> Result<BTreeMap<StrictPartition, BigInt>, OracleError> {
        let degree = mu.size() + m;
        let needed = max_strict_length(degree);
        if needed > self.num_vars {
            return Err(OracleError::TooFewVariables {
                lambda: mu.clone(),
                needed,
                have: self.num_vars,
            });
        }
        let product = q_poly(m, self.num_vars).mul(&self.q_lambda(mu)?)?;
        let expansion = self.expand_in_q_basis(&product, degree)?;
        let mut out = BTreeMap::new();
        for (lambda, c) in expansion {
            if lambda.largest() > n {
                continue;
            }
            let value = match family {
                Family::C => c,
                Family::B => {
                    let shift = lambda.len() as i64 - mu.len() as i64 - 1;
                    if shift >= 0 {
                        checked_mul(c, 1i128 << shift)?
                    } else {
                        let d = 1i128 << (-shift);
                        if c % d != 0 {
                            return Err(OracleError::NonIntegralAdjustment(lambda));
                        }
                        c / d
                    }
                }
            };
            if value <= 0 {
                return Err(OracleError::NonIntegralAdjustment(lambda));
            }
            out.insert(lambda, BigInt::from(value));
        }
        Ok(out)
    }
}

/// Convenience wrapper building a fresh oracle sized for the product.
pub fn oracle_pieri(
    family: Family,
    mu: &StrictPartition,
    m: usize,
    n: usize,
) -> Result<BTreeMap<StrictPartition, BigInt>, OracleError> {
    QOracle::for_degree(mu.size() + m).pieri(family, mu, m, n)
}
