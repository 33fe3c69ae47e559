//! The linear forms `α_j` and quadratic forms `β_d` whose common zero locus
//! `Z_{λ/μ}` contains every `H ∈ X_μ ∩ X'_{λ^c}`.

use std::collections::BTreeMap;
use std::fmt;

use super::field::Field;
use super::linalg::Subspace;
use super::Result;
use crate::shapes::{SignedSequence, SkewShape};

/// The coordinate functional `x_index`, attached to a fixed point (`0` for `α_0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    pub fixed_point: usize,
    pub index: i64,
}

/// `[x_0^2] + weight * Σ_{k ∈ columns} x_k x_{-k}`, where the square term is
/// present only for the component meeting the first column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    pub component: usize,
    pub with_zero: bool,
    pub weight: i64,
    /// Positive indices `k` contributing `x_k x_{-k}`.
    pub columns: Vec<usize>,
}

/// A quadratic polynomial in the `x_i`, keyed by sorted index pairs.
pub type QuadPoly = BTreeMap<(i64, i64), i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormSystem {
    n: usize,
    pub linear: Vec<LinearForm>,
    pub quadratic: Vec<QuadraticForm>,
}

pub fn z_forms(lambda: &SignedSequence, mu: &SignedSequence) -> Result<FormSystem> {
    Ok(FormSystem::new(&SkewShape::new(lambda, mu)?))
}

impl FormSystem {
    pub fn new(skew: &SkewShape) -> Self {
        let linear = skew
            .fixed_points()
            .iter()
            .map(|&j| LinearForm {
                fixed_point: j,
                index: if j == 0 { 0 } else { -skew.lambda().entry(j) },
            })
            .collect();
        let quadratic = skew
            .components()
            .iter()
            .enumerate()
            .map(|(id, c)| QuadraticForm {
                component: id,
                with_zero: c.meets_first_column,
                weight: if c.meets_first_column { 2 } else { 1 },
                columns: c.col.iter().copied().filter(|&k| k > 0).collect(),
            })
            .collect();
        FormSystem {
            n: skew.n(),
            linear,
            quadratic,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn col(&self, i: i64) -> usize {
        (i + self.n as i64) as usize
    }

    pub fn linear_value<F: Field>(&self, form: &LinearForm, v: &[F]) -> F {
        v[self.col(form.index)].clone()
    }

    /// `q(u + v) - q(u) - q(v)`, so that `polar(v, v) = 2 q(v)`.
    pub fn polar<F: Field>(&self, form: &QuadraticForm, u: &[F], v: &[F]) -> F {
        let mut acc = F::zero();
        if form.with_zero {
            let c = self.col(0);
            acc = acc + F::from_i64(2) * u[c].clone() * v[c].clone();
        }
        let w = F::from_i64(form.weight);
        for &k in &form.columns {
            let (p, m) = (self.col(k as i64), self.col(-(k as i64)));
            acc = acc + w.clone() * (u[p].clone() * v[m].clone() + u[m].clone() * v[p].clone());
        }
        acc
    }

    pub fn quadratic_value<F: Field>(&self, form: &QuadraticForm, v: &[F]) -> F {
        let mut acc = F::zero();
        if form.with_zero {
            let c = self.col(0);
            acc = acc + v[c].clone() * v[c].clone();
        }
        let w = F::from_i64(form.weight);
        for &k in &form.columns {
            acc = acc + w.clone() * v[self.col(k as i64)].clone() * v[self.col(-(k as i64))].clone();
        }
        acc
    }

    pub fn vanishes_at<F: Field>(&self, v: &[F]) -> bool {
        self.linear.iter().all(|a| self.linear_value(a, v).is_zero())
            && self.quadratic.iter().all(|b| self.quadratic_value(b, v).is_zero())
    }

    /// Every linear form kills `H` and every quadratic form vanishes identically on it.
    pub fn vanishes_on<F: Field>(&self, h: &Subspace<F>) -> bool {
        let rows = h.rows();
        rows.iter().all(|r| self.linear.iter().all(|a| self.linear_value(a, r).is_zero()))
            && self.quadratic.iter().all(|b| {
                (0..rows.len()).all(|i| (i..rows.len()).all(|j| self.polar(b, &rows[i], &rows[j]).is_zero()))
            })
    }

    /// How often each index `0..=n` is covered by some form.
    pub fn coverage(&self) -> Vec<usize> {
        let mut hits = vec![0; self.n + 1];
        for a in &self.linear {
            hits[a.index.unsigned_abs() as usize] += 1;
        }
        for b in &self.quadratic {
            if b.with_zero {
                hits[0] += 1;
            }
            for &k in &b.columns {
                hits[k] += 1;
            }
        }
        hits
    }

    pub fn quadratic_poly(form: &QuadraticForm) -> QuadPoly {
        let mut p = QuadPoly::new();
        if form.with_zero {
            p.insert((0, 0), 1);
        }
        for &k in &form.columns {
            p.insert((-(k as i64), k as i64), form.weight);
        }
        p
    }

    /// `x_0^2 + 2 Σ_{i>0} x_i x_{-i}`.
    pub fn ambient_poly(n: usize) -> QuadPoly {
        let mut p = QuadPoly::from([((0, 0), 1)]);
        for i in 1..=n as i64 {
            p.insert((-i, i), 2);
        }
        p
    }

    /// Cofactors expressing the ambient form in the ideal of the system: a
    /// linear cofactor `(coeff, x_index)` per linear form and an integer per
    /// quadratic form.
    pub fn ideal_cofactors(&self) -> (Vec<(i64, i64)>, Vec<i64>) {
        let lin = self
            .linear
            .iter()
            .map(|a| if a.index == 0 { (1, 0) } else { (2, -a.index) })
            .collect();
        let quad = self.quadratic.iter().map(|b| if b.with_zero { 1 } else { 2 }).collect();
        (lin, quad)
    }

    /// Expands the cofactor combination and compares it with the ambient form.
    pub fn ambient_in_ideal(&self) -> bool {
        let (lin, quad) = self.ideal_cofactors();
        let mut total = QuadPoly::new();
        let mut add = |key: (i64, i64), c: i64| {
            let e = total.entry(key).or_insert(0);
            *e += c;
            if *e == 0 {
                total.remove(&key);
            }
        };
        for (a, &(c, var)) in self.linear.iter().zip(&lin) {
            let key = if a.index <= var { (a.index, var) } else { (var, a.index) };
            add(key, c);
        }
        for (b, &c) in self.quadratic.iter().zip(&quad) {
            for (key, v) in Self::quadratic_poly(b) {
                add(key, c * v);
            }
        }
        total == Self::ambient_poly(self.n)
    }
}

fn var(i: i64) -> String {
    format!("x[{i}]")
}

impl fmt::Display for FormSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.quadratic {
            let mut terms: Vec<String> = b
                .columns
                .iter()
                .rev()
                .map(|&k| {
                    let w = if b.weight == 1 { String::new() } else { format!("{}*", b.weight) };
                    format!("{w}{}*{}", var(-(k as i64)), var(k as i64))
                })
                .collect();
            if b.with_zero {
                terms.push(format!("{}^2", var(0)));
            }
            let name = if b.with_zero { "0".to_string() } else { format!("d{}", b.component) };
            writeln!(f, "beta_{name} = {}", terms.join(" + "))?;
        }
        for a in &self.linear {
            writeln!(f, "alpha_{} = {}", a.fixed_point, var(a.index))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::field::{q, Q};
    use crate::geometry::space::Space;

    fn seq(t: &str, n: usize) -> SignedSequence {
        SignedSequence::parse(t, n).unwrap()
    }

    #[test]
    fn worked_example_forms() {
        let fs = z_forms(&seq("4,2,1,-3", 4), &seq("3,2,-1,-4", 4)).unwrap();
        assert_eq!(fs.linear, vec![LinearForm { fixed_point: 2, index: -2 }]);
        let b0 = fs.quadratic.iter().find(|b| b.with_zero).unwrap();
        assert_eq!(FormSystem::quadratic_poly(b0), BTreeMap::from([((0, 0), 1), ((-1, 1), 2)]));
        let bd = fs.quadratic.iter().find(|b| !b.with_zero).unwrap();
        assert_eq!(FormSystem::quadratic_poly(bd), BTreeMap::from([((-4, 4), 1), ((-3, 3), 1)]));
        assert_eq!(fs.coverage(), vec![1; 5]);
        assert!(fs.ambient_in_ideal());
    }

    #[test]
    fn fixed_shape_forms() {
        let lam = seq("3,-1,-2", 3);
        let fs = z_forms(&lam, &lam).unwrap();
        assert!(fs.quadratic.is_empty());
        let idx: Vec<i64> = fs.linear.iter().map(|a| a.index).collect();
        assert_eq!(idx, vec![0, -3, 1, 2]);
        assert!(fs.ambient_in_ideal());
        let h = Space::Orthogonal(3).coordinate_plane::<Q>(&lam);
        assert!(fs.vanishes_on(&h));
    }

    #[test]
    fn positive_plane_violates_negative_fixed_points() {
        let lam = seq("3,-1,-2", 3);
        let fs = z_forms(&lam, &lam).unwrap();
        let pos = Subspace::<Q>::coordinate(7, [4, 5, 6]);
        assert!(!fs.vanishes_on(&pos));
        let mut v = vec![q(0); 7];
        v[3 + 3] = q(1);
        assert!(fs.vanishes_at(&v));
    }

    #[test]
    fn ideal_membership_everywhere() {
        for n in 1..=5 {
            for lam in SignedSequence::all(n) {
                for mu in SignedSequence::all(n) {
                    if let Ok(fs) = z_forms(&lam, &mu) {
                        assert!(fs.ambient_in_ideal(), "{lam} / {mu}");
                        assert_eq!(fs.coverage(), vec![1; n + 1]);
                    }
                }
            }
        }
    }
}
