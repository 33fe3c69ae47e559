//! Local coordinates on `X_μ ∩ X'_{λ^c}` for a single component meeting the
//! first column, the triangular solve making them isotropic, and the
//! triangular solve for the classical problem `v ∈ L ⊆ w^⊥`.

use std::collections::BTreeMap;

use super::field::Field;
use super::linalg::Subspace;
use super::space::Space;
use super::{GeometryError, Result};
use crate::shapes::{SignedSequence, SkewShape};

/// `(k, τ, σ)` with `k` the number of positive entries of `μ`,
/// `τ_j = μ_j - (k+1-j)` and `σ_j = λ_j - (k+1-j)`.
pub fn sigma_tau(lambda: &SignedSequence, mu: &SignedSequence) -> Result<(usize, Vec<usize>, Vec<usize>)> {
    SkewShape::new(lambda, mu)?;
    let k = mu.positive_len();
    let shift = |x: i64, j: usize| (x - (k + 1 - j) as i64) as usize;
    let tau = (1..=k).map(|j| shift(mu.entry(j), j)).collect();
    let sigma = (1..=k).map(|j| shift(lambda.entry(j), j)).collect();
    Ok((k, tau, sigma))
}

/// The shape data needed by [`local_coords`] and [`solve_isotropy`].
#[derive(Debug, Clone)]
struct Chart {
    n: usize,
    k: usize,
    lambda: Vec<i64>,
    mu: Vec<i64>,
}

impl Chart {
    fn new(lambda: &SignedSequence, mu: &SignedSequence) -> Result<Self> {
        let skew = SkewShape::new(lambda, mu)?;
        let why = if !skew.is_skew_row() {
            Some("not a skew row")
        } else if skew.delta() != 1 || skew.first_column_component().is_none() {
            Some("needs a single component meeting the first column")
        } else if skew.phi() != 0 {
            Some("needs no fixed points")
        } else {
            None
        };
        if let Some(why) = why {
            return Err(GeometryError::ShapeNotSupported(format!("{lambda} / {mu}: {why}")));
        }
        let k = mu.positive_len();
        if lambda.entry(k + 1) != 1 {
            return Err(GeometryError::ShapeNotSupported(format!(
                "{lambda} / {mu}: row {} of lambda is not 1",
                k + 1
            )));
        }
        Ok(Chart {
            n: lambda.n(),
            k,
            lambda: lambda.entries(),
            mu: mu.entries(),
        })
    }

    fn space(&self) -> Space {
        Space::Orthogonal(self.n)
    }

    /// Index carrying the leading 1 of row `j` (1-based).
    fn pivot(&self, j: usize) -> i64 {
        if j == self.k + 1 {
            -1
        } else {
            self.lambda[j - 1]
        }
    }

    /// Indices `[μ_j, pivot_j)` carrying the free coordinates of row `j`.
    fn free(&self, j: usize) -> std::ops::Range<i64> {
        self.mu[j - 1]..self.pivot(j)
    }

    /// Whether `g_i` (`i <= k`) has a structurally nonzero entry at `t`.
    fn supports(&self, i: usize, t: i64) -> bool {
        self.mu[i - 1] <= t && t <= self.lambda[i - 1]
    }

    fn rows<F: Field>(&self, x: &[F], y: &[F]) -> Result<Vec<Vec<F>>> {
        let n = self.n;
        if x.len() != n || y.len() + 1 != n {
            return Err(GeometryError::WrongLength {
                expected: 2 * n - 1,
                found: x.len() + y.len(),
            });
        }
        let space = self.space();
        let col = |i: i64| space.column(i).expect("index in range");
        let mut rows = Vec::with_capacity(n);
        for j in 1..=n {
            let mut g = space.basis_vector::<F>(self.pivot(j));
            for t in self.free(j) {
                g[col(t)] = if j <= self.k {
                    x[t as usize].clone()
                } else {
                    y[(-t) as usize - 2].clone()
                };
            }
            if j == self.k + 1 {
                let x0 = x[0].clone();
                g[col(0)] = F::from_i64(2) * x0.clone();
                g[col(1)] = -(F::from_i64(2) * x0.clone() * x0);
            }
            rows.push(g);
        }
        Ok(rows)
    }

    /// Pairs `(i, j)`, `i <= k < j`, whose equation `β(g_i, g_j) = 0` is not
    /// identically zero.
    fn equations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.k {
            for j in self.k + 1..=self.n {
                let live = self.supports(i, -self.pivot(j)) || self.free(j).any(|t| self.supports(i, -t));
                if live {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// The rows `g_1, ..., g_n` of the local coordinates, with `x = (x_0, ..., x_{n-1})`
/// and `y = (y_2, ..., y_n)`. The rows are returned as displayed, not reduced.
pub fn local_rows<F: Field>(lambda: &SignedSequence, mu: &SignedSequence, x: &[F], y: &[F]) -> Result<Vec<Vec<F>>> {
    Chart::new(lambda, mu)?.rows(x, y)
}

pub fn local_coords<F: Field>(lambda: &SignedSequence, mu: &SignedSequence, x: &[F], y: &[F]) -> Result<Subspace<F>> {
    let rows = local_rows(lambda, mu, x, y)?;
    Subspace::from_rows(2 * lambda.n() + 1, rows)
}

/// The pairs `(i, j)` with `β(g_i, g_j)` not identically zero.
pub fn isotropy_equations(lambda: &SignedSequence, mu: &SignedSequence) -> Result<Vec<(usize, usize)>> {
    Ok(Chart::new(lambda, mu)?.equations())
}

/// The unique `y = (y_2, ..., y_n)` making the local coordinates isotropic.
///
/// Each equation is linear in `y`; they are solved by repeatedly picking one
/// with a single unknown left.
pub fn solve_isotropy<F: Field>(lambda: &SignedSequence, mu: &SignedSequence, x: &[F]) -> Result<Vec<F>> {
    let chart = Chart::new(lambda, mu)?;
    let n = chart.n;
    if x.len() != n {
        return Err(GeometryError::WrongLength { expected: n, found: x.len() });
    }
    let space = chart.space();
    let zeros = vec![F::zero(); n - 1];
    let g = chart.rows(x, &zeros)?;
    let col = |i: i64| space.column(i).expect("index in range");

    // equation (i, j): constant + Σ coeff_s y_s with y_s sitting at e_{-s} in g_j
    struct Eq<F> {
        constant: F,
        unknowns: Vec<(usize, F)>,
    }
    let eqs: Vec<Eq<F>> = chart
        .equations()
        .into_iter()
        .map(|(i, j)| Eq {
            constant: g[i - 1][col(-chart.pivot(j))].clone(),
            unknowns: chart
                .free(j)
                .filter(|&t| chart.supports(i, -t))
                .map(|t| ((-t) as usize, g[i - 1][col(-t)].clone()))
                .collect(),
        })
        .collect();

    let mut y: Vec<Option<F>> = vec![None; n + 1];
    let mut used = vec![false; eqs.len()];
    loop {
        let next = eqs.iter().enumerate().find(|(e, eq)| {
            !used[*e] && eq.unknowns.iter().filter(|(s, _)| y[*s].is_none()).count() == 1
        });
        let Some((e, eq)) = next else { break };
        used[e] = true;
        let mut rest = eq.constant.clone();
        let mut target = None;
        for (s, c) in &eq.unknowns {
            match &y[*s] {
                Some(v) => rest = rest + c.clone() * v.clone(),
                None => target = Some((*s, c.clone())),
            }
        }
        let (s, c) = target.expect("one unknown");
        let inv = c
            .inv()
            .ok_or_else(|| GeometryError::DivisionByZero(format!("coefficient of y_{s} vanishes")))?;
        y[s] = Some(-(rest * inv));
    }
    let y: Vec<F> = (2..=n)
        .map(|s| {
            y[s].clone()
                .ok_or_else(|| GeometryError::ShapeNotSupported(format!("y_{s} is not determined")))
        })
        .collect::<Result<_>>()?;
    let h = chart.rows(x, &y)?;
    for i in 0..n {
        for j in i..n {
            if !space.form_value(&h[i], &h[j]).is_zero() {
                return Err(GeometryError::NotGeneral(format!("g_{} and g_{} are not orthogonal", i + 1, j + 1)));
            }
        }
    }
    Ok(y)
}

/// Solves for the unique `L = <g_1, ..., g_r>` with `g_i = e_{λ_i} + Σ_{t ∈ [μ_i, λ_i)} x_t e_t`,
/// `target ∈ L` and `L ⊆ functional^⊥`.
///
/// `rows` holds the positive pairs `(λ_i, μ_i)` with `λ_{i+1} = μ_i`. The
/// target is read at indices `t > 0` and the functional at `-t`. Returns the
/// `x_t` and the rows of `L` in `space`.
pub fn classical_solve<F: Field>(
    space: Space,
    rows: &[(i64, i64)],
    target: &[F],
    functional: &[F],
) -> Result<(BTreeMap<i64, F>, Vec<Vec<F>>)> {
    let col = |i: i64| space.column(i).expect("index in range");
    let a = |t: i64| target[col(t)].clone();
    let b = |t: i64| functional[col(-t)].clone();
    if rows.windows(2).any(|w| w[1].0 != w[0].1) || rows.iter().any(|&(l, m)| m < 1 || l <= m) {
        return Err(GeometryError::ShapeNotSupported(format!("rows {rows:?} do not chain")));
    }
    let pivot = |x: F, what: &str| {
        x.inv()
            .ok_or_else(|| GeometryError::NotGeneral(format!("vanishing pivot {what}")))
    };
    let mut x: BTreeMap<i64, F> = BTreeMap::new();
    let mut c = rows.first().map(|r| a(r.0)).unwrap_or_else(F::zero);
    for (i, &(l, m)) in rows.iter().enumerate() {
        let ci = pivot(c.clone(), "c")?;
        for t in m + 1..l {
            x.insert(t, a(t) * ci.clone());
        }
        if i + 1 < rows.len() {
            let mut s = b(l);
            for t in m + 1..l {
                s = s + b(t) * x[&t].clone();
            }
            let xm = -(s * pivot(b(m), "b")?);
            c = a(rows[i + 1].0) - c * xm.clone();
            x.insert(m, xm);
        } else {
            x.insert(m, a(m) * ci);
        }
    }
    let basis: Vec<Vec<F>> = rows
        .iter()
        .map(|&(l, m)| {
            let mut g = space.basis_vector::<F>(l);
            for t in m..l {
                g[col(t)] = x[&t].clone();
            }
            g
        })
        .collect();
    for g in &basis {
        let pairing = (1..=space.n() as i64).fold(F::zero(), |acc, t| acc + g[col(t)].clone() * b(t));
        if !pairing.is_zero() {
            return Err(GeometryError::NotGeneral("L is not orthogonal to the functional".into()));
        }
    }
    let span = Subspace::from_rows(space.dim(), basis.clone())?;
    let mut positive = vec![F::zero(); space.dim()];
    for t in 1..=space.n() as i64 {
        positive[col(t)] = a(t);
    }
    if !span.contains(&positive)? {
        return Err(GeometryError::NotGeneral("target is not in L".into()));
    }
    Ok((x, basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::field::{q, Q};
    use crate::geometry::space::Variant;

    fn seq(t: &str, n: usize) -> SignedSequence {
        SignedSequence::parse(t, n).unwrap()
    }

    fn six() -> (SignedSequence, SignedSequence) {
        (seq("6,5,3,1,-2,-4", 6), seq("5,3,1,-2,-4,-6", 6))
    }

    #[test]
    fn sigma_tau_example() {
        let (lam, mu) = six();
        assert_eq!(sigma_tau(&lam, &mu).unwrap(), (3, vec![2, 1, 0], vec![3, 3, 2]));
        let (_, t, s) = sigma_tau(&lam, &lam).unwrap();
        assert_eq!(t, s);
        let stair = seq("3,2,1", 3);
        assert_eq!(sigma_tau(&seq("3,2,1", 3), &stair).unwrap().1, vec![0, 0, 0]);
    }

    #[test]
    fn six_pattern() {
        let (lam, mu) = six();
        let x: Vec<Q> = (0..6).map(|i| q(10 + i)).collect();
        let y: Vec<Q> = (2..=6).map(|i| q(100 + i)).collect();
        let g = local_rows(&lam, &mu, &x, &y).unwrap();
        let sp = Space::Orthogonal(6);
        let at = |r: usize, i: i64| g[r][sp.column(i).unwrap()].clone();
        assert_eq!((at(0, 6), at(0, 5)), (q(1), q(15)));
        assert_eq!((at(1, 5), at(1, 4), at(1, 3)), (q(1), q(14), q(13)));
        assert_eq!((at(2, 3), at(2, 2), at(2, 1)), (q(1), q(12), q(11)));
        assert_eq!((at(3, -1), at(3, -2), at(3, 0), at(3, 1)), (q(1), q(102), q(20), q(-200)));
        assert_eq!((at(4, -2), at(4, -3), at(4, -4)), (q(1), q(103), q(104)));
        assert_eq!((at(5, -4), at(5, -5), at(5, -6)), (q(1), q(105), q(106)));
        let nonzero: usize = g.iter().flatten().filter(|v| **v != q(0)).count();
        assert_eq!(nonzero, 18);
        assert_eq!(
            isotropy_equations(&lam, &mu).unwrap(),
            vec![(1, 6), (2, 5), (2, 6), (3, 4), (3, 5)]
        );
    }

    #[test]
    fn six_solution() {
        let (lam, mu) = six();
        let x: Vec<Q> = vec![q(7), q(2), q(3), q(5), q(-4), q(6)];
        let y = solve_isotropy(&lam, &mu, &x).unwrap();
        let y2 = -x[1].clone() / x[2].clone();
        let y3 = -x[2].clone();
        let y4 = -y3.clone() * x[3].clone() / x[4].clone();
        let y5 = -x[4].clone();
        let y6 = -x[5].clone() * y5.clone();
        assert_eq!(y, vec![y2, y3, y4, y5, y6]);
    }

    #[test]
    fn zero_coordinates() {
        let (lam, mu) = six();
        let h = local_coords(&lam, &mu, &vec![q(0); 6], &vec![q(0); 5]).unwrap();
        let sp = Space::Orthogonal(6);
        let expected = Subspace::coordinate(13, [6, 5, 3, -1, -2, -4].map(|i| sp.column(i).unwrap()));
        assert_eq!(h, expected);
        assert!(matches!(
            solve_isotropy(&lam, &mu, &vec![q(0); 6]),
            Err(GeometryError::DivisionByZero(_))
        ));
    }

    #[test]
    fn solution_lies_in_both_schubert_varieties() {
        let (lam, mu) = six();
        let x: Vec<Q> = vec![q(1); 6];
        let y = solve_isotropy(&lam, &mu, &x).unwrap();
        let h = local_coords(&lam, &mu, &x, &y).unwrap();
        let sp = Space::Orthogonal(6);
        assert!(sp.is_isotropic(&h));
        assert!(sp.in_schubert(&h, &mu, Variant::Primal).unwrap());
        assert!(sp.in_schubert(&h, &lam, Variant::Dual).unwrap());
        let (k, tau, sigma) = sigma_tau(&lam, &mu).unwrap();
        let l = h.meet_coordinate(&sp.interval(1, 6)).unwrap();
        assert_eq!(l.dim(), k);
        assert!(sp.in_classical_schubert(&l, &tau, Variant::Primal).unwrap());
        assert!(sp.in_classical_schubert(&l, &sigma, Variant::Dual).unwrap());
    }

    #[test]
    fn classical_solve_recovers_l() {
        let sp = Space::Orthogonal(4);
        let col = |i: i64| sp.column(i).unwrap();
        // L = <e_4 - e_3> and functional e_{-4} + e_{-3}
        let mut a = vec![q(0); 9];
        a[col(4)] = q(-1);
        a[col(3)] = q(1);
        let mut b = vec![q(0); 9];
        b[col(-4)] = q(1);
        b[col(-3)] = q(1);
        let (x, rows) = classical_solve(sp, &[(4, 3)], &a, &b).unwrap();
        assert_eq!(x[&3], q(-1));
        assert_eq!(rows[0][col(4)], q(1));
        b[col(-3)] = q(2);
        assert!(classical_solve(sp, &[(4, 3)], &a, &b).is_err());
    }

    #[test]
    fn unsupported_shapes_are_rejected() {
        let lam = seq("4,2,1,-3", 4);
        let mu = seq("3,2,-1,-4", 4);
        assert!(matches!(
            solve_isotropy(&lam, &mu, &vec![q(1); 4]),
            Err(GeometryError::ShapeNotSupported(_))
        ));
    }
}
