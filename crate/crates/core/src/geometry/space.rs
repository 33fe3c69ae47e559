//! The ambient spaces `V` (odd orthogonal) and `W` (symplectic) and the
//! Schubert conditions on subspaces of them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::field::{Field, Q};
use super::linalg::Subspace;
use super::{GeometryError, Result};
use crate::shapes::SignedSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    /// Basis `e_{-n}, ..., e_n` with `β(e_i, e_j) = 1` iff `i = -j`.
    Orthogonal(usize),
    /// Basis `f_{-n}, ..., f_{-1}, f_1, ..., f_n` with `β(f_i, f_{-i}) = sign(-i)`.
    Symplectic(usize),
}

/// Which family of flag conditions a Schubert variety is defined by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Conditions against the flag `<e_i, ..., e_n>`.
    Primal,
    /// Conditions against the opposite flag `<e_{-n}, ..., e_i>`.
    Dual,
}

impl Space {
    pub fn n(self) -> usize {
        match self {
            Space::Orthogonal(n) | Space::Symplectic(n) => n,
        }
    }

    pub fn dim(self) -> usize {
        match self {
            Space::Orthogonal(n) => 2 * n + 1,
            Space::Symplectic(n) => 2 * n,
        }
    }

    /// Basis indices in column order.
    pub fn indices(self) -> Vec<i64> {
        let n = self.n() as i64;
        match self {
            Space::Orthogonal(_) => (-n..=n).collect(),
            Space::Symplectic(_) => (-n..=n).filter(|&i| i != 0).collect(),
        }
    }

    pub fn column(self, i: i64) -> Option<usize> {
        let n = self.n() as i64;
        if i.abs() > n {
            return None;
        }
        match self {
            Space::Orthogonal(_) => Some((i + n) as usize),
            Space::Symplectic(_) if i < 0 => Some((i + n) as usize),
            Space::Symplectic(_) if i > 0 => Some((i + n - 1) as usize),
            Space::Symplectic(_) => None,
        }
    }

    fn col(self, i: i64) -> usize {
        self.column(i)
            .unwrap_or_else(|| panic!("index {i} is not a basis index"))
    }

    pub fn index(self, column: usize) -> i64 {
        self.indices()[column]
    }

    pub fn basis_vector<F: Field>(self, i: i64) -> Vec<F> {
        let mut v = vec![F::zero(); self.dim()];
        v[self.col(i)] = F::one();
        v
    }

    /// `β(e_i, e_{-i})` (or for the `f_i`).
    pub fn pairing(self, i: i64) -> i64 {
        match self {
            Space::Orthogonal(_) => 1,
            Space::Symplectic(_) => -i.signum(),
        }
    }

    pub fn form_value<F: Field>(self, u: &[F], v: &[F]) -> F {
        let mut acc = F::zero();
        for i in self.indices() {
            let a = &u[self.col(i)];
            let b = &v[self.col(-i)];
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let t = a.clone() * b.clone();
            acc = if self.pairing(i) > 0 { acc + t } else { acc - t };
        }
        acc
    }

    pub fn is_isotropic<F: Field>(self, h: &Subspace<F>) -> bool {
        let rows = h.rows();
        (0..rows.len()).all(|a| (a..rows.len()).all(|b| self.form_value(&rows[a], &rows[b]).is_zero()))
    }

    /// Columns of the span of `e_lo, ..., e_hi`.
    pub fn interval(self, lo: i64, hi: i64) -> Vec<usize> {
        self.indices()
            .into_iter()
            .filter(|&i| lo <= i && i <= hi)
            .map(|i| self.col(i))
            .collect()
    }

    fn check_dim<F: Field>(h: &Subspace<F>, expected: usize) -> Result<()> {
        if h.dim() != expected {
            return Err(GeometryError::WrongDimension {
                expected,
                found: h.dim(),
            });
        }
        Ok(())
    }

    /// Primal: `dim H ∩ <e_{λ_j}, ..., e_n> >= j` for all `j` (the variety `X_λ`).
    /// Dual: `dim H ∩ <e_{-n}, ..., e_{λ_j}> >= n + 1 - j` (the variety `X'_{λ^c}`).
    pub fn in_schubert<F: Field>(self, h: &Subspace<F>, lambda: &SignedSequence, variant: Variant) -> Result<bool> {
        let n = self.n();
        Self::check_dim(h, n)?;
        let n_i = n as i64;
        for (j0, &l) in lambda.entries().iter().enumerate() {
            let j = j0 + 1;
            let (cols, need) = match variant {
                Variant::Primal => (self.interval(l, n_i), j),
                Variant::Dual => (self.interval(-n_i, l), n + 1 - j),
            };
            if h.meet_coordinate_dim(&cols)? < need {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Conditions on a `k`-plane `L ⊆ <e_1, ..., e_n>`. Primal takes `τ` and tests
    /// `dim L ∩ <e_{k+1-j+τ_j}, ..., e_n> >= j`; Dual takes `σ` and tests
    /// `dim L ∩ <e_1, ..., e_{j+σ_{k+1-j}}> >= j`.
    pub fn in_classical_schubert<F: Field>(
        self,
        l: &Subspace<F>,
        partition: &[usize],
        variant: Variant,
    ) -> Result<bool> {
        let k = partition.len();
        Self::check_dim(l, k)?;
        let n = self.n() as i64;
        if l.meet_coordinate_dim(&self.interval(1, n))? != k {
            return Ok(false);
        }
        for j in 1..=k {
            let cols = match variant {
                Variant::Primal => self.interval((k + 1 - j + partition[j - 1]) as i64, n),
                Variant::Dual => self.interval(1, (j + partition[k - j]) as i64),
            };
            if l.meet_coordinate_dim(&cols)? < j {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `<e_{λ_1}, ..., e_{λ_n}>`.
    pub fn coordinate_plane<F: Field>(self, lambda: &SignedSequence) -> Subspace<F> {
        Subspace::coordinate(self.dim(), lambda.entries().into_iter().map(|l| self.col(l)))
    }

    pub fn header(self) -> String {
        match self {
            Space::Orthogonal(n) => format!("orthogonal n={n}"),
            Space::Symplectic(n) => format!("symplectic n={n}"),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.header())
    }
}

impl FromStr for Space {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self> {
        let mut words = s.split_whitespace();
        let kind = words.next().unwrap_or("");
        let n = words
            .next()
            .and_then(|w| w.strip_prefix("n="))
            .and_then(|w| w.parse::<usize>().ok())
            .ok_or_else(|| GeometryError::Parse(format!("bad header {s:?}")))?;
        if words.next().is_some() {
            return Err(GeometryError::Parse(format!("bad header {s:?}")));
        }
        match kind {
            "orthogonal" => Ok(Space::Orthogonal(n)),
            "symplectic" => Ok(Space::Symplectic(n)),
            _ => Err(GeometryError::Parse(format!("unknown space {kind:?}"))),
        }
    }
}

/// Parses a matrix file: a header line then one row of `p/q` entries per line.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_matrix(text: &str) -> Result<(Space, Vec<Vec<Q>>)> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let space: Space = lines
        .next()
        .ok_or_else(|| GeometryError::Parse("empty file".into()))?
        .parse()?;
    let mut rows = Vec::new();
    for line in lines {
        let row = line
            .split_whitespace()
            .map(parse_rational)
            .collect::<Result<Vec<Q>>>()?;
        if row.len() != space.dim() {
            return Err(GeometryError::WrongLength {
                expected: space.dim(),
                found: row.len(),
            });
        }
        rows.push(row);
    }
    Ok((space, rows))
}

pub fn parse_rational(s: &str) -> Result<Q> {
    let bad = || GeometryError::Parse(format!("bad rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Q::new(num, den))
}

pub fn format_matrix<F: Field>(space: Space, rows: &[Vec<F>]) -> String {
    let mut out = space.header();
    out.push('\n');
    for r in rows {
        let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::field::q;

    #[test]
    fn form_values() {
        let v = Space::Orthogonal(4);
        let e = |i| v.basis_vector::<Q>(i);
        assert_eq!(v.form_value(&e(1), &e(0)), q(0));
        assert_eq!(v.form_value(&e(0), &e(0)), q(1));
        assert_eq!(v.form_value(&e(2), &e(-2)), q(1));
        let w = Space::Symplectic(4);
        let f = |i| w.basis_vector::<Q>(i);
        assert_eq!(w.form_value(&f(1), &f(-1)), q(-1));
        assert_eq!(w.form_value(&f(-1), &f(1)), q(1));
        assert_eq!(w.form_value(&f(3), &f(3)), q(0));
    }

    #[test]
    fn isotropy_of_coordinate_planes() {
        let v = Space::Orthogonal(3);
        let pos = Subspace::<Q>::coordinate(7, [4, 5, 6]);
        assert!(v.is_isotropic(&pos));
        let bad = Subspace::<Q>::coordinate(7, [2, 4]);
        assert!(!v.is_isotropic(&bad));
    }

    #[test]
    fn schubert_conditions_on_coordinate_planes() {
        let space = Space::Orthogonal(3);
        let lambda = SignedSequence::parse("3,1,-2", 3).unwrap();
        let h = space.coordinate_plane::<Q>(&lambda);
        assert!(space.in_schubert(&h, &lambda, Variant::Primal).unwrap());
        assert!(space.in_schubert(&h, &lambda, Variant::Dual).unwrap());
        for mu in SignedSequence::all(3) {
            let below = mu.bruhat_leq(&lambda).unwrap();
            assert_eq!(space.in_schubert(&h, &mu, Variant::Primal).unwrap(), below, "{mu}");
            let above = lambda.bruhat_leq(&mu).unwrap();
            assert_eq!(space.in_schubert(&h, &mu, Variant::Dual).unwrap(), above, "{mu}");
        }
        let small = Subspace::<Q>::coordinate(7, [4]);
        assert!(space.in_schubert(&small, &lambda, Variant::Primal).is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let text = "orthogonal n=1\n1/2 0 -3\n0 1 0\n";
        let (space, rows) = parse_matrix(text).unwrap();
        assert_eq!(space, Space::Orthogonal(1));
        assert_eq!(rows[0][0], crate::geometry::field::q_frac(1, 2));
        assert_eq!(format_matrix(space, &rows), text);
        assert!(parse_matrix("orthogonal n=1\n1 2\n").is_err());
        assert!(parse_matrix("affine n=1\n").is_err());
    }
}
