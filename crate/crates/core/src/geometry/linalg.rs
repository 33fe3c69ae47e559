//! Row reduction and subspaces over an exact field.

use super::field::Field;
use super::{GeometryError, Result};

/// Reduces `rows` in place to reduced row-echelon form, dropping zero rows.
/// Returns the pivot columns.
pub fn rref<F: Field>(rows: &mut Vec<Vec<F>>, width: usize) -> Result<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c]
            .inv()
            .ok_or_else(|| GeometryError::ZeroDivisor(rows[r][c].zero_divisor_factor()))?;
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = x.clone() - f.clone() * p.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Ok(pivots)
}

pub fn rank<F: Field>(rows: &[Vec<F>], width: usize) -> Result<usize> {
    let mut m = rows.to_vec();
    Ok(rref(&mut m, width)?.len())
}

/// A basis of `{x : M x = 0}` for `M` with the given rows and `width` columns.
pub fn nullspace<F: Field>(rows: &[Vec<F>], width: usize) -> Result<Vec<Vec<F>>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, width)?;
    let mut basis = Vec::new();
    for free in (0..width).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); width];
        v[free] = F::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    Ok(basis)
}

pub fn dot<F: Field>(u: &[F], v: &[F]) -> F {
    u.iter()
        .zip(v)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

pub fn combine<F: Field>(coeffs: &[F], rows: &[Vec<F>], width: usize) -> Vec<F> {
    let mut out = vec![F::zero(); width];
    for (c, row) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            if !x.is_zero() {
                *o = o.clone() + c.clone() * x.clone();
            }
        }
    }
    out
}

/// A subspace of `F^ambient`, held as its reduced row-echelon basis so that
/// equality of subspaces is equality of values.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<F: Field> {
    ambient: usize,
    rows: Vec<Vec<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn from_rows(ambient: usize, rows: Vec<Vec<F>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != ambient) {
            return Err(GeometryError::WrongLength {
                expected: ambient,
                found: r.len(),
            });
        }
        let mut rows = rows;
        rref(&mut rows, ambient)?;
        Ok(Subspace { ambient, rows })
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
        }
    }

    /// The span of the given standard basis columns.
    pub fn coordinate(ambient: usize, columns: impl IntoIterator<Item = usize>) -> Self {
        let mut cols: Vec<usize> = columns.into_iter().collect();
        cols.sort_unstable();
        cols.dedup();
        let rows = cols
            .into_iter()
            .map(|c| {
                let mut v = vec![F::zero(); ambient];
                v[c] = F::one();
                v
            })
            .collect();
        Subspace { ambient, rows }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The reduced row-echelon basis.
    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn contains(&self, v: &[F]) -> Result<bool> {
        let mut m = self.rows.clone();
        m.push(v.to_vec());
        Ok(rank(&m, self.ambient)? == self.dim())
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> Result<bool> {
        Ok(self.sum(other)?.dim() == self.dim())
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Subspace::from_rows(self.ambient, rows)
    }

    pub fn intersect(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        let a = self.dim();
        let b = other.dim();
        // left kernel of the stacked basis: sum c_i u_i + sum d_j w_j = 0
        let transposed: Vec<Vec<F>> = (0..self.ambient)
            .map(|col| {
                self.rows
                    .iter()
                    .chain(&other.rows)
                    .map(|r| r[col].clone())
                    .collect()
            })
            .collect();
        let kernel = nullspace(&transposed, a + b)?;
        let rows = kernel
            .iter()
            .map(|k| combine(&k[..a], &self.rows, self.ambient))
            .collect();
        Subspace::from_rows(self.ambient, rows)
    }

    /// `dim (self ∩ <e_c : c in columns>)`, computed as a rank deficit.
    pub fn meet_coordinate_dim(&self, columns: &[usize]) -> Result<usize> {
        let outside: Vec<usize> = (0..self.ambient).filter(|c| !columns.contains(c)).collect();
        let restricted: Vec<Vec<F>> = self
            .rows
            .iter()
            .map(|r| outside.iter().map(|&c| r[c].clone()).collect())
            .collect();
        Ok(self.dim() - rank(&restricted, outside.len())?)
    }

    pub fn meet_coordinate(&self, columns: &[usize]) -> Result<Subspace<F>> {
        self.intersect(&Subspace::coordinate(self.ambient, columns.iter().copied()))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Result<Subspace<G>> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(&f).collect())
            .collect();
        Subspace::from_rows(self.ambient, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::field::{q, Q};

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let m = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[1, 0, 1])];
        assert_eq!(rank(&m, 3).unwrap(), 2);
        let ns = nullspace(&m, 3).unwrap();
        assert_eq!(ns.len(), 1);
        for row in &m {
            assert!(dot(row, &ns[0]).is_zero());
        }
    }

    #[test]
    fn subspace_operations() {
        let a = Subspace::from_rows(4, vec![v(&[1, 0, 0, 0]), v(&[0, 1, 1, 0])]).unwrap();
        let b = Subspace::from_rows(4, vec![v(&[0, 1, 1, 0]), v(&[0, 0, 0, 1])]).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(i, Subspace::from_rows(4, vec![v(&[0, 2, 2, 0])]).unwrap());
        assert_eq!(a.sum(&b).unwrap().dim(), 3);
        assert!(a.contains(&v(&[3, 1, 1, 0])).unwrap());
        assert!(!a.contains(&v(&[0, 1, 0, 0])).unwrap());
        assert_eq!(a.meet_coordinate_dim(&[1, 2]).unwrap(), 1);
        assert_eq!(a.meet_coordinate_dim(&[0]).unwrap(), 1);
        assert_eq!(a.meet_coordinate_dim(&[3]).unwrap(), 0);
    }
}
