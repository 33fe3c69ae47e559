//! Seeded random isotropic planes and skew-row instances.

use rand::seq::SliceRandom;
use rand::Rng;

use super::field::{Field, Q};
use super::linalg::Subspace;
use super::space::Space;
use crate::ring::skew_rows;
use crate::shapes::{SignedSequence, SkewShape};

/// `x - 2 β(x, u) / β(u, u) · u`.
fn reflect(space: Space, x: &[Q], u: &[Q], uu: &Q) -> Vec<Q> {
    let f = Q::from_i64(2) * space.form_value(x, u) / uu.clone();
    x.iter().zip(u).map(|(a, b)| a.clone() - f.clone() * b.clone()).collect()
}

/// An isotropic `r`-plane: `<e_1, ..., e_r>` moved by `2n + 1` random
/// reflections in vectors with entries in `{±1, ±2}`.
pub fn random_isotropic<R: Rng>(n: usize, r: usize, rng: &mut R) -> Subspace<Q> {
    let space = Space::Orthogonal(n);
    let mut rows: Vec<Vec<Q>> = (1..=r as i64).map(|i| space.basis_vector(i)).collect();
    let mut applied = 0;
    while applied < 2 * n + 1 {
        let u: Vec<Q> = (0..space.dim())
            .map(|_| Q::from_i64(*[-2, -1, 1, 2].choose(rng).expect("nonempty")))
            .collect();
        let uu = space.form_value(&u, &u);
        if uu.is_zero() {
            continue;
        }
        rows = rows.iter().map(|x| reflect(space, x, &u, &uu)).collect();
        applied += 1;
    }
    Subspace::from_rows(space.dim(), rows).expect("rational row reduction")
}

/// A skew row `λ/μ` drawn uniformly from all skew rows of a random `n` in
/// `n_range`, together with `m = |λ| - |μ|`.
pub fn random_skew_row<R: Rng>(n_range: std::ops::RangeInclusive<usize>, rng: &mut R) -> (SkewShape, usize) {
    random_skew_row_where(n_range, rng, |_| true)
}

/// Like [`random_skew_row`], restricted to shapes passing `keep`.
pub fn random_skew_row_where<R: Rng>(
    n_range: std::ops::RangeInclusive<usize>,
    rng: &mut R,
    keep: impl Fn(&SkewShape) -> bool,
) -> (SkewShape, usize) {
    loop {
        let n = rng.gen_range(n_range.clone());
        let all: Vec<(SkewShape, usize)> = SignedSequence::all(n)
            .iter()
            .flat_map(|mu| (1..=n).flat_map(move |m| skew_rows(mu, m).into_iter().map(move |s| (s, m))))
            .filter(|(s, _)| keep(s))
            .collect();
        if let Some(pick) = all.choose(rng) {
            return pick.clone();
        }
    }
}
