//! Lines of an isotropic plane `K` on the zero locus `Z_{λ/μ}`, and the
//! triple intersections `X_μ ∩ X'_{λ^c} ∩ X_K` built from them.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebraic::AlgNum;
use super::field::{Field, Q};
use super::forms::FormSystem;
use super::linalg::{combine, nullspace, rank, Subspace};
use super::reconstruct::reconstruct_from_line;
use super::space::{Space, Variant};
use super::upoly::UPoly;
use super::{GeometryError, Result};
use crate::shapes::{SignedSequence, SkewShape};

const CHART_ATTEMPTS: usize = 12;

/// A Galois orbit of lines: the point is defined over `Q[t]/(modulus)` and
/// stands for `degree` conjugate lines.
#[derive(Debug, Clone)]
pub struct Line {
    pub point: Vec<AlgNum>,
    pub modulus: Option<Arc<UPoly>>,
}

impl Line {
    pub fn degree(&self) -> usize {
        self.modulus.as_ref().and_then(|m| m.degree()).unwrap_or(1)
    }

    /// The point when the line is rational.
    pub fn rational_point(&self) -> Option<Vec<Q>> {
        self.point.iter().map(AlgNum::as_rational).collect()
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.point.iter().map(|x| x.to_string()).collect();
        write!(f, "<{}>", cells.join(" "))?;
        if let Some(m) = &self.modulus {
            write!(f, " where t is a root of {m}")?;
        }
        Ok(())
    }
}

/// Runs `task` over `Q[t]/(f)` for each `f`, splitting `f` whenever the task
/// runs into a zero divisor.
fn over_factors<T>(
    factors: Vec<UPoly>,
    mut task: impl FnMut(&Arc<UPoly>) -> Result<T>,
) -> Result<Vec<(Arc<UPoly>, T)>> {
    let mut work = factors;
    work.reverse();
    let mut out = Vec::new();
    while let Some(g) = work.pop() {
        let g = Arc::new(g);
        match task(&g) {
            Ok(t) => out.push((g, t)),
            Err(GeometryError::ZeroDivisor(Some(h))) if h.degree() > Some(0) && h.degree() < g.degree() => {
                let (rest, _) = g.div_rem(&h);
                work.push(rest.monic());
                work.push(h.monic());
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn zero_or_split(x: &AlgNum) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    match x.zero_divisor_factor() {
        Some(h) => Err(GeometryError::ZeroDivisor(Some(h))),
        None => Ok(false),
    }
}

/// Scales so that the first nonzero coordinate is 1.
fn normalize(v: &[AlgNum]) -> Result<Vec<AlgNum>> {
    for x in v {
        if zero_or_split(x)? {
            continue;
        }
        let inv = x.inv().ok_or(GeometryError::ZeroDivisor(x.zero_divisor_factor()))?;
        return Ok(v.iter().map(|y| y.clone() * inv.clone()).collect());
    }
    Err(GeometryError::NotGeneral("zero vector".into()))
}

/// Symmetric matrix of the doubled polar form on the given vectors.
fn gram(fs: &FormSystem, b: &super::forms::QuadraticForm, ws: &[Vec<Q>]) -> Vec<Vec<Q>> {
    ws.iter()
        .map(|u| ws.iter().map(|w| fs.polar(b, u, w)).collect())
        .collect()
}

fn congruent(m: &[Vec<Q>], p: &[Vec<Q>]) -> Vec<Vec<Q>> {
    // P^T M P
    let e = m.len();
    (0..e)
        .map(|a| {
            (0..e)
                .map(|b| {
                    let mut acc = Q::from_i64(0);
                    for i in 0..e {
                        for j in 0..e {
                            acc = acc + p[i][a].clone() * m[i][j].clone() * p[j][b].clone();
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn random_chart(e: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Q>> {
    loop {
        let p: Vec<Vec<Q>> = (0..e)
            .map(|_| (0..e).map(|_| Q::from_i64(rng.gen_range(-4..=4))).collect())
            .collect();
        if rank(&p, e).expect("rationals") == e {
            return p;
        }
    }
}

/// Candidate points `s'` in chart coordinates, or `None` when the chart is unlucky.
fn solve_in_chart(ms: &[Vec<Vec<Q>>], e: usize) -> Result<Option<Vec<(UPoly, Vec<AlgNum>)>>> {
    match e {
        2 => {
            let m = &ms[0];
            let f = UPoly::new(vec![m[1][1].clone(), Q::from_i64(2) * m[0][1].clone(), m[0][0].clone()]);
            if f.is_zero() {
                return Err(GeometryError::DegenerateInput("a quadric vanishes on the whole plane".into()));
            }
            if f.degree() != Some(2) || !f.is_squarefree() {
                return Ok(None);
            }
            let mut out = Vec::new();
            for (g, x) in over_factors(f.factor_small(), |g| Ok(AlgNum::generator(g)))? {
                out.push((UPoly::clone(&g), vec![x, AlgNum::one()]));
            }
            Ok(Some(out))
        }
        3 => {
            // C_i = a_i y^2 + b_i(x) y + c_i(x) in the chart (x, y, 1)
            let parts = |m: &Vec<Vec<Q>>| {
                let two = Q::from_i64(2);
                let a = UPoly::constant(m[1][1].clone());
                let b = UPoly::new(vec![two.clone() * m[1][2].clone(), two.clone() * m[0][1].clone()]);
                let c = UPoly::new(vec![m[2][2].clone(), two * m[0][2].clone(), m[0][0].clone()]);
                (a, b, c)
            };
            let (a1, b1, c1) = parts(&ms[0]);
            let (a2, b2, c2) = parts(&ms[1]);
            let ac = a1.mul(&c2).sub(&a2.mul(&c1));
            let ab = a1.mul(&b2).sub(&a2.mul(&b1));
            let bc = b1.mul(&c2).sub(&b2.mul(&c1));
            let res = ac.mul(&ac).sub(&ab.mul(&bc));
            if res.is_zero() {
                return Err(GeometryError::DegenerateInput("the conics share a component".into()));
            }
            if res.degree() != Some(4) || !res.is_squarefree() {
                return Ok(None);
            }
            let solved = over_factors(res.factor_small(), |g| {
                let x = AlgNum::generator(g);
                let num = AlgNum::from_poly(g, ac.clone());
                let den = AlgNum::from_poly(g, UPoly::zero().sub(&ab));
                if zero_or_split(&den)? {
                    return Ok(None);
                }
                let y = num * den.inv().ok_or(GeometryError::ZeroDivisor(den.zero_divisor_factor()))?;
                Ok(Some(vec![x, y, AlgNum::one()]))
            })?;
            let mut out = Vec::new();
            for (g, p) in solved {
                match p {
                    Some(p) => out.push((UPoly::clone(&g), p)),
                    None => return Ok(None),
                }
            }
            Ok(Some(out))
        }
        _ => unreachable!(),
    }
}

/// All lines `<v> ⊆ K` on which every form of `fs` vanishes.
///
/// The linear forms cut the parameter space of `K` down to dimension `e`;
/// on the remaining `P^{e-1}` the quadrics are solved by elimination, in a
/// random (seeded) chart so that no solution sits at infinity.
pub fn lines_in_k(k: &Subspace<Q>, fs: &FormSystem, seed: u64) -> Result<Vec<Line>> {
    let space = Space::Orthogonal(fs.n());
    if k.ambient() != space.dim() {
        return Err(GeometryError::WrongLength {
            expected: space.dim(),
            found: k.ambient(),
        });
    }
    let r = k.dim();
    let lin: Vec<Vec<Q>> = fs
        .linear
        .iter()
        .map(|a| k.rows().iter().map(|row| fs.linear_value(a, row)).collect())
        .collect();
    let params = nullspace(&lin, r)?;
    let ws: Vec<Vec<Q>> = params.iter().map(|p| combine(p, k.rows(), space.dim())).collect();
    let e = ws.len();
    if e == 0 {
        return Ok(Vec::new());
    }
    let grams: Vec<Vec<Vec<Q>>> = fs.quadratic.iter().map(|b| gram(fs, b, &ws)).collect();

    let on_all = |p: &[AlgNum]| -> Result<bool> {
        for g in &grams {
            let mut acc = AlgNum::zero();
            for a in 0..e {
                for b in 0..e {
                    acc = acc + AlgNum::from_q(&g[a][b]) * p[a].clone() * p[b].clone();
                }
            }
            if !zero_or_split(&acc)? {
                return Ok(false);
            }
        }
        Ok(true)
    };

    let to_line = |modulus: Option<Arc<UPoly>>, s: &[AlgNum]| -> Result<Line> {
        let mut point = vec![AlgNum::zero(); space.dim()];
        for (c, w) in s.iter().zip(&ws) {
            for (p, x) in point.iter_mut().zip(w) {
                *p = p.clone() + c.clone() * AlgNum::from_q(x);
            }
        }
        Ok(Line {
            point: normalize(&point)?,
            modulus: modulus.filter(|m| m.degree() > Some(1)),
        })
    };

    if e == 1 {
        let s = [AlgNum::one()];
        return Ok(if on_all(&s)? { vec![to_line(None, &s)?] } else { Vec::new() });
    }
    if e > 3 {
        return Err(GeometryError::Unsupported(format!("{e} parameters after the linear forms")));
    }

    // pick e - 1 linearly independent quadrics
    let mut chosen: Vec<&Vec<Vec<Q>>> = Vec::new();
    let mut flat: Vec<Vec<Q>> = Vec::new();
    for g in &grams {
        if chosen.len() == e - 1 {
            break;
        }
        let mut trial = flat.clone();
        trial.push(g.iter().flatten().cloned().collect());
        if rank(&trial, e * e)? == trial.len() {
            flat = trial;
            chosen.push(g);
        }
    }
    if chosen.len() < e - 1 {
        return Err(GeometryError::DegenerateInput("positive-dimensional solution set".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..CHART_ATTEMPTS {
        let p = random_chart(e, &mut rng);
        let ms: Vec<Vec<Vec<Q>>> = chosen.iter().map(|m| congruent(m, &p)).collect();
        let Some(points) = solve_in_chart(&ms, e)? else {
            continue;
        };
        let mut lines = Vec::new();
        for (g, sp) in points {
            let found = over_factors(vec![g], |g| {
                let sp: Vec<AlgNum> = sp.iter().map(|x| x.reduce(g)).collect();
                // s = P s'
                let s: Vec<AlgNum> = (0..e)
                    .map(|a| {
                        (0..e).fold(AlgNum::zero(), |acc, b| acc + AlgNum::from_q(&p[a][b]) * sp[b].clone())
                    })
                    .collect();
                if !on_all(&s)? {
                    return Ok(None);
                }
                Ok(Some(to_line(Some(g.clone()), &s)?))
            })?;
            lines.extend(found.into_iter().filter_map(|(_, l)| l));
        }
        lines.sort_by_key(|l| (l.degree(), l.to_string()));
        return Ok(lines);
    }
    Err(GeometryError::DegenerateInput("no chart separates the solutions".into()))
}

/// One point of `X_μ ∩ X'_{λ^c} ∩ X_K` (with its conjugates).
#[derive(Debug, Clone)]
pub struct Solution {
    pub line: Line,
    pub h: Subspace<AlgNum>,
}

impl Solution {
    pub fn degree(&self) -> usize {
        self.line.degree()
    }
}

/// The triple intersection, each solution verified to be isotropic, in both
/// Schubert varieties and to meet `K`.
pub fn triple_intersect(
    lambda: &SignedSequence,
    mu: &SignedSequence,
    k: &Subspace<Q>,
    seed: u64,
) -> Result<Vec<Solution>> {
    let skew = SkewShape::new(lambda, mu)?;
    let n = skew.n();
    let space = Space::Orthogonal(n);
    let m = lambda.codim() - mu.codim();
    if k.dim() + m != n + 1 {
        return Err(GeometryError::WrongDimension {
            expected: n + 1 - m,
            found: k.dim(),
        });
    }
    if !space.is_isotropic(k) {
        return Err(GeometryError::NotApplicable("K is not isotropic".into()));
    }
    let fs = FormSystem::new(&skew);
    let lines = lines_in_k(k, &fs, seed)?;
    if !skew.is_skew_row() {
        if lines.is_empty() {
            return Ok(Vec::new());
        }
        return Err(GeometryError::NotGeneral(format!(
            "{} lines on the zero locus of a non-skew-row shape",
            lines.len()
        )));
    }
    let k_alg = k.map(AlgNum::from_q)?;
    let mut out = Vec::new();
    for line in lines {
        let start = line.modulus.as_deref().cloned().map(|m| vec![m]).unwrap_or_else(|| vec![UPoly::var()]);
        let solved = over_factors(start, |g| {
            let point: Vec<AlgNum> = match &line.modulus {
                Some(_) => line.point.iter().map(|x| x.reduce(g)).collect(),
                None => line.point.clone(),
            };
            let h = reconstruct_from_line(lambda, mu, &point)?;
            let ok = space.is_isotropic(&h)
                && space.in_schubert(&h, mu, Variant::Primal)?
                && space.in_schubert(&h, lambda, Variant::Dual)?
                && h.contains(&point)?
                && k_alg.contains(&point)?;
            if !ok {
                return Err(GeometryError::MembershipFailed(format!("solution through {line}")));
            }
            Ok((point, h))
        })?;
        for (g, (point, h)) in solved {
            let modulus = line.modulus.as_ref().map(|_| g);
            out.push(Solution {
                line: Line { point, modulus },
                h,
            });
        }
    }
    Ok(out)
}

/// Total number of points, counting conjugates.
pub fn count(solutions: &[Solution]) -> usize {
    solutions.iter().map(Solution::degree).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::field::q;
    use crate::geometry::random::{random_isotropic, random_skew_row};
    use crate::ring::{triple_number, Family};
    use num_bigint::BigInt;

    fn seq(t: &str, n: usize) -> SignedSequence {
        SignedSequence::parse(t, n).unwrap()
    }

    fn vecq(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    fn example_k() -> Subspace<Q> {
        Subspace::from_rows(
            9,
            vec![
                vecq(&[0, 1, 0, 1, 0, 0, 1, 0, 1]),
                vecq(&[1, 1, 0, 1, 2, -2, 1, 1, -1]),
                vecq(&[0, 0, 1, 0, 0, -1, 0, 0, 0]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn worked_example_lines() {
        let (lam, mu) = (seq("4,2,1,-3", 4), seq("3,2,-1,-4", 4));
        let fs = FormSystem::new(&SkewShape::new(&lam, &mu).unwrap());
        let k = example_k();
        assert!(Space::Orthogonal(4).is_isotropic(&k));
        let lines = lines_in_k(&k, &fs, 1).unwrap();
        let mut points: Vec<Vec<Q>> = lines.iter().map(|l| l.rational_point().unwrap()).collect();
        points.sort();
        let mut expected = vec![vecq(&[0, 1, 0, 1, 0, 0, 1, 0, 1]), vecq(&[1, 1, 0, 1, 2, -2, 1, 1, -1])];
        expected.sort();
        assert_eq!(points, expected);
        let sols = triple_intersect(&lam, &mu, &k, 1).unwrap();
        assert_eq!(count(&sols), 2);
    }

    #[test]
    fn non_skew_row_has_no_lines() {
        let (lam, mu) = (seq("3,2,-1", 3), seq("1,-2,-3", 3));
        let skew = SkewShape::new(&lam, &mu).unwrap();
        assert!(!skew.is_skew_row());
        let m = lam.codim() - mu.codim();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let k = random_isotropic(3, 4 - m, &mut rng);
        assert!(triple_intersect(&lam, &mu, &k, 0).unwrap().is_empty());
    }

    #[test]
    fn random_sweep() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut degenerate = 0;
        for i in 0..40 {
            let (skew, m) = random_skew_row(1..=5, &mut rng);
            let n = skew.n();
            let k = random_isotropic(n, n + 1 - m, &mut rng);
            match triple_intersect(skew.lambda(), skew.mu(), &k, i) {
                Ok(sols) => {
                    let expected = triple_number(Family::B, skew.mu(), skew.lambda(), m).unwrap();
                    assert_eq!(BigInt::from(count(&sols)), expected, "{} / {}", skew.lambda(), skew.mu());
                }
                Err(GeometryError::DegenerateInput(_)) => degenerate += 1,
                Err(e) => panic!("{} / {}: {e}", skew.lambda(), skew.mu()),
            }
        }
        assert!(degenerate < 4, "{degenerate}");
    }
}
