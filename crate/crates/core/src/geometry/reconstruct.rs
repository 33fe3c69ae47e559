//! Recovering `H ∈ X_μ ∩ X'_{λ^c}` from a line it contains, splitting `H`
//! along the orthogonal decomposition `V = V_φ ⊕ V_0 ⊕ ⊕_d V_d`, and the
//! passage to the symplectic space.

use super::coords::{classical_solve, local_rows, solve_isotropy};
use super::field::Field;
use super::forms::FormSystem;
use super::linalg::{nullspace, Subspace};
use super::space::{Space, Variant};
use super::{GeometryError, Result};
use crate::shapes::{Component, SignedSequence, SkewShape};

fn skew_row(lambda: &SignedSequence, mu: &SignedSequence) -> Result<SkewShape> {
    let skew = SkewShape::new(lambda, mu)?;
    if !skew.is_skew_row() {
        return Err(GeometryError::ShapeNotSupported(format!("{lambda} / {mu} is not a skew row")));
    }
    Ok(skew)
}

/// Vectors `w ∈ <e_i : i ∈ within>` with `β(w, s) = 0` for every `s` in `rows`.
pub fn annihilator<F: Field>(space: Space, rows: &[Vec<F>], within: &[i64]) -> Result<Vec<Vec<F>>> {
    let col = |i: i64| space.column(i).expect("index in range");
    let eqs: Vec<Vec<F>> = rows
        .iter()
        .map(|s| {
            within
                .iter()
                .map(|&i| F::from_i64(space.pairing(i)) * s[col(-i)].clone())
                .collect()
        })
        .collect();
    Ok(nullspace(&eqs, within.len())?
        .into_iter()
        .map(|w| {
            let mut v = vec![F::zero(); space.dim()];
            for (&i, x) in within.iter().zip(w) {
                v[col(i)] = x;
            }
            v
        })
        .collect())
}

fn positive_pairs(skew: &SkewShape, comp: &Component) -> Vec<(i64, i64)> {
    comp.rows
        .iter()
        .map(|&r| (skew.lambda().entry(r), skew.mu().entry(r)))
        .collect()
}

/// `H_d = L ⊕ L^⊥` for a component off the first column, with `L ∋ v⁺` and `L ⊥ v⁻`.
fn component_part<F: Field>(space: Space, skew: &SkewShape, comp: &Component, v: &[F]) -> Result<Vec<Vec<F>>> {
    let col = |i: i64| space.column(i).expect("index in range");
    let mut target = vec![F::zero(); space.dim()];
    let mut functional = vec![F::zero(); space.dim()];
    for &t in &comp.col {
        let t = t as i64;
        target[col(t)] = v[col(t)].clone();
        functional[col(-t)] = v[col(-t)].clone();
    }
    let (_, l) = classical_solve(space, &positive_pairs(skew, comp), &target, &functional)?;
    let negatives: Vec<i64> = comp.col.iter().map(|&t| -(t as i64)).collect();
    let mut rows = annihilator(space, &l, &negatives)?;
    rows.extend(l);
    Ok(rows)
}

fn reflect<F: Field>(space: Space, v: &[F]) -> Vec<F> {
    let mut w = v.to_vec();
    for i in space.indices() {
        w[space.column(i).expect("in range")] = v[space.column(-i).expect("in range")].clone();
    }
    w
}

/// `H_0` for the component meeting the first column, solved inside `B_l`.
fn first_column_part<F: Field>(
    space: Space,
    skew: &SkewShape,
    comp: &Component,
    v: &[F],
) -> Result<Vec<Vec<F>>> {
    let l = comp.max_column();
    let li = l as i64;
    let lam = skew.lambda().entries();
    let mu = skew.mu().entries();
    let keep: Vec<usize> = (0..lam.len()).filter(|&i| lam[i].abs() <= li).collect();
    let keep_mu: Vec<usize> = (0..mu.len()).filter(|&i| mu[i].abs() <= li).collect();
    if keep != keep_mu {
        return Err(GeometryError::ShapeNotSupported("first-column component does not split off".into()));
    }
    let sub_lam = SignedSequence::from_entries(&keep.iter().map(|&i| lam[i]).collect::<Vec<_>>(), l)?;
    let sub_mu = SignedSequence::from_entries(&keep.iter().map(|&i| mu[i]).collect::<Vec<_>>(), l)?;
    let sub = Space::Orthogonal(l);
    let sub_v: Vec<F> = sub
        .indices()
        .into_iter()
        .map(|i| v[space.column(i).expect("in range")].clone())
        .collect();

    // the chart wants a last row of length 1; e_j <-> e_{-j} swaps the two ends
    let last_row_one = |l: &SignedSequence, m: &SignedSequence| l.entry(m.positive_len() + 1) == 1;
    let mut result = Err(GeometryError::ShapeNotSupported("no chart for the first-column component".into()));
    if last_row_one(&sub_lam, &sub_mu) {
        result = solve_first_column(sub, &sub_lam, &sub_mu, &sub_v);
    }
    let (rl, rm) = (sub_mu.complement(), sub_lam.complement());
    if result.is_err() && last_row_one(&rl, &rm) {
        result = solve_first_column(sub, &rl, &rm, &reflect(sub, &sub_v))
            .map(|rows| rows.iter().map(|r| reflect(sub, r)).collect());
    }
    let rows = result?;
    Ok(rows
        .into_iter()
        .map(|r| {
            let mut full = vec![F::zero(); space.dim()];
            for (i, x) in sub.indices().into_iter().zip(r) {
                full[space.column(i).expect("in range")] = x;
            }
            full
        })
        .collect())
}

fn solve_first_column<F: Field>(space: Space, lambda: &SignedSequence, mu: &SignedSequence, v: &[F]) -> Result<Vec<Vec<F>>> {
    let n = space.n();
    let col = |i: i64| space.column(i).expect("index in range");
    let scale = v[col(-1)]
        .inv()
        .ok_or_else(|| GeometryError::NotGeneral("line has no e_-1 component".into()))?;
    let v: Vec<F> = v.iter().map(|x| x.clone() * scale.clone()).collect();
    let z = v[col(0)].clone() * F::from_q(&super::field::q_frac(1, 2));
    let mut target = vec![F::zero(); space.dim()];
    let mut functional = vec![F::zero(); space.dim()];
    for t in 1..=n as i64 {
        target[col(t)] = v[col(t)].clone();
        functional[col(-t)] = v[col(-t)].clone();
    }
    target[col(1)] = target[col(1)].clone() + F::from_i64(2) * z.clone() * z.clone();
    let k = mu.positive_len();
    let pairs: Vec<(i64, i64)> = (1..=k).map(|j| (lambda.entry(j), mu.entry(j))).collect();
    let (xs, _) = classical_solve(space, &pairs, &target, &functional)?;
    let mut x = vec![F::zero(); n];
    x[0] = z;
    for (t, val) in xs {
        x[t as usize] = val;
    }
    let y = solve_isotropy(lambda, mu, &x)?;
    local_rows(lambda, mu, &x, &y)
}

/// The unique `H ∈ X_μ ∩ X'_{λ^c}` containing the general isotropic line `<v> ⊆ Z_{λ/μ}`.
pub fn reconstruct_from_line<F: Field>(lambda: &SignedSequence, mu: &SignedSequence, v: &[F]) -> Result<Subspace<F>> {
    let skew = skew_row(lambda, mu)?;
    let space = Space::Orthogonal(skew.n());
    if v.len() != space.dim() {
        return Err(GeometryError::WrongLength {
            expected: space.dim(),
            found: v.len(),
        });
    }
    if !FormSystem::new(&skew).vanishes_at(v) {
        return Err(GeometryError::VNotInZ);
    }
    let mut rows: Vec<Vec<F>> = skew
        .fixed_points()
        .iter()
        .filter(|&&j| j > 0)
        .map(|&j| space.basis_vector(mu.entry(j)))
        .collect();
    for comp in skew.components() {
        if comp.meets_first_column {
            rows.extend(first_column_part(space, &skew, comp, v)?);
        } else {
            rows.extend(component_part(space, &skew, comp, v)?);
        }
    }
    let h = Subspace::from_rows(space.dim(), rows)?;
    if h.dim() != space.n() {
        return Err(GeometryError::NotGeneral(format!("reconstructed a {}-plane", h.dim())));
    }
    if !h.contains(v)? {
        return Err(GeometryError::NotGeneral("line is not in the reconstructed plane".into()));
    }
    Ok(h)
}

/// The pieces `H ∩ V_φ`, `H ∩ V_0` and `(H ∩ V_d⁺, H ∩ V_d⁻)` per component off
/// the first column. Here `V_d⁺` is spanned by the `e_t` and `V_d⁻` by the
/// `e_{-t}`, `t ∈ col(d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition<F: Field> {
    pub phi: Subspace<F>,
    pub zero: Subspace<F>,
    pub components: Vec<(Subspace<F>, Subspace<F>)>,
}

pub fn decompose<F: Field>(h: &Subspace<F>, lambda: &SignedSequence, mu: &SignedSequence) -> Result<Decomposition<F>> {
    let skew = SkewShape::new(lambda, mu)?;
    let space = Space::Orthogonal(skew.n());
    let col = |i: i64| space.column(i).expect("index in range");
    let fail = |what: String| Err(GeometryError::MembershipFailed(what));
    if h.dim() != space.n() {
        return Err(GeometryError::WrongDimension {
            expected: space.n(),
            found: h.dim(),
        });
    }

    let fixed: Vec<i64> = skew
        .fixed_points()
        .iter()
        .filter(|&&j| j > 0)
        .map(|&j| mu.entry(j))
        .collect();
    let mut v_phi: Vec<usize> = fixed.iter().flat_map(|&m| [col(m), col(-m)]).collect();
    if skew.zero_is_fixed() {
        v_phi.push(col(0));
    }
    let phi = h.meet_coordinate(&v_phi)?;
    if phi != Subspace::coordinate(space.dim(), fixed.iter().map(|&m| col(m))) {
        return fail("H ∩ V_phi is not spanned by the e_{mu_j}".into());
    }
    let mut total = phi.clone();

    let zero = match skew.first_column_component() {
        Some(c) => {
            let l = c.max_column() as i64;
            let part = h.meet_coordinate(&space.interval(-l, l))?;
            if part.dim() != l as usize {
                return fail(format!("dim H ∩ V_0 = {}, expected {l}", part.dim()));
            }
            part
        }
        None => Subspace::zero(space.dim()),
    };
    total = total.sum(&zero)?;

    let mut components = Vec::new();
    for comp in skew.components().iter().filter(|c| !c.meets_first_column) {
        let pos: Vec<usize> = comp.col.iter().map(|&t| col(t as i64)).collect();
        let neg: Vec<usize> = comp.col.iter().map(|&t| col(-(t as i64))).collect();
        let hp = h.meet_coordinate(&pos)?;
        let hm = h.meet_coordinate(&neg)?;
        let rows = comp.rows.len();
        if hp.dim() != rows || hm.dim() != comp.col.len() - rows {
            return fail(format!(
                "component at columns {:?}: dims {} and {}, expected {} and {}",
                comp.columns,
                hp.dim(),
                hm.dim(),
                rows,
                comp.col.len() - rows
            ));
        }
        let within: Vec<i64> = comp.col.iter().map(|&t| t as i64).collect();
        let perp = Subspace::from_rows(space.dim(), annihilator(space, hm.rows(), &within)?)?;
        if perp != hp {
            return fail(format!("component at columns {:?}: parts are not mutual annihilators", comp.columns));
        }
        total = total.sum(&hp)?.sum(&hm)?;
        components.push((hp, hm));
    }
    if &total != h {
        return fail("the parts do not reassemble to H".into());
    }
    Ok(Decomposition { phi, zero, components })
}

/// The image of `H` under `e_i ↦ f_i`, `e_0 ↦ 0`, checked to be isotropic and in
/// `Y_μ ∩ Y'_{λ^c}`. Requires that no component meets the first column.
pub fn symplectic_projection<F: Field>(
    h: &Subspace<F>,
    lambda: &SignedSequence,
    mu: &SignedSequence,
) -> Result<Subspace<F>> {
    let skew = SkewShape::new(lambda, mu)?;
    if !skew.zero_is_fixed() {
        return Err(GeometryError::NotApplicable("a component meets the first column".into()));
    }
    let v = Space::Orthogonal(skew.n());
    let w = Space::Symplectic(skew.n());
    let c0 = v.column(0).expect("in range");
    if h.rows().iter().any(|r| !r[c0].is_zero()) {
        return Err(GeometryError::NotApplicable("H has rows with an e_0 coefficient".into()));
    }
    let rows = h
        .rows()
        .iter()
        .map(|r| {
            w.indices()
                .into_iter()
                .map(|i| r[v.column(i).expect("in range")].clone())
                .collect()
        })
        .collect();
    let image = Subspace::from_rows(w.dim(), rows)?;
    if !w.is_isotropic(&image)
        || !w.in_schubert(&image, mu, Variant::Primal)?
        || !w.in_schubert(&image, lambda, Variant::Dual)?
    {
        return Err(GeometryError::MembershipFailed("symplectic image".into()));
    }
    Ok(image)
}
