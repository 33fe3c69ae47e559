//! Validation sweeps behind `check`, shared with the test suites.
//!
//! Each sweep returns the number of cases it looked at, or the first
//! counterexample as a message.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::lines::count;
use crate::geometry::random::{random_isotropic, random_skew_row};
use crate::geometry::{decompose, triple_intersect, GeometryError};
use crate::qoracle::QOracle;
use crate::ring::{pairing, pieri, pieri_with, standard_exponent, triple_number, ClassVector, Family};
use crate::shapes::{SignedSequence, SkewShape, StrictPartition};

pub type SweepResult = Result<usize, String>;

/// A multiplicity exponent, as taken by [`pieri_with`].
pub type Exponent = fn(Family, &SkewShape) -> u32;

fn sp(parts: &[usize]) -> StrictPartition {
    StrictPartition::new(parts.to_vec()).expect("strict")
}

/// The expected value of the Pieri example for `family`.
pub fn reference_example(family: Family) -> BTreeMap<StrictPartition, BigInt> {
    let top = match family {
        Family::B => 1,
        Family::C => 2,
    };
    BTreeMap::from([(sp(&[4, 2, 1]), BigInt::from(2)), (sp(&[4, 3]), BigInt::from(top))])
}

/// The `n = 4` product of `(3,2)` by the special class of degree 2.
pub fn example_product(family: Family, exponent: Exponent) -> ClassVector {
    let mu = SignedSequence::parse("3,2,-1,-4", 4).expect("valid");
    pieri_with(family, &mu, 2, exponent).expect("m in range")
}

pub fn example_sweep(family: Family, exponent: Exponent) -> SweepResult {
    let got = example_product(family, exponent);
    let want = reference_example(family);
    if got.terms() != &want {
        let mut expected = ClassVector::zero(family, 4);
        for (p, c) in want {
            expected.add_term(p, c);
        }
        return Err(format!("pieri({family}, 3,2,-1,-4, 2) = {got}, expected {expected}"));
    }
    Ok(1)
}

/// `pairing(P_λ, P_ν) = [ν = λ^c]` over every pair of complementary codegree.
pub fn duality_sweep(n_max: usize) -> SweepResult {
    let mut cases = 0;
    for n in 1..=n_max {
        let all = SignedSequence::all(n);
        let top = n * (n + 1) / 2;
        for family in [Family::B, Family::C] {
            for lam in &all {
                let v = ClassVector::basis(family, lam);
                for nu in all.iter().filter(|nu| nu.codim() + lam.codim() == top) {
                    let w = ClassVector::basis(family, nu);
                    let p = pairing(&v, &w).map_err(|e| e.to_string())?;
                    let want = BigInt::from((*nu == lam.complement()) as i32);
                    if p != want {
                        return Err(format!("pairing({family}, {lam}, {nu}) = {p}, expected {want}"));
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(cases)
}

/// Column identity and coverage partition over all `μ ≤ λ`.
pub fn shape_sweep(n_max: usize) -> SweepResult {
    let mut cases = 0;
    for n in 1..=n_max {
        let all = SignedSequence::all(n);
        for lam in &all {
            for mu in &all {
                let Ok(skew) = SkewShape::new(lam, mu) else { continue };
                skew.column_identity()
                    .and_then(|_| skew.check_coverage())
                    .map_err(|e| format!("{lam} / {mu}: {e}"))?;
                cases += 1;
            }
        }
    }
    Ok(cases)
}

/// Ring coefficients against the symmetric-function oracle, both families.
pub fn oracle_sweep(n_max: usize, exponent: Exponent) -> SweepResult {
    let mut oracles: BTreeMap<usize, QOracle> = BTreeMap::new();
    let mut cases = 0;
    for n in 1..=n_max {
        for mu in SignedSequence::all(n) {
            for m in 1..=n {
                let degree = mu.partition().size() + m;
                let oracle = oracles.entry(degree).or_insert_with(|| QOracle::for_degree(degree));
                for family in [Family::B, Family::C] {
                    let want = oracle
                        .pieri(family, mu.partition(), m, n)
                        .map_err(|e| format!("oracle({family}, {mu}, {m}): {e}"))?;
                    let got = pieri_with(family, &mu, m, exponent).map_err(|e| e.to_string())?;
                    if got.terms() != &want {
                        let mut expected = ClassVector::zero(family, n);
                        for (p, c) in want {
                            expected.add_term(p, c);
                        }
                        return Err(format!("pieri({family}, {mu}, {m}) = {got}, oracle gives {expected}"));
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(cases)
}

/// `(P_μ p_a) p_b = (P_μ p_b) p_a`.
pub fn commutativity_sweep(n_max: usize) -> SweepResult {
    let mut cases = 0;
    for n in 1..=n_max {
        for mu in SignedSequence::all(n) {
            for family in [Family::B, Family::C] {
                let products: Vec<ClassVector> = (1..=n)
                    .map(|m| pieri(family, &mu, m))
                    .collect::<Result<_, _>>()
                    .map_err(|e| e.to_string())?;
                for a in 1..=n {
                    for b in a + 1..=n {
                        let ab = products[a - 1].multiply_special(b).map_err(|e| e.to_string())?;
                        let ba = products[b - 1].multiply_special(a).map_err(|e| e.to_string())?;
                        if ab != ba {
                            return Err(format!("{family}, {mu}: p_{a} p_{b} gives {ab} but p_{b} p_{a} gives {ba}"));
                        }
                        cases += 1;
                    }
                }
            }
        }
    }
    Ok(cases)
}

/// Outcome of a batch of random triple intersections.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GeometryReport {
    pub samples: usize,
    pub degenerate: usize,
    /// Samples by `δ`.
    pub by_delta: BTreeMap<usize, usize>,
    /// Samples whose count disagrees with the ring, or that failed outright.
    pub count_failures: Vec<String>,
    /// Planes checked by the decomposition, counting conjugates once.
    pub decomposed: usize,
    pub decomposition_failures: Vec<String>,
}

impl GeometryReport {
    pub fn solved(&self) -> usize {
        self.samples - self.degenerate
    }

    pub fn first_failure(&self) -> Option<&String> {
        self.count_failures.first().or(self.decomposition_failures.first())
    }
}

/// Seeded random skew rows with random isotropic `K`: the number of points
/// must equal the ring coefficient and every plane must decompose.
pub fn geometry_sweep(n_max: usize, samples: usize, seed: u64) -> GeometryReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = GeometryReport::default();
    for i in 0..samples {
        let (skew, m) = random_skew_row(1..=n_max, &mut rng);
        let (lam, mu) = (skew.lambda(), skew.mu());
        let n = skew.n();
        let k = random_isotropic(n, n + 1 - m, &mut rng);
        report.samples += 1;
        *report.by_delta.entry(skew.delta()).or_default() += 1;
        let sols = match triple_intersect(lam, mu, &k, seed.wrapping_add(i as u64)) {
            Ok(s) => s,
            Err(GeometryError::DegenerateInput(_)) | Err(GeometryError::NotGeneral(_)) => {
                report.degenerate += 1;
                continue;
            }
            Err(e) => {
                report.count_failures.push(format!("{lam} / {mu}: {e}"));
                continue;
            }
        };
        let expected = triple_number(Family::B, mu, lam, m).expect("degrees match");
        let found = BigInt::from(count(&sols));
        let power = BigInt::from(1) << (skew.delta() - 1);
        if found != expected || expected != power {
            report
                .count_failures
                .push(format!("{lam} / {mu}: {found} points, ring gives {expected}, 2^(delta-1) = {power}"));
        }
        for s in &sols {
            report.decomposed += 1;
            if let Err(e) = decompose(&s.h, lam, mu) {
                report.decomposition_failures.push(format!("{lam} / {mu}: {e}"));
            }
        }
    }
    report
}

/// Adds one to the exponent of family B.
pub fn mutated_delta(family: Family, skew: &SkewShape) -> u32 {
    standard_exponent(family, skew) + (family == Family::B) as u32
}

/// Adds one to the exponent of family C.
pub fn mutated_eps(family: Family, skew: &SkewShape) -> u32 {
    standard_exponent(family, skew) + (family == Family::C) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweeps_pass() {
        assert!(example_sweep(Family::B, standard_exponent).is_ok());
        assert!(example_sweep(Family::C, standard_exponent).is_ok());
        assert!(duality_sweep(3).unwrap() > 0);
        assert!(shape_sweep(3).unwrap() > 0);
        assert!(oracle_sweep(3, standard_exponent).unwrap() > 0);
        assert!(commutativity_sweep(3).unwrap() > 0);
    }

    #[test]
    fn mutations_are_caught() {
        let err = example_sweep(Family::B, mutated_delta).unwrap_err();
        assert!(err.contains("4*P[4,2,1]"), "{err}");
        assert!(example_sweep(Family::C, mutated_eps).is_err());
        assert!(example_sweep(Family::C, mutated_delta).is_ok());
        assert!(oracle_sweep(2, mutated_eps).is_err());
    }

    #[test]
    fn small_geometry_sample() {
        let r = geometry_sweep(3, 6, 9);
        assert_eq!(r.samples, 6);
        assert_eq!(r.first_failure(), None);
        assert!(r.degenerate < 6);
    }
}
