use isopieri::cli::sweeps;
use isopieri::ring::{pieri, skew_rows, standard_exponent, triple_number, ClassVector, Family};
use isopieri::shapes::{SignedSequence, SkewShape};
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn is_power_of_two(c: &BigInt) -> bool {
    c > &BigInt::zero() && (c & (c - BigInt::one())).is_zero()
}

#[test]
fn sequence_counts_and_complements() {
    for n in 1..=6 {
        let all = SignedSequence::all(n);
        assert_eq!(all.len(), 1 << n);
        let top = n * (n + 1) / 2;
        for s in &all {
            let c = s.complement();
            assert_eq!(c.complement(), *s);
            assert_eq!(s.codim() + c.codim(), top);
        }
    }
}

#[test]
fn complement_reverses_bruhat_order() {
    for n in 1..=5 {
        let all = SignedSequence::all(n);
        for a in &all {
            for b in &all {
                let ab = a.bruhat_leq(b).unwrap();
                assert_eq!(ab, b.complement().bruhat_leq(&a.complement()).unwrap(), "{a} {b}");
                if ab {
                    assert!(a.codim() <= b.codim());
                }
            }
        }
    }
}

#[test]
fn column_identity_and_coverage_to_six() {
    assert!(sweeps::shape_sweep(6).unwrap() > 2000);
}

#[test]
fn skew_row_components_are_horizontal_enough() {
    for n in 1..=6 {
        let all = SignedSequence::all(n);
        for lam in &all {
            for mu in &all {
                let Ok(skew) = SkewShape::new(lam, mu) else { continue };
                if !skew.is_skew_row() {
                    continue;
                }
                assert_eq!(skew.delta(), skew.components().len());
                let with_first = skew.components().iter().filter(|c| c.meets_first_column).count();
                assert_eq!(skew.epsilon() + with_first, skew.delta(), "{lam} / {mu}");
                assert_eq!(skew.phi(), skew.fixed_points().len());
            }
        }
    }
}

#[test]
fn duality_to_six() {
    assert!(sweeps::duality_sweep(6).unwrap() > 0);
}

#[test]
fn commutativity_to_five() {
    assert!(sweeps::commutativity_sweep(5).unwrap() > 0);
}

#[test]
fn pieri_terms_are_homogeneous_powers_of_two() {
    for n in 1..=6 {
        for mu in SignedSequence::all(n) {
            for m in 1..=n {
                for family in [Family::B, Family::C] {
                    let v = pieri(family, &mu, m).unwrap();
                    for (parts, c) in v.terms() {
                        let lam = SignedSequence::from_strict_partition(parts.clone(), n).unwrap();
                        assert_eq!(lam.codim(), mu.codim() + m);
                        assert!(mu.bruhat_leq(&lam).unwrap());
                        assert!(is_power_of_two(c), "{family} {mu} {m}: {c}");
                    }
                }
            }
        }
    }
}

#[test]
fn chevalley_coefficients() {
    for n in 1..=6 {
        for mu in SignedSequence::all(n) {
            for skew in skew_rows(&mu, 1) {
                let lam = skew.lambda();
                assert_eq!(triple_number(Family::B, &mu, lam, 1).unwrap(), BigInt::one());
                let (_, col) = skew.boxes()[0];
                let want = if col == 1 { 1 } else { 2 };
                assert_eq!(triple_number(Family::C, &mu, lam, 1).unwrap(), BigInt::from(want), "{lam} / {mu}");
            }
        }
    }
}

#[test]
fn coefficients_follow_the_exponent() {
    for n in 1..=5 {
        for mu in SignedSequence::all(n) {
            for m in 1..=n {
                for skew in skew_rows(&mu, m) {
                    for family in [Family::B, Family::C] {
                        let c = triple_number(family, &mu, skew.lambda(), m).unwrap();
                        assert_eq!(c, BigInt::one() << standard_exponent(family, &skew));
                    }
                    let ratio = triple_number(Family::C, &mu, skew.lambda(), m).unwrap()
                        / triple_number(Family::B, &mu, skew.lambda(), m).unwrap();
                    let expected = if skew.zero_is_fixed() { 2 } else { 1 };
                    assert_eq!(ratio, BigInt::from(expected));
                }
            }
        }
    }
}

#[test]
fn non_skew_rows_have_zero_coefficient() {
    let lam = SignedSequence::parse("3,2,-1,-4", 4).unwrap();
    let mu = SignedSequence::parse("1,-2,-3,-4", 4).unwrap();
    assert!(!SkewShape::new(&lam, &mu).unwrap().is_skew_row());
    assert_eq!(triple_number(Family::B, &mu, &lam, 4).unwrap(), BigInt::zero());
}

#[test]
fn json_round_trip_over_products() {
    for n in 1..=4 {
        for mu in SignedSequence::all(n) {
            for m in 1..=n {
                for family in [Family::B, Family::C] {
                    let v = pieri(family, &mu, m).unwrap();
                    assert_eq!(ClassVector::from_json(&v.to_json()).unwrap(), v);
                }
            }
        }
    }
}
