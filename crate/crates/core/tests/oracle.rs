use isopieri::cli::sweeps;
use isopieri::qoracle::{max_strict_length, oracle_pieri, QOracle};
use isopieri::ring::{standard_exponent, Family};
use isopieri::shapes::StrictPartition;
use num_bigint::BigInt;

fn strict_partitions(size: usize, below: usize, out: &mut Vec<Vec<usize>>, cur: &mut Vec<usize>) {
    if size == 0 {
        out.push(cur.clone());
        return;
    }
    for p in (1..=size.min(below)).rev() {
        cur.push(p);
        strict_partitions(size - p, p - 1, out, cur);
        cur.pop();
    }
}

fn all_strict(size: usize) -> Vec<StrictPartition> {
    let mut out = Vec::new();
    strict_partitions(size, size, &mut out, &mut Vec::new());
    out.into_iter().map(|v| StrictPartition::new(v).unwrap()).collect()
}

#[test]
fn leading_monomials_are_triangular() {
    for size in 0..=12 {
        let mut oracle = QOracle::for_degree(size);
        for lam in all_strict(size) {
            let q = oracle.q_lambda(&lam).unwrap();
            let (lead, c) = q.leading().unwrap();
            let parts: Vec<u32> = lam.parts().iter().map(|&p| p as u32).collect();
            assert_eq!(lead, &parts, "{lam}");
            assert_eq!(c, 1i128 << lam.len(), "{lam}");
        }
    }
}

#[test]
fn basis_elements_expand_to_themselves() {
    for size in 1..=8 {
        let mut oracle = QOracle::for_degree(size);
        for lam in all_strict(size) {
            let q = oracle.q_lambda(&lam).unwrap();
            let e = oracle.expand_in_q_basis(&q, size).unwrap();
            assert_eq!(e.len(), 1);
            assert_eq!(e[&lam], 1);
        }
    }
}

#[test]
fn variable_count_suffices() {
    assert_eq!(max_strict_length(0), 1);
    for d in 1..=15 {
        let k = max_strict_length(d);
        assert!(k * (k + 1) / 2 <= d);
        assert!((k + 1) * (k + 2) / 2 > d);
    }
}

#[test]
fn oracle_agrees_with_ring_to_four() {
    assert!(sweeps::oracle_sweep(4, standard_exponent).unwrap() > 0);
}

#[test]
fn unit_times_special() {
    for m in 1..=5 {
        for family in [Family::B, Family::C] {
            let got = oracle_pieri(family, &StrictPartition::empty(), m, 5).unwrap();
            let want = [(StrictPartition::new(vec![m]).unwrap(), BigInt::from(1))].into_iter().collect();
            assert_eq!(got, want);
        }
    }
}
