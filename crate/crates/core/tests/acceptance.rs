//! Acceptance criteria 1-10, one PASS/FAIL line each.
//!
//! Run with `cargo test --test acceptance`. The process exits nonzero if any
//! criterion fails.

use std::time::{Duration, Instant};

use isopieri::cli::sweeps::{self, GeometryReport};
use isopieri::geometry::{lines_in_k, reconstruct_from_line, solve_isotropy, FormSystem, Subspace, Q};
use isopieri::ring::{standard_exponent, Family};
use isopieri::shapes::{SignedSequence, SkewShape};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GEOMETRY_SEED: u64 = 2024;

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn seq(t: &str, n: usize) -> SignedSequence {
    SignedSequence::parse(t, n).unwrap()
}

fn vecq(xs: &[i64]) -> Vec<Q> {
    xs.iter().map(|&x| Q::from_integer(x.into())).collect()
}

fn example(family: Family) -> (Verdict, Duration) {
    sweeps::example_product(family, standard_exponent);
    let (got, t) = timed(|| sweeps::example_product(family, standard_exponent));
    let ok = got.terms() == &sweeps::reference_example(family);
    (verdict(ok, got.to_string()), t)
}

fn sweep(result: sweeps::SweepResult) -> Verdict {
    match result {
        Ok(cases) => verdict(true, format!("{cases} cases, 0 mismatches")),
        Err(msg) => verdict(false, msg),
    }
}

fn worked_example_h(x: i64, z: i64) -> Subspace<Q> {
    Subspace::from_rows(
        9,
        vec![
            vecq(&[0, 0, 0, 0, 0, 0, 0, -x, 1]),
            vecq(&[0, 0, 0, 0, 0, 0, 1, 0, 0]),
            vecq(&[0, 0, 0, 1, 2 * z, -2 * z * z, 0, 0, 0]),
            vecq(&[x, 1, 0, 0, 0, 0, 0, 0, 0]),
        ],
    )
    .unwrap()
}

fn worked_example() -> Verdict {
    let (lam, mu) = (seq("4,2,1,-3", 4), seq("3,2,-1,-4", 4));
    let v1 = vecq(&[0, 1, 0, 1, 0, 0, 1, 0, 1]);
    let v2 = vecq(&[1, 1, 0, 1, 2, -2, 1, 1, -1]);
    let v3 = vecq(&[0, 0, 1, 0, 0, -1, 0, 0, 0]);
    let k = Subspace::from_rows(9, vec![v1.clone(), v2.clone(), v3]).unwrap();
    let fs = FormSystem::new(&SkewShape::new(&lam, &mu).unwrap());
    let lines = match lines_in_k(&k, &fs, 1) {
        Ok(l) => l,
        Err(e) => return verdict(false, e.to_string()),
    };
    let mut points: Vec<Vec<Q>> = lines.iter().filter_map(|l| l.rational_point()).collect();
    points.sort();
    let mut want = vec![v1.clone(), v2.clone()];
    want.sort();
    if lines.len() != 2 || points != want {
        return verdict(false, format!("lines {}", lines.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(", ")));
    }
    let h1 = reconstruct_from_line(&lam, &mu, &v1);
    let h2 = reconstruct_from_line(&lam, &mu, &v2);
    let ok = h1.as_ref().ok() == Some(&worked_example_h(0, 0)) && h2.as_ref().ok() == Some(&worked_example_h(1, 1));
    verdict(ok, "lines <v1>, <v2>; H1 at x=z=0, H2 at x=z=1")
}

fn triangular_solve() -> Verdict {
    let (lam, mu) = (seq("6,5,3,1,-2,-4", 6), seq("5,3,1,-2,-4,-6", 6));
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut done = 0;
    while done < 10 {
        let x: Vec<Q> = (0..6)
            .map(|_| Q::new(rng.gen_range(-30i64..=30).into(), rng.gen_range(1i64..=7).into()))
            .collect();
        if x.iter().any(|v| *v == Q::from_integer(0.into())) {
            continue;
        }
        let y = match solve_isotropy(&lam, &mu, &x) {
            Ok(y) => y,
            Err(e) => return verdict(false, e.to_string()),
        };
        let y2 = -x[1].clone() / x[2].clone();
        let y3 = -x[2].clone();
        let y4 = -y3.clone() * x[3].clone() / x[4].clone();
        let y5 = -x[4].clone();
        let y6 = -x[5].clone() * y5.clone();
        if y != vec![y2, y3, y4, y5, y6] {
            return verdict(false, format!("mismatch at x = {x:?}"));
        }
        done += 1;
    }
    verdict(true, "10 random x, exact agreement")
}

fn count_agreement(r: &GeometryReport) -> Verdict {
    let rate = r.degenerate as f64 / r.samples as f64;
    let deltas: Vec<String> = r.by_delta.iter().map(|(d, c)| format!("delta={d}:{c}")).collect();
    let detail = format!(
        "{} samples, {} degenerate ({:.0}%), {}",
        r.samples,
        r.degenerate,
        100.0 * rate,
        deltas.join(" ")
    );
    match r.count_failures.first() {
        Some(msg) => verdict(false, format!("{detail}; {msg}")),
        None => verdict(rate < 0.10, detail),
    }
}

fn mutation() -> Verdict {
    let b = sweeps::example_sweep(Family::B, sweeps::mutated_delta);
    let c = sweeps::example_sweep(Family::C, sweeps::mutated_eps);
    verdict(b.is_err() && c.is_err(), "delta+1 fails criterion 1, eps+1 fails criterion 2")
}

fn main() {
    let mut failed = 0;
    let mut report = |id: u32, name: &str, v: Verdict, t: Duration, budget: Duration| {
        let ok = v.ok && t < budget;
        if !ok {
            failed += 1;
        }
        let status = if ok { "PASS" } else { "FAIL" };
        let over = if t < budget { "" } else { " over budget" };
        println!("criterion {id:>2} {status} {name}: {} [{:.3?} / {budget:?}{over}]", v.detail, t);
    };

    let ms = Duration::from_millis;
    let secs = Duration::from_secs;

    let (v, t) = example(Family::B);
    report(1, "Pieri example B", v, t, ms(1));
    let (v, t) = example(Family::C);
    report(2, "Pieri example C", v, t, ms(1));
    let (v, t) = timed(|| sweep(sweeps::oracle_sweep(5, standard_exponent)));
    report(3, "oracle equivalence n<=5", v, t, secs(120));
    let (v, t) = timed(|| sweep(sweeps::duality_sweep(6)));
    report(4, "duality n<=6", v, t, secs(10));
    let (v, t) = timed(|| sweep(sweeps::shape_sweep(6)));
    report(5, "column identity and coverage n<=6", v, t, secs(30));
    let (v, t) = timed(worked_example);
    report(6, "geometric worked example", v, t, secs(1));
    let (v, t) = timed(triangular_solve);
    report(7, "triangular solve n=6", v, t, secs(1));
    let (geo, t) = timed(|| sweeps::geometry_sweep(6, 100, GEOMETRY_SEED));
    report(8, "count agreement", count_agreement(&geo), t, secs(120));
    let v = match geo.decomposition_failures.first() {
        Some(msg) => verdict(false, msg.clone()),
        None => verdict(geo.decomposed > 0, format!("{} solutions decomposed, conjugates checked together; timed with criterion 8", geo.decomposed)),
    };
    report(9, "decomposition identities", v, Duration::ZERO, secs(1));
    let (v, t) = timed(mutation);
    report(10, "mutation sensitivity", v, t, secs(1));

    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
