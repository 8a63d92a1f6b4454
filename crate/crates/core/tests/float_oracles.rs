//! Floating-point cross-checks of the exact pipeline. Floats appear only here.

use anosov_core::exact::{isolate_real_roots, rat, Poly};
use anosov_core::matrix::{perron_data, IntMatrix};
use anosov_core::quad::{cf_expand, QuadField};
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Dominant eigenpair by power iteration, eigenvector scaled to `v_1 = 1`.
fn power_iteration(a: &IntMatrix) -> (f64, Vec<f64>) {
    let n = a.dim();
    let m: Vec<Vec<f64>> = a
        .rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_f64().unwrap()).collect())
        .collect();
    let mut v = vec![1.0; n];
    let mut lambda = 0.0;
    for _ in 0..2000 {
        let w: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| m[i][j] * v[j]).sum())
            .collect();
        lambda = w[0] / v[0];
        let s = w[0];
        v = w.iter().map(|x| x / s).collect();
    }
    (lambda, v)
}

#[test]
fn perron_data_matches_power_iteration() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 40 {
        let n = rng.gen_range(2..=4);
        let entries: Vec<i64> = (0..n * n).map(|_| rng.gen_range(1..=5)).collect();
        let rows: Vec<&[i64]> = entries.chunks(n).collect();
        let a = IntMatrix::from_i64(&rows);
        let Ok(pd) = perron_data(&a) else { continue };
        let (lambda, v) = power_iteration(&a);
        assert!(
            (pd.eigenvalue.approx(&pd.embedding, 1e-12) - lambda).abs() < 1e-8 * lambda,
            "{a}"
        );
        for (exact, float) in pd.eigenvector.iter().zip(&v) {
            assert!(
                (exact.approx(&pd.embedding, 1e-12) - float).abs() < 1e-8,
                "{a}"
            );
        }
        checked += 1;
    }
}

#[test]
fn root_isolation_matches_float_roots() {
    // (x - 1)(x - 2)(x + 3)(x^2 - 2)
    let p = Poly::new([-12, 14, 6, -9, 0, 1].iter().map(|&c| rat(c, 1)).collect());
    let mut roots = isolate_real_roots(&p).unwrap();
    for r in &mut roots {
        r.refine_to(&rat(1, 1 << 40));
    }
    let roots: Vec<f64> = roots.iter().map(|r| r.approx()).collect();
    let expect = [-3.0, -2f64.sqrt(), 1.0, 2f64.sqrt(), 2.0];
    assert_eq!(roots.len(), expect.len());
    for (r, e) in roots.iter().zip(expect) {
        assert!((r - e).abs() < 1e-9, "{r} vs {e}");
    }
}

#[test]
fn continued_fractions_match_float_expansion() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..30 {
        let d = [2, 3, 5, 6, 7, 10, 13][rng.gen_range(0..7)];
        let q = QuadField::new(d).unwrap();
        let (x, y) = (rng.gen_range(-5..=5), rng.gen_range(1..=4));
        let e = q.sqrt_d().scale(&rat(y, 1)).add_rational(&rat(x, 2));
        let cf = cf_expand(&e, q.embedding()).unwrap();
        let mut f = x as f64 / 2.0 + y as f64 * (d as f64).sqrt();
        let digits: Vec<i64> = cf
            .preperiod
            .iter()
            .chain(cf.period.iter().cycle())
            .take(6)
            .map(|a| a.to_i64().unwrap())
            .collect();
        for a in digits {
            assert_eq!(f.floor() as i64, a, "d={d} x={x} y={y}");
            f = 1.0 / (f - f.floor());
        }
    }
}
