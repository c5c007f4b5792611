use std::f64::consts::PI;

use proptest::prelude::*;

use eliashberg_tc::bounds::{k_sharp, k_star, tc_flat, tc_sharp};
use eliashberg_tc::gamma_model::{dirichlet_coefficients, dirichlet_series, ThetaSequence};
use eliashberg_tc::numerics::{bisect_monotone, riemann_zeta, sym_eig_top, SymMatrix};
use eliashberg_tc::operator::k_numeric;
use eliashberg_tc::tc_solver::tc_n;
use eliashberg_tc::verify::zeta_direct;
use eliashberg_tc::SpectralMeasure;

fn symmetric(max_n: usize) -> impl Strategy<Value = SymMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-1.0..1.0f64, n * n).prop_map(move |v| SymMatrix::from_fn(n, |i, j| v[i * n + j]))
    })
}

fn atoms() -> impl Strategy<Value = SpectralMeasure> {
    prop::collection::vec((0.05..1.0f64, 0.1..5.0f64), 1..5)
        .prop_map(|a| {
            let total: f64 = a.iter().map(|p| p.0).sum();
            let normalized: Vec<(f64, f64)> = a.iter().map(|&(w, o)| (w / total, o)).collect();
            SpectralMeasure::from_atoms(&normalized).unwrap()
        })
}

fn decreasing(max_n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..1.0f64, 1..=max_n).prop_map(|mut v| {
        v.sort_by(|a, b| b.total_cmp(a));
        v
    })
}

#[test]
fn zeta_against_ten_million_terms() {
    for s in [1.3, 1.65, 2.0, 3.0, 4.35, 5.0] {
        let a = riemann_zeta(s).unwrap();
        let b = zeta_direct(s, 10_000_000);
        assert!((a - b).abs() <= 1e-10, "s = {s}: {a} vs {b}");
    }
    assert!((riemann_zeta(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-14);
    assert!((riemann_zeta(4.0).unwrap() - PI.powi(4) / 90.0).abs() < 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn top_eigenvalue_dominates_rayleigh_quotients(m in symmetric(70), seed in prop::collection::vec(-1.0..1.0f64, 70)) {
        let n = m.order();
        let x = &seed[..n];
        let norm2: f64 = x.iter().map(|v| v * v).sum();
        prop_assume!(norm2 > 1e-6);
        let top = sym_eig_top(&m).unwrap().value;
        prop_assert!(top * norm2 >= m.quadratic_form(x) - 1e-10 * norm2);
    }

    #[test]
    fn eigenvalue_shift_covariance(m in symmetric(60), c in -5.0..5.0f64) {
        let a = sym_eig_top(&m).unwrap().value + c;
        let b = sym_eig_top(&m.shifted(c)).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-10);
    }

    #[test]
    fn bisection_inverts_affine_maps(slope in 0.1..10.0f64, offset in -3.0..3.0f64, x in 0.0..1.0f64) {
        let target = slope * x + offset;
        let r = bisect_monotone(|t| slope * t + offset, 0.0, 1.0, target, 1e-13).unwrap();
        prop_assert!((r - x).abs() <= 1e-12);
        let r = bisect_monotone(|t| -slope * t, 0.0, 1.0, -slope * x, 1e-13).unwrap();
        prop_assert!((r - x).abs() <= 1e-12);
    }

    #[test]
    fn kernel_averages_in_unit_interval_and_decreasing(m in atoms(), t in 0.01..10.0f64) {
        let k = m.kernel_averages(12, t).unwrap();
        prop_assert!(k[0] < 1.0);
        prop_assert!((k[0] - m.kernel_average(1, t).unwrap()).abs() <= 1e-15);
        for w in k.windows(2) {
            prop_assert!(w[1] < w[0] && w[1] > 0.0);
        }
    }

    #[test]
    fn frequency_scaling(m in atoms(), t in 0.05..3.0f64, s in 0.2..5.0f64, n in 1usize..12) {
        let a = k_numeric(&m, t, n).unwrap().k_value;
        let b = k_numeric(&m.scaled(s).unwrap(), s * t, n).unwrap().k_value;
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn sandwich_chain(m in atoms(), t in 0.02..5.0f64) {
        let mut chain = vec![m.kernel_average(1, t).unwrap()];
        for n in [2, 3, 4, 24] {
            chain.push(k_numeric(&m, t, n).unwrap().k_value);
        }
        chain.push(k_star(&m, t).unwrap());
        chain.push(k_sharp(&m, t).unwrap());
        for w in chain.windows(2) {
            prop_assert!(w[0] <= w[1] * (1.0 + 1e-12), "{:?}", chain);
        }
    }

    #[test]
    fn dirichlet_coefficients_nonnegative(v in decreasing(32)) {
        let n = v.len();
        let th = ThetaSequence::new(v).unwrap();
        let c = dirichlet_coefficients(&th, n).unwrap();
        prop_assert_eq!(c.len(), 2 * n - 1);
        prop_assert!(c.iter().all(|&x| x >= 0.0), "{:?}", c);
    }

    #[test]
    fn dirichlet_series_matches_quadratic_form(v in prop::collection::vec(0.0..1.0f64, 1..=32), gamma in 1.1..6.0f64) {
        let n = v.len();
        let th = ThetaSequence::new(v).unwrap();
        let c = dirichlet_coefficients(&th, n).unwrap();
        prop_assert!((dirichlet_series(&c, gamma) - th.hat_g_form(gamma)).abs() <= 1e-12);
    }

    #[test]
    fn tc_bounds_ordered(m in atoms(), lambda in 0.05..1e4f64) {
        let sharp = tc_sharp(&m, lambda).unwrap();
        let k = k_sharp(&m, sharp).unwrap();
        prop_assert!((lambda * k - 1.0).abs() <= 1e-12);
        let first = tc_n(&m, lambda, 1).unwrap();
        if let Some(t1) = first.value {
            prop_assert!(t1 < sharp);
            if let Some(flat) = tc_flat(&m, lambda) {
                prop_assert!(flat <= t1 * (1.0 + 1e-12));
            }
        } else {
            prop_assert!(lambda <= 1.0);
        }
    }

    #[test]
    fn measure_json_round_trip(m in atoms()) {
        let text = serde_json::to_string(&m).unwrap();
        let back = SpectralMeasure::from_json(&text).unwrap();
        let (a, b) = (m.atoms().unwrap(), back.atoms().unwrap());
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            prop_assert_eq!(x.omega, y.omega);
            // reloading renormalizes the mass, which may move weights by an ulp
            prop_assert!((x.weight - y.weight).abs() <= 4.0 * f64::EPSILON);
        }
    }
}
