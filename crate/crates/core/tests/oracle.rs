//! The zeta oracle against the sieve and against the smooth zero count.

mod common;

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use common::oracle_zeros;
use explicit_zeros::explicit_formula::smooth_count;
use explicit_zeros::sieve::prime_power_iter;
use explicit_zeros::zeta_oracle::{chi_factor, find_zeros, gamma_n_estimate, zeta, zeta_em};

#[test]
fn log_derivative_matches_dirichlet_series() {
    let terms: Vec<(u64, f64)> = prime_power_iter(1_000_000).unwrap().collect();
    for t in [0.0, 5.0, 20.0] {
        let s = Complex64::new(2.0, t);
        let oracle = zeta_em(s, 1e-14).unwrap().log_derivative();
        let series: Complex64 = terms.iter().map(|&(n, l)| l * (-s * (n as f64).ln()).exp()).sum();
        // mean tail ∫_N^∞ x^{-s} dx of the truncated series
        let tail = (-(s - 1.0) * 1e6f64.ln()).exp() / (s - 1.0);
        let full = series + tail;
        assert!((oracle + full).norm() < 1e-6, "t = {t}: {oracle} vs {}", -full);
    }
}

#[test]
fn zero_table_gaps() {
    let zeros = oracle_zeros(100);
    let g = zeros.gammas();
    for w in g.windows(2) {
        assert!(w[1] > w[0]);
        let t = w[1];
        let mean_gap = 2.0 * PI / (t / (2.0 * PI)).ln();
        let gap = w[1] - w[0];
        assert!(gap < 5.0 * mean_gap && gap > mean_gap / 5.0, "gap {gap} at {t}");
    }
    assert!((g.len() as f64 - smooth_count(g[g.len() - 1])).abs() <= 2.0);
    assert!(zeros.density_consistent());
}

#[test]
fn zeros_located_precisely() {
    // the first zero at 1e-8 against a published value
    let t = find_zeros(30.0).unwrap().table;
    assert!((t.gammas()[0] - 14.134725141734693).abs() < 1e-8);
    assert!((t.gammas()[2] - 25.010857580145688).abs() < 1e-8);
    assert!(find_zeros(10.0).unwrap().table.is_empty());
}

#[test]
fn gamma_estimate_band() {
    let zeros = oracle_zeros(29);
    for n in 2..=29u64 {
        let r = gamma_n_estimate(n).unwrap() / zeros.gammas()[n as usize - 1];
        assert!((0.5..=2.0).contains(&r), "n = {n}: {r}");
    }
    for n in 3..200 {
        assert!(gamma_n_estimate(n + 1).unwrap() > gamma_n_estimate(n).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn functional_equation(re in -1.0f64..2.0, im in 2.0f64..50.0, neg in any::<bool>()) {
        let s = Complex64::new(re, if neg { -im } else { im });
        let lhs = zeta(s).unwrap();
        let rhs = chi_factor(s).unwrap() * zeta(1.0 - s).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-8);
    }

    #[test]
    fn estimated_error_within_tolerance(re in -1.0f64..3.0, im in -100.0f64..100.0) {
        prop_assume!((re - 1.0).abs() > 1e-3 || im.abs() > 1e-3);
        let z = zeta_em(Complex64::new(re, im), 1e-12).unwrap();
        prop_assert!(z.est_error <= 1e-10);
    }
}
