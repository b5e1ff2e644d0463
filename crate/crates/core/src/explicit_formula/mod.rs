//! Both sides of the explicit formula for the weight pair `(ŵ, w)`.
//!
//! Zero side: `S(ξ) = √(α/2π) Σ_γ exp{−2α(γ − ξ)²}`, a sum of unit-mass
//! Gaussians centred at the zero ordinates.
//! Prime side: `S(ξ) ≈ ln(ξ/2π)/(4π) − Σ_{n ≤ τ} Λ(n) w(n) − P`, where `P` is
//! the pole term below.

mod prime_sum;
mod zeros;

pub use prime_sum::{prime_sum_range, prime_sums, Kernel, PrimeSum, SumJob, WeightKind};
pub use zeros::{smooth_count, ZeroTable, FIRST_ZERO_RANGE};

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{compensated_sum, digamma, integrate_breaks, tan_stable, ExtendedReal};
use crate::weights::{
    c1_log, eps_floor, tau_truncation, w_hat, w_hat_critical, WeightParams, K_EXACT_MAX, LINE_TOL,
};
use crate::zeta_oracle::{zeta_em, MAX_HEIGHT};

/// Half-width (in units of `1/√α`) of the zero-table coverage needed by `S(ξ)`.
pub const ZERO_WINDOW_WIDTHS: f64 = 8.0;

/// Coefficient of the pole term `P` in the identity residual.
pub const POLE_COEFF: f64 = -2.0;

/// Coefficient of `J` in the identity residual.
pub const J_COEFF: f64 = -1.0 / (2.0 * PI);

/// Coefficient of `P` in the prime-side total.
pub const POLE_IN_TOTAL: f64 = -1.0;

/// Largest `k` accepted by the Perron oracle.
pub const PERRON_K_MAX: u64 = 64;

/// `S(ξ)` from a zero table, with a bound on the contribution of ordinates
/// outside the table's coverage.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroSideSum {
    pub value: f64,
    pub tail_bound: f64,
}

fn zero_window(p: &WeightParams) -> (f64, f64) {
    let h = ZERO_WINDOW_WIDTHS / p.alpha().sqrt();
    ((p.xi() - h).max(0.0), p.xi() + h)
}

/// `√(α/2π) Σ_γ exp{−2α(γ − ξ)²}` over the table.
///
/// The table must cover `ξ ± 8/√α`; an empty table gives zero.
pub fn zero_side_s(p: &WeightParams, zeros: &ZeroTable) -> Result<ZeroSideSum> {
    if zeros.is_empty() {
        return Ok(ZeroSideSum { value: 0.0, tail_bound: 0.0 });
    }
    let (lo, hi) = zero_window(p);
    zeros.require(lo, hi)?;
    let a = p.alpha();
    let xi = p.xi();
    let scale = (a / (2.0 * PI)).sqrt();
    let sum = compensated_sum(zeros.gammas().iter().map(|&g| (-2.0 * a * (g - xi) * (g - xi)).exp()));
    // Ordinates beyond the window sit at distance ≥ d; with at most ρ zeros
    // per unit height the missing mass is ≤ 2(1 + ρ/(4αd)) e^{−2αd²}.
    let d = ZERO_WINDOW_WIDTHS / a.sqrt();
    let rho = ((hi / (2.0 * PI)).max(1.0).ln() / (2.0 * PI)) + 1.0;
    let tail = scale * 2.0 * (1.0 + rho / (4.0 * a * d)) * (-2.0 * a * d * d).exp();
    Ok(ZeroSideSum { value: scale * sum, tail_bound: tail })
}

/// `Z = c₁ Σ_γ γ^{2k} e^{−αγ²}`, i.e. `Σ_γ ŵ(½ + iγ)`.
///
/// The table must cover the spectral window; an empty table gives zero.
pub fn zero_side_exact(p: &WeightParams, zeros: &ZeroTable) -> Result<f64> {
    if zeros.is_empty() {
        return Ok(0.0);
    }
    let (lo, hi) = p.spectral_window();
    zeros.require(lo, hi)?;
    Ok(compensated_sum(zeros.gammas().iter().map(|&g| w_hat_critical(p, g))))
}

/// `ln(ξ/2π) / (4π)`.
pub fn smooth_term(xi: f64) -> Result<f64> {
    if !(xi > 0.0 && xi.is_finite()) {
        return Err(Error::domain("smooth_term", format!("xi = {xi} is not positive")));
    }
    Ok((xi / (2.0 * PI)).ln() / (4.0 * PI))
}

/// `P = c₁ (−1)^{k+1} 4^{−k} e^{α/4}`, which equals `−ŵ(1)`.
pub fn pole_term(p: &WeightParams) -> ExtendedReal {
    let sign = if p.k() % 2 == 1 { 1 } else { -1 };
    ExtendedReal::from_log(sign, c1_log(p).log_magnitude() - p.k() as f64 * 4f64.ln() + p.alpha() / 4.0)
}

/// Distance below which `g` is treated as singular.
const POLE_GUARD: f64 = 1e-8;

/// `g(s) = ln 2π + (π/2) tan(πs/2) − ψ(s) = χ'/χ(s)`, where
/// `ζ(s) = χ(s) ζ(1−s)`; symmetric under `s ↦ 1 − s`.
///
/// Singular at odd integers and at non-positive integers.
pub fn g_chi(s: Complex64) -> Result<Complex64> {
    if s.im.abs() < POLE_GUARD {
        let x = s.re;
        let odd = (x - 1.0) / 2.0;
        let near_odd = (odd - odd.round()).abs() * 2.0 < POLE_GUARD;
        let near_nonpos = x < 0.5 && (x - x.round()).abs() < POLE_GUARD;
        if near_odd || near_nonpos {
            return Err(Error::domain("g_chi", format!("s = {s} is within {POLE_GUARD} of a pole")));
        }
    }
    Ok(Complex64::new((2.0 * PI).ln(), 0.0) + 0.5 * PI * tan_stable(0.5 * PI * s) - digamma(s)?)
}

/// `J = ∫ ŵ(½ − it) g(½ − it) dt` before discarding the imaginary part.
pub fn j_integral_complex(p: &WeightParams) -> Result<Complex64> {
    let (lo, hi) = p.spectral_window();
    let xi = p.xi();
    let mut breaks = vec![-hi, -xi, -lo, 0.0, lo, xi, hi];
    breaks.dedup();
    let f = |t: f64| {
        let w = w_hat_critical(p, t);
        if w == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let g = g_chi(Complex64::new(0.5, -t)).expect("the critical line avoids the poles of g");
        w * g
    };
    Ok(integrate_breaks(f, &breaks, LINE_TOL)?.value)
}

/// `J` for `ξ ≥ 1`; the integrand is conjugate-symmetric so the imaginary
/// part must vanish.
pub fn j_integral(p: &WeightParams) -> Result<f64> {
    if p.xi() < 1.0 {
        return Err(Error::argument("xi", format!("{} is below 1", p.xi())));
    }
    let j = j_integral_complex(p)?;
    if j.im.abs() > 1e-9 {
        return Err(Error::Numerical { what: "J (imaginary part)", achieved: j.im.abs(), requested: 1e-9 });
    }
    Ok(j.re)
}

/// Terms of the prime-side evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FormulaBreakdown {
    pub smooth_term: f64,
    pub prime_sum: f64,
    pub pole_term: f64,
    /// `(√k/ξ² + e^{−√k/ξ}) |ln ξ| + ε`.
    pub error_bound: f64,
    /// `smooth_term − prime_sum − pole_term`.
    pub total: f64,
    pub terms_used: u64,
    pub eps_requested: f64,
}

/// Model error of the prime side plus the requested tail.
pub fn error_bound(p: &WeightParams, eps: f64) -> f64 {
    let sk = (p.k() as f64).sqrt();
    let xi = p.xi();
    (sk / (xi * xi) + (-sk / xi).exp()) * xi.ln().abs() + eps
}

/// Truncation limit for `ε`, or the infeasibility error naming `ξ` and the
/// smallest usable `ε`.
pub fn truncation_limit(p: &WeightParams, eps: f64) -> Result<u64> {
    let t = tau_truncation(p, eps)?;
    if !t.feasible {
        return Err(Error::TruncationInfeasible { xi: p.xi(), tau: t.tau, eps_floor: eps_floor(p) });
    }
    Ok(t.limit())
}

pub(crate) fn assemble(p: &WeightParams, eps: f64, sum: PrimeSum) -> Result<FormulaBreakdown> {
    let smooth = smooth_term(p.xi())?;
    let pole = pole_term(p).to_f64();
    Ok(FormulaBreakdown {
        smooth_term: smooth,
        prime_sum: sum.value,
        pole_term: pole,
        error_bound: error_bound(p, eps),
        total: smooth - sum.value + POLE_IN_TOTAL * pole,
        terms_used: sum.terms,
        eps_requested: eps,
    })
}

/// Prime side of `S(ξ)` with the exact weight (`use_exact`) or the
/// asymptotic one.
pub fn prime_side_s(p: &WeightParams, eps: f64, use_exact: bool) -> Result<FormulaBreakdown> {
    let kind = if use_exact { WeightKind::Exact } else { WeightKind::default() };
    prime_side_with(p, eps, kind)
}

pub fn prime_side_with(p: &WeightParams, eps: f64, kind: WeightKind) -> Result<FormulaBreakdown> {
    if kind == WeightKind::Exact && p.k() > K_EXACT_MAX {
        return Err(Error::UnsupportedRegime { k: p.k(), limit: K_EXACT_MAX });
    }
    let limit = truncation_limit(p, eps)?;
    let sum = prime_sum_range(p, kind, 0, limit)?;
    assemble(p, eps, sum)
}

/// Terms of the weighted identity `2m(1) = POLE_COEFF·P − 2Z + J_COEFF·J`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityCheck {
    /// `Σ_{n ≤ τ} Λ(n) w(n)` with the exact weight.
    pub m1: f64,
    pub pole_term: f64,
    pub zero_sum: f64,
    pub j: f64,
    pub residual: f64,
    pub terms_used: u64,
}

/// `2m(1) − [POLE_COEFF·P − 2Z + J_COEFF·J]`.
pub fn identity_residual(p: &WeightParams, zeros: &ZeroTable, eps: f64) -> Result<IdentityCheck> {
    if p.k() > K_EXACT_MAX {
        return Err(Error::UnsupportedRegime { k: p.k(), limit: K_EXACT_MAX });
    }
    let limit = truncation_limit(p, eps)?;
    let m = prime_sum_range(p, WeightKind::Exact, 0, limit)?;
    let z = zero_side_exact(p, zeros)?;
    let j = j_integral(p)?;
    let pole = pole_term(p).to_f64();
    let residual = 2.0 * m.value - (POLE_COEFF * pole - 2.0 * z + J_COEFF * j);
    Ok(IdentityCheck { m1: m.value, pole_term: pole, zero_sum: z, j, residual, terms_used: m.terms })
}

/// `ŵ(2+it) · (−ζ'/ζ)(2+it)`.
pub fn perron_integrand(p: &WeightParams, t: f64) -> Result<Complex64> {
    let s = Complex64::new(2.0, t);
    let z = zeta_em(s, 1e-14)?;
    Ok(-w_hat(p, s) * z.log_derivative())
}

/// `m(1) = (1/2π) ∫ ŵ(2+it) (−ζ'/ζ)(2+it) dt`, independent of the sieve.
pub fn perron_m1_oracle(p: &WeightParams) -> Result<f64> {
    if p.k() > PERRON_K_MAX {
        return Err(Error::argument("k", format!("{} exceeds the oracle limit {PERRON_K_MAX}", p.k())));
    }
    let a = p.alpha();
    let kf = p.k() as f64;
    let c1 = c1_log(p).log_magnitude();
    let log_size = |t: f64| c1 + kf * (2.25 + t * t).ln() + a * (2.25 - t * t);
    let step = 0.25 / a.sqrt();
    let mut reach = p.xi().max(1.5);
    while log_size(reach) > -40.0 {
        reach += step;
        if reach > MAX_HEIGHT {
            return Err(Error::argument("xi", format!("{} needs heights beyond {MAX_HEIGHT}", p.xi())));
        }
    }
    let xi = p.xi();
    let mut breaks = vec![-reach, -xi, 0.0, xi, reach];
    breaks.dedup();
    let f = |t: f64| perron_integrand(p, t).expect("Re s = 2 is inside the zeta oracle's domain");
    let r = integrate_breaks(f, &breaks, 1e-12)?;
    if r.value.im.abs() > 1e-8 {
        return Err(Error::Numerical { what: "Perron integral (imaginary part)", achieved: r.value.im.abs(), requested: 1e-8 });
    }
    Ok(r.value.re / (2.0 * PI))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::weight_w_exact;
    use crate::zeta_oracle::chi_factor;

    fn first_zeros() -> ZeroTable {
        ZeroTable::new(vec![
            14.134725141734695,
            21.022039638771556,
            25.010857580145689,
            30.424876125859512,
            32.935061587739190,
            37.586178158825671,
            40.918719012147495,
            43.327073280914999,
            48.005150881167160,
            49.773832477672302,
        ])
        .unwrap()
    }

    #[test]
    fn smooth_term_value() {
        let s = smooth_term(14.134725).unwrap();
        assert!((s - (14.134725 / (2.0 * PI)).ln() / (4.0 * PI)).abs() < 1e-15);
        assert!((s - 0.0645180).abs() < 1e-7);
        assert!(smooth_term(0.0).is_err());
    }

    #[test]
    fn pole_term_small_and_large_k() {
        let p = WeightParams::new(1.0, 1).unwrap();
        let expected = 0.25f64.exp() / (4.0 * 0.5 * PI.sqrt());
        assert!((pole_term(&p).to_f64() - expected).abs() < 1e-14);
        let q = WeightParams::new(14.134725, 200).unwrap();
        let v = pole_term(&q);
        assert_eq!(v.sign(), -1);
        assert!(v.log_magnitude() < -100.0 * 10f64.ln());
    }

    #[test]
    fn pole_term_is_minus_w_hat_at_one() {
        for (xi, k) in [(1.0, 1), (2.0, 4), (3.0, 7)] {
            let p = WeightParams::new(xi, k).unwrap();
            let w1 = w_hat(&p, Complex64::new(1.0, 0.0)).re;
            assert!((pole_term(&p).to_f64() + w1).abs() < 1e-12 * w1.abs().max(1.0));
        }
    }

    #[test]
    fn g_chi_is_log_derivative_of_chi() {
        for s in [Complex64::new(0.5, 3.0), Complex64::new(0.3, -7.0), Complex64::new(2.5, 1.0)] {
            let a = g_chi(s).unwrap();
            let b = g_chi(1.0 - s).unwrap();
            assert!((a - b).norm() < 1e-9, "{s}: {a} {b}");
            let h = 1e-5;
            let up = chi_factor(s + h).unwrap();
            let down = chi_factor(s - h).unwrap();
            let fd = (up / down).ln() / (2.0 * h);
            assert!((a - fd).norm() < 1e-7, "{s}: {a} {fd}");
        }
        assert!(g_chi(Complex64::new(1.0, 0.0)).is_err());
        assert!(g_chi(Complex64::new(3.0 + 1e-10, 0.0)).is_err());
        assert!(g_chi(Complex64::new(-2.0, 0.0)).is_err());
        assert!(g_chi(Complex64::new(2.0, 0.0)).is_ok());
    }

    #[test]
    fn j_is_real() {
        let p = WeightParams::new(14.134725, 200).unwrap();
        let j = j_integral_complex(&p).unwrap();
        assert!(j.im.abs() < 1e-9);
        assert!((j.re + 0.810549).abs() < 1e-4, "{}", j.re);
        assert!(j_integral(&WeightParams::new(0.5, 3).unwrap()).is_err());
    }

    #[test]
    fn zero_side_single_gaussian() {
        let p = WeightParams::new(14.134725141734695, 200).unwrap();
        let s = zero_side_s(&p, &first_zeros()).unwrap();
        let one = (p.alpha() / (2.0 * PI)).sqrt();
        assert!((s.value - one).abs() < 1e-12, "{}", s.value);
        assert!(s.tail_bound < 1e-50);
    }

    #[test]
    fn zero_side_requires_coverage() {
        let p = WeightParams::new(48.0, 2304).unwrap();
        assert!(matches!(zero_side_s(&p, &first_zeros()), Err(Error::Coverage { .. })));
        let empty = ZeroTable::new(vec![]).unwrap();
        assert_eq!(zero_side_s(&p, &empty).unwrap().value, 0.0);
        assert_eq!(zero_side_exact(&p, &empty).unwrap(), 0.0);
    }

    #[test]
    fn zero_side_exact_matches_w_hat() {
        let p = WeightParams::new(21.0, 441).unwrap();
        let z = zero_side_exact(&p, &first_zeros()).unwrap();
        let direct: f64 = first_zeros().gammas().iter().map(|&g| w_hat(&p, Complex64::new(0.5, g)).re).sum();
        assert!((z - direct).abs() < 1e-10 * direct.abs().max(1.0));
    }

    #[test]
    fn prime_side_matches_manual_assembly() {
        let p = WeightParams::new(14.134725, 200).unwrap();
        let b = prime_side_s(&p, 0.05, false).unwrap();
        assert!((b.total - (b.smooth_term - b.prime_sum - b.pole_term)).abs() < 1e-15);
        assert!(b.terms_used > 0);
        assert!((b.total - 0.3992).abs() < 2e-3, "{}", b.total);
    }

    #[test]
    fn exact_weight_limit() {
        let p = WeightParams::new(200.0, K_EXACT_MAX + 1).unwrap();
        assert!(matches!(prime_side_s(&p, 0.05, true), Err(Error::UnsupportedRegime { .. })));
    }

    #[test]
    fn infeasible_truncation() {
        let p = WeightParams::new(10.0, 2000).unwrap();
        match prime_side_s(&p, 0.01, false) {
            Err(Error::TruncationInfeasible { xi, eps_floor, .. }) => {
                assert_eq!(xi, 10.0);
                assert!(eps_floor.is_infinite() || eps_floor > 0.01);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn perron_integrand_real_on_axis() {
        let p = WeightParams::new(2.0, 4).unwrap();
        let v = perron_integrand(&p, 0.0).unwrap();
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn perron_matches_direct_sum() {
        let p = WeightParams::new(2.0, 4).unwrap();
        let oracle = perron_m1_oracle(&p).unwrap();
        let limit = truncation_limit(&p, 1e-10).unwrap();
        let direct = prime_sum_range(&p, WeightKind::Exact, 0, limit).unwrap().value;
        assert!((oracle - direct).abs() < 1e-8, "{oracle} {direct}");
        assert!(perron_m1_oracle(&WeightParams::new(2.0, 65).unwrap()).is_err());
    }

    #[test]
    fn identity_coefficients_minimise_residual() {
        let p = WeightParams::new(2.0, 4).unwrap();
        let m1 = perron_m1_oracle(&p).unwrap();
        let pole = pole_term(&p).to_f64();
        let z = zero_side_exact(&p, &first_zeros()).unwrap();
        let j = j_integral(&p).unwrap();
        let residual = |pc: f64, jc: f64| (2.0 * m1 - (pc * pole - 2.0 * z + jc * j)).abs();
        let frozen = residual(POLE_COEFF, J_COEFF);
        assert!(frozen < 1e-8, "{frozen}");
        for pc in [-2.0, -1.0, 1.0, 2.0] {
            for jc in [-1.0 / (2.0 * PI), 1.0 / (2.0 * PI), -1.0 / PI, 1.0 / PI] {
                if (pc, jc) != (POLE_COEFF, J_COEFF) {
                    assert!(residual(pc, jc) > 100.0 * frozen, "{pc} {jc}");
                }
            }
        }
    }

    #[test]
    fn identity_residual_small() {
        let p = WeightParams::new(2.0, 4).unwrap();
        let r = identity_residual(&p, &first_zeros(), 1e-10).unwrap();
        assert!(r.residual.abs() < 1e-8, "{r:?}");
        let loose = identity_residual(&p, &first_zeros(), 1e-4).unwrap();
        assert!(loose.residual.abs() >= r.residual.abs() - 1e-12);
    }

    #[test]
    fn exact_weight_at_one() {
        let p = WeightParams::new(3.0, 5).unwrap();
        assert!((weight_w_exact(&p, 1.0).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-12);
    }
}
