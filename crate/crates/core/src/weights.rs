//! The weight pair `ŵ(s)` / `w(x)`.
//!
//! `ŵ(s) = c₁ (−1)^k (s − ½)^{2k} exp{α (s − ½)²}` with `α = k/ξ²` and
//! `c₁ = α^{k+½} / Γ(k+½)`. On the critical line `ŵ(½+it) = c₁ t^{2k} e^{−αt²}`
//! is a probability density in `t` with half of its mass near `t = ±ξ`.
//! Its inverse Mellin transform is
//! `w(x) = c₂ x^{−½} exp{−ln²x/(4α)} H_{2k}(ln x / (2√α))`.

use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

use crate::error::{Error, Result};
use crate::numerics::{hermite_mantissa, integrate_breaks, log_gamma, ExtendedReal};

/// Largest `k` for which the Hermite-recurrence weight is offered.
pub const K_EXACT_MAX: u64 = 10_000;

/// Largest truncation length treated as feasible.
pub const TAU_CAP: f64 = 9_223_372_036_854_775_808.0; // 2^63

/// Quadrature tolerance for every line integral of `ŵ`.
pub const LINE_TOL: f64 = 1e-10;

/// Half-width (in units of `1/√α`) of the window kept around `t = ±ξ`.
pub const WINDOW_WIDTHS: f64 = 12.0;

/// Free parameters of `ŵ` and the derived `α = k/ξ²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightParams {
    xi: f64,
    k: u64,
    alpha: f64,
}

impl WeightParams {
    pub fn new(xi: f64, k: u64) -> Result<Self> {
        if !(xi > 0.0 && xi.is_finite()) {
            return Err(Error::argument("xi", format!("{xi} is not a positive finite number")));
        }
        if k == 0 {
            return Err(Error::argument("k", "must be at least 1"));
        }
        Ok(Self { xi, k, alpha: k as f64 / (xi * xi) })
    }

    /// Rounds a real-valued `k` (as produced by k-policies) to the nearest
    /// integer `≥ 1` and recomputes `α`.
    pub fn from_real_k(xi: f64, k: f64) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::argument("k", format!("{k} is not a positive finite number")));
        }
        Self::new(xi, (k.round() as u64).max(1))
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    fn kf(&self) -> f64 {
        self.k as f64
    }

    fn ln_gamma_k_half(&self) -> f64 {
        log_gamma(self.kf() + 0.5).expect("k + 1/2 is positive")
    }

    /// `[ξ − 12/√α, ξ + 12/√α]` clipped at zero: where `ŵ(½+it)` lives for `t > 0`.
    pub fn spectral_window(&self) -> (f64, f64) {
        let h = WINDOW_WIDTHS / self.alpha.sqrt();
        ((self.xi - h).max(0.0), self.xi + h)
    }
}

/// `c₁ = α^{k+½} / Γ(k+½)`, always positive.
pub fn c1_log(p: &WeightParams) -> ExtendedReal {
    ExtendedReal::from_log(1, (p.kf() + 0.5) * p.alpha.ln() - p.ln_gamma_k_half())
}

/// `c₂ = (−¼)^k / (2√π Γ(k+½))`.
pub fn c2_log(p: &WeightParams) -> ExtendedReal {
    let sign = if p.k % 2 == 0 { 1 } else { -1 };
    let log_mag = -(2.0 * PI.sqrt()).ln() - p.kf() * 4f64.ln() - p.ln_gamma_k_half();
    ExtendedReal::from_log(sign, log_mag)
}

/// `ŵ(s)` for any finite complex `s` (entire in `s`).
pub fn w_hat(p: &WeightParams, s: Complex64) -> Complex64 {
    let u = s - 0.5;
    if u.norm() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let log = c1_log(p).log_magnitude() + Complex64::new(0.0, PI * (p.k % 2) as f64) + 2.0 * p.kf() * u.ln()
        + p.alpha * u * u;
    log.exp()
}

/// `ŵ(½ + it) = c₁ t^{2k} e^{−αt²}`, real and non-negative.
pub fn w_hat_critical(p: &WeightParams, t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    (c1_log(p).log_magnitude() + 2.0 * p.kf() * t.abs().ln() - p.alpha * t * t).exp()
}

/// `w(x)` through the Hermite recurrence.
pub fn weight_w_exact(p: &WeightParams, x: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain("weight_w_exact", format!("x = {x} is not positive")));
    }
    let w = ExactWeight::new(p)?;
    Ok(w.eval(x.ln()))
}

/// Precomputed constants for evaluating `w(x)` at many points.
#[derive(Clone, Copy, Debug)]
pub struct ExactWeight {
    two_k: u64,
    c2_sign: f64,
    c2_log: f64,
    inv_4alpha: f64,
    inv_2sqrt_alpha: f64,
}

impl ExactWeight {
    pub fn new(p: &WeightParams) -> Result<Self> {
        if p.k > K_EXACT_MAX {
            return Err(Error::UnsupportedRegime { k: p.k, limit: K_EXACT_MAX });
        }
        let c2 = c2_log(p);
        Ok(Self {
            two_k: 2 * p.k,
            c2_sign: f64::from(c2.sign()),
            c2_log: c2.log_magnitude(),
            inv_4alpha: 0.25 / p.alpha,
            inv_2sqrt_alpha: 0.5 / p.alpha.sqrt(),
        })
    }

    /// `w(x)` given `ln x`.
    #[inline]
    pub fn eval(&self, ln_x: f64) -> f64 {
        let (m, e) = hermite_mantissa(self.two_k, ln_x * self.inv_2sqrt_alpha);
        if m == 0.0 {
            return 0.0;
        }
        let log = self.c2_log - 0.5 * ln_x - ln_x * ln_x * self.inv_4alpha + m.abs().ln() + e as f64 * LN_2;
        self.c2_sign * m.signum() * log.exp()
    }
}

/// Phase convention of the asymptotic weight.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Phase {
    /// `cos(ξ ln x)`: the form obtained by inserting the Hermite asymptotics
    /// into `w(x)`; agrees with the exact weight (e.g. `w(1) = 1/(2π)`).
    #[default]
    Derived,
    /// `cos(ξ ln x − kπ)`, which differs from `Derived` by `(−1)^k`.
    Printed,
}

/// Asymptotic weight `w̃(x) = (2π)^{−1} x^{−½} exp{−ln²x/(8α)} cos(ξ ln x)`.
pub fn weight_w_tilde(p: &WeightParams, x: f64) -> f64 {
    weight_w_tilde_with(p, x, Phase::Derived)
}

pub fn weight_w_tilde_with(p: &WeightParams, x: f64, phase: Phase) -> f64 {
    let w = TildeWeight::new(p, phase);
    w.eval(x.ln())
}

#[derive(Clone, Copy, Debug)]
pub struct TildeWeight {
    xi: f64,
    inv_8alpha: f64,
    sign: f64,
}

impl TildeWeight {
    pub fn new(p: &WeightParams, phase: Phase) -> Self {
        let sign = match phase {
            Phase::Printed if p.k % 2 == 1 => -1.0,
            _ => 1.0,
        };
        Self { xi: p.xi, inv_8alpha: 0.125 / p.alpha, sign }
    }

    #[inline]
    pub fn eval(&self, ln_x: f64) -> f64 {
        self.sign / (2.0 * PI) * (-0.5 * ln_x - ln_x * ln_x * self.inv_8alpha).exp() * (self.xi * ln_x).cos()
    }
}

/// Truncation length of the prime sum for a requested tail `ε`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Truncation {
    /// `τ(ε)`, capped at 2^63.
    pub tau: f64,
    /// `false` when the uncapped value exceeded 2^63.
    pub feasible: bool,
}

impl Truncation {
    /// Largest integer `n` to include in the prime sum.
    pub fn limit(&self) -> u64 {
        self.tau.floor().min(i64::MAX as f64) as u64
    }
}

pub(crate) fn tau_formula(alpha: f64, k: f64, xi: f64, eps: f64) -> f64 {
    let inner = (alpha + 0.5 * (4.0 * k / (eps * xi)).ln()).max(0.0);
    (4.0 * (alpha + alpha.sqrt() * inner.sqrt())).exp()
}

/// `τ(ε) = exp{4(α + √α √(α + ½ ln(4k/(εξ))))}`: beyond `τ` the tail
/// `Σ Λ(n)|w̃(n)|` is at most `ε`.
pub fn tau_truncation(p: &WeightParams, eps: f64) -> Result<Truncation> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::argument("eps", format!("{eps} is not positive")));
    }
    let tau = tau_formula(p.alpha, p.kf(), p.xi, eps);
    Ok(if tau <= TAU_CAP {
        Truncation { tau, feasible: true }
    } else {
        Truncation { tau: TAU_CAP, feasible: false }
    })
}

/// Smallest `ε` whose truncation length stays within 2^63 (infinite when none does).
pub fn eps_floor(p: &WeightParams) -> f64 {
    let l = TAU_CAP.ln() / 4.0 - p.alpha;
    if l <= 0.0 {
        return f64::INFINITY;
    }
    4.0 * p.kf() / p.xi * (-2.0 * (l * l / p.alpha - p.alpha)).exp()
}

/// `∫ ŵ(½+it) dt` over the spectral window on both sides; analytically 1.
pub fn normalization(p: &WeightParams) -> Result<f64> {
    let (lo, hi) = p.spectral_window();
    let breaks = [-hi, -p.xi, -lo, 0.0, lo, p.xi, hi];
    let mut b: Vec<f64> = breaks.to_vec();
    b.dedup();
    Ok(integrate_breaks(|t| w_hat_critical(p, t), &b, LINE_TOL)?.value)
}

/// `w(x)` by numerical inverse Mellin transform of `ŵ` along the saddle line
/// `Re s = σ₀ = (1 + ln x / α)/2`.
pub fn inverse_mellin(p: &WeightParams, x: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain("inverse_mellin", format!("x = {x} is not positive")));
    }
    let ln_x = x.ln();
    let sigma0 = 0.5 * (1.0 + ln_x / p.alpha);
    let integrand = |t: f64| {
        let s = Complex64::new(sigma0, t);
        let log_x_pow = -s * ln_x;
        w_hat(p, s) * log_x_pow.exp()
    };
    let reach = p.xi + (sigma0 - 0.5).abs() + (WINDOW_WIDTHS + 2.0) / p.alpha.sqrt();
    let breaks = [-reach, -p.xi, 0.0, p.xi, reach];
    let r = integrate_breaks(integrand, &breaks, LINE_TOL)?;
    if r.value.im.abs() > 1e-9 {
        return Err(Error::Numerical { what: "inverse Mellin (imaginary part)", achieved: r.value.im.abs(), requested: 1e-9 });
    }
    Ok(r.value.re / (2.0 * PI))
}
