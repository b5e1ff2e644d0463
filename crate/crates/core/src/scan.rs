//! Profiles of the prime-side `S(ξ, k)` over a ξ-grid and zero detection by
//! half-unit-mass accumulation.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::explicit_formula::{assemble, prime_sums, truncation_limit, Kernel, SumJob, WeightKind};
use crate::weights::{tau_formula, WeightParams, K_EXACT_MAX};

/// Rule assigning `k` to each scan point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum KPolicy {
    /// `k = ⌈α₀ ξ²⌉`.
    FixedAlpha(f64),
    /// `k = ⌈2ξ²⌉`.
    TwiceSquare,
    /// `k = ⌈β (ξ ln(ξ ln ξ))²⌉` with `β > 1`.
    LogSquared { beta_policy: f64 },
}

impl Default for KPolicy {
    fn default() -> Self {
        KPolicy::FixedAlpha(1.0)
    }
}

impl KPolicy {
    pub fn validate(&self) -> Result<()> {
        match *self {
            KPolicy::FixedAlpha(a) if !(a > 0.0 && a.is_finite()) => {
                Err(Error::argument("alpha", format!("{a} is not positive")))
            }
            KPolicy::LogSquared { beta_policy } if !(beta_policy > 1.0 && beta_policy.is_finite()) => {
                Err(Error::argument("beta_policy", format!("{beta_policy} does not exceed 1")))
            }
            _ => Ok(()),
        }
    }

    /// Real-valued `k` before rounding up.
    pub fn k_real(&self, xi: f64) -> Result<f64> {
        self.validate()?;
        Ok(match *self {
            KPolicy::FixedAlpha(a) => a * xi * xi,
            KPolicy::TwiceSquare => 2.0 * xi * xi,
            KPolicy::LogSquared { beta_policy } => {
                let inner = xi * xi.ln();
                if !(inner > 1.0) {
                    return Err(Error::argument("xi", format!("{xi}: xi ln xi must exceed 1")));
                }
                let v = xi * inner.ln();
                beta_policy * v * v
            }
        })
    }

    pub fn k_for(&self, xi: f64) -> Result<u64> {
        let k = self.k_real(xi)?.ceil();
        if !(k < u64::MAX as f64) {
            return Err(Error::argument("k", format!("policy gives k = {k} at xi = {xi}")));
        }
        Ok((k as u64).max(1))
    }
}

/// Prime-side `S` on a uniform grid.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanProfile {
    pub xis: Vec<f64>,
    pub values: Vec<f64>,
    pub ks: Vec<u64>,
    pub terms_used: Vec<u64>,
    pub error_bounds: Vec<f64>,
    pub step: f64,
    pub policy: KPolicy,
    pub eps: f64,
}

impl ScanProfile {
    pub fn len(&self) -> usize {
        self.xis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xis.is_empty()
    }

    pub fn alpha(&self, i: usize) -> f64 {
        self.ks[i] as f64 / (self.xis[i] * self.xis[i])
    }
}

/// Grid `lo, lo + step, …` with `⌊(hi − lo)/step⌋ + 1` points.
pub fn grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(lo >= 2.0 && lo.is_finite()) {
        return Err(Error::argument("lo", format!("{lo} is below 2")));
    }
    if !(hi > lo && hi.is_finite()) {
        return Err(Error::argument("hi", format!("{hi} does not exceed lo = {lo}")));
    }
    if !(step > 0.0 && step <= 0.1) {
        return Err(Error::argument("step", format!("{step} is outside (0, 0.1]")));
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|i| lo + i as f64 * step).collect())
}

/// Evaluates the prime side at every grid point with the asymptotic weight.
pub fn scan_profile(lo: f64, hi: f64, step: f64, policy: KPolicy, eps: f64) -> Result<ScanProfile> {
    scan_profile_with(lo, hi, step, policy, eps, WeightKind::default())
}

/// As [`scan_profile`] with a chosen weight. Every grid point is validated
/// before any summation starts; one sieve pass serves all points.
pub fn scan_profile_with(
    lo: f64,
    hi: f64,
    step: f64,
    policy: KPolicy,
    eps: f64,
    kind: WeightKind,
) -> Result<ScanProfile> {
    policy.validate()?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::argument("eps", format!("{eps} is not positive")));
    }
    let xis = grid(lo, hi, step)?;
    let mut params = Vec::with_capacity(xis.len());
    let mut jobs = Vec::with_capacity(xis.len());
    for &xi in &xis {
        let p = WeightParams::new(xi, policy.k_for(xi)?)?;
        if kind == WeightKind::Exact && p.k() > K_EXACT_MAX {
            return Err(Error::UnsupportedRegime { k: p.k(), limit: K_EXACT_MAX });
        }
        let limit = truncation_limit(&p, eps)?;
        jobs.push(SumJob { kernel: Kernel::new(&p, kind)?, lo: 0, hi: limit });
        params.push(p);
    }
    let sums = prime_sums(&jobs)?;
    let mut out = ScanProfile {
        xis,
        values: Vec::with_capacity(params.len()),
        ks: Vec::with_capacity(params.len()),
        terms_used: Vec::with_capacity(params.len()),
        error_bounds: Vec::with_capacity(params.len()),
        step,
        policy,
        eps,
    };
    for (p, s) in params.iter().zip(sums) {
        let b = assemble(p, eps, s)?;
        out.values.push(b.total);
        out.ks.push(p.k());
        out.terms_used.push(b.terms_used);
        out.error_bounds.push(b.error_bound);
    }
    Ok(out)
}

/// A detected zero: a peak whose windowed mass is close to one half.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroCandidate {
    pub location: f64,
    pub mass: f64,
    pub window: (f64, f64),
}

/// Peaks must exceed this fraction of the Gaussian height `√(α/2π)`.
pub const PEAK_FRACTION: f64 = 0.5;

/// Window half-width in units of `1/√α`.
pub const MASS_WINDOW: f64 = 1.5;

/// Maxima closer than this (in units of `1/√α`) to a higher one are dropped.
pub const SUPPRESSION_RADIUS: f64 = 1.0;

/// Accepted windowed masses.
pub const MASS_BAND: (f64, f64) = (0.35, 0.65);

fn height(alpha: f64) -> f64 {
    (alpha / (2.0 * PI)).sqrt()
}

/// Linear interpolation of the profile at `x` inside the grid.
fn interpolate(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let i = xs.partition_point(|&v| v <= x).clamp(1, xs.len() - 1);
    let (x0, x1) = (xs[i - 1], xs[i]);
    let t = (x - x0) / (x1 - x0);
    ys[i - 1] + t * (ys[i] - ys[i - 1])
}

/// Trapezoidal integral of the piecewise-linear profile over `[a, b]`.
fn trapezoid(xs: &[f64], ys: &[f64], a: f64, b: f64) -> f64 {
    let mut pts = vec![(a, interpolate(xs, ys, a))];
    pts.extend(xs.iter().zip(ys).filter(|(&x, _)| x > a && x < b).map(|(&x, &y)| (x, y)));
    pts.push((b, interpolate(xs, ys, b)));
    pts.windows(2).map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1 + w[1].1)).sum()
}

/// Vertex of the parabola through the peak and its neighbours.
fn refine_peak(xs: &[f64], ys: &[f64], i: usize) -> f64 {
    let (a, b, c) = (ys[i - 1], ys[i], ys[i + 1]);
    let denom = a - 2.0 * b + c;
    if denom >= 0.0 {
        return xs[i];
    }
    let shift = 0.5 * (a - c) / denom;
    xs[i] + shift.clamp(-0.5, 0.5) * (xs[i + 1] - xs[i - 1]) / 2.0
}

fn argmin(ys: &[f64], from: usize, to: usize) -> usize {
    (from..=to).fold(from, |m, j| if ys[j] < ys[m] { j } else { m })
}

/// Local maxima above `0.5 √(α/2π)` whose mass over `±3/(2√α)` lies in
/// `[0.35, 0.65]`. Only the highest maximum within `1/√α` counts; windows of
/// neighbouring peaks closer than `3/√α` are cut at the lowest point between
/// them.
pub fn detect_zeros(profile: &ScanProfile) -> Result<Vec<ZeroCandidate>> {
    let xs = &profile.xis;
    let ys = &profile.values;
    let n = xs.len();
    for i in 0..n {
        let max_step = 1.0 / (4.0 * profile.alpha(i).sqrt());
        if profile.step > max_step {
            return Err(Error::Resolution { xi: xs[i], step: profile.step, max_step });
        }
    }
    if n < 3 {
        return Ok(Vec::new());
    }
    let mut maxima: Vec<usize> = (1..n - 1)
        .filter(|&i| ys[i] > ys[i - 1] && ys[i] >= ys[i + 1] && ys[i] > PEAK_FRACTION * height(profile.alpha(i)))
        .collect();
    // Rounding k up to an integer makes α, and with it the Gaussian height,
    // jump along the grid; the resulting sawtooth maxima are suppressed by
    // keeping only the highest maximum within 1/√α.
    maxima.sort_by(|&a, &b| ys[b].total_cmp(&ys[a]).then(a.cmp(&b)));
    let mut peaks: Vec<usize> = Vec::new();
    for i in maxima {
        let radius = SUPPRESSION_RADIUS / profile.alpha(i).sqrt();
        if peaks.iter().all(|&j| (xs[i] - xs[j]).abs() >= radius) {
            peaks.push(i);
        }
    }
    peaks.sort_unstable();
    let mut out = Vec::new();
    for (pi, &i) in peaks.iter().enumerate() {
        let half = MASS_WINDOW / profile.alpha(i).sqrt();
        let mut lo = (xs[i] - half).max(xs[0]);
        let mut hi = (xs[i] + half).min(xs[n - 1]);
        if pi > 0 {
            let j = peaks[pi - 1];
            if xs[i] - xs[j] < 2.0 * half {
                lo = lo.max(xs[argmin(ys, j, i)]);
            }
        }
        if let Some(&j) = peaks.get(pi + 1) {
            if xs[j] - xs[i] < 2.0 * half {
                hi = hi.min(xs[argmin(ys, i, j)]);
            }
        }
        let mass = trapezoid(xs, ys, lo, hi);
        if mass >= MASS_BAND.0 && mass <= MASS_BAND.1 {
            out.push(ZeroCandidate { location: refine_peak(xs, ys, i), mass, window: (lo, hi) });
        }
    }
    out.sort_by(|a, b| a.location.total_cmp(&b.location));
    Ok(out)
}

/// `τ(ε)` at `k = β (ξ₀ ln(ξ₀ ln ξ₀))²`: the number of integers the prime sum
/// must reach under the log-squared policy. Infinite on overflow.
pub fn required_primes_estimate(xi0: f64, beta_policy: f64, eps: f64) -> Result<f64> {
    if !(xi0 > std::f64::consts::E && xi0.is_finite()) {
        return Err(Error::argument("xi0", format!("{xi0} does not exceed e")));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::argument("eps", format!("{eps} is not positive")));
    }
    let k = KPolicy::LogSquared { beta_policy }.k_real(xi0)?;
    Ok(tau_formula(k / (xi0 * xi0), k, xi0, eps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::tau_truncation;

    #[test]
    fn policies() {
        assert_eq!(KPolicy::FixedAlpha(1.0).k_for(14.134725).unwrap(), 200);
        assert_eq!(KPolicy::TwiceSquare.k_for(14.134725).unwrap(), 400);
        let tr = KPolicy::LogSquared { beta_policy: 1.5 };
        let v = 10.0 * (10.0 * 10f64.ln()).ln();
        assert_eq!(tr.k_for(10.0).unwrap(), (1.5 * v * v).ceil() as u64);
        assert!(KPolicy::LogSquared { beta_policy: 1.0 }.k_for(10.0).is_err());
        assert!(KPolicy::FixedAlpha(0.0).k_for(10.0).is_err());
        for xi in [2.0, 2.5, 7.0, 99.0] {
            assert!(KPolicy::FixedAlpha(1e-6).k_for(xi).unwrap() >= 1);
            assert!(tr.k_for(xi).unwrap() >= 1);
        }
    }

    #[test]
    fn grid_arithmetic() {
        assert_eq!(grid(13.0, 16.0, 0.02).unwrap().len(), 151);
        assert_eq!(grid(13.98, 14.0, 0.02).unwrap().len(), 2);
        assert!(grid(1.5, 3.0, 0.1).is_err());
        assert!(grid(3.0, 3.0, 0.1).is_err());
        assert!(grid(3.0, 4.0, 0.2).is_err());
        assert!(grid(3.0, 4.0, 0.0).is_err());
    }

    #[test]
    fn two_point_profile() {
        let p = scan_profile(14.0, 14.02, 0.02, KPolicy::FixedAlpha(1.0), 0.05).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.values.len(), 2);
    }

    #[test]
    fn profile_matches_pointwise() {
        let prof = scan_profile(13.9, 14.3, 0.1, KPolicy::FixedAlpha(1.0), 0.05).unwrap();
        for i in 0..prof.len() {
            let p = WeightParams::new(prof.xis[i], prof.ks[i]).unwrap();
            let b = crate::explicit_formula::prime_side_s(&p, 0.05, false).unwrap();
            assert_eq!(b.total, prof.values[i]);
            assert!(prof.terms_used[i] as f64 <= tau_truncation(&p, 0.05).unwrap().tau);
        }
    }

    #[test]
    fn infeasible_grid_point_named() {
        match scan_profile(10.0, 10.2, 0.1, KPolicy::LogSquared { beta_policy: 1.5 }, 0.05) {
            Err(Error::TruncationInfeasible { xi, .. }) => assert_eq!(xi, 10.0),
            other => panic!("{other:?}"),
        }
    }

    fn synthetic(centres: &[f64], lo: f64, hi: f64, step: f64, alpha: f64) -> ScanProfile {
        let xis = grid(lo, hi, step).unwrap();
        let values = xis
            .iter()
            .map(|&x| centres.iter().map(|&c| height(alpha) * (-2.0 * alpha * (x - c) * (x - c)).exp()).sum())
            .collect();
        let ks = xis.iter().map(|&x| (alpha * x * x).round() as u64).collect();
        ScanProfile {
            terms_used: vec![0; xis.len()],
            error_bounds: vec![0.0; xis.len()],
            xis,
            values,
            ks,
            step,
            policy: KPolicy::FixedAlpha(alpha),
            eps: 0.05,
        }
    }

    #[test]
    fn flat_profile_has_no_candidates() {
        let mut p = synthetic(&[], 10.0, 12.0, 0.05, 1.0);
        p.values.iter_mut().for_each(|v| *v = 0.0);
        assert!(detect_zeros(&p).unwrap().is_empty());
    }

    #[test]
    fn synthetic_gaussians_detected() {
        let p = synthetic(&[14.134725, 21.02204], 10.0, 25.0, 0.02, 1.0);
        let c = detect_zeros(&p).unwrap();
        assert_eq!(c.len(), 2);
        assert!((c[0].location - 14.134725).abs() < 0.01);
        assert!((c[0].mass - 0.5).abs() < 0.01);
    }

    #[test]
    fn close_pair_is_split() {
        let p = synthetic(&[20.0, 21.8], 17.0, 25.0, 0.02, 4.0);
        let c = detect_zeros(&p).unwrap();
        assert_eq!(c.len(), 2, "{c:?}");
        for cand in &c {
            assert!((cand.mass - 0.5).abs() < 0.05);
        }
    }

    #[test]
    fn sawtooth_maxima_suppressed() {
        let mut p = synthetic(&[14.134725], 12.0, 16.0, 0.005, 1.0);
        for (i, v) in p.values.iter_mut().enumerate() {
            *v *= 1.0 + 0.002 * (i % 7) as f64;
        }
        let c = detect_zeros(&p).unwrap();
        assert_eq!(c.len(), 1, "{c:?}");
    }

    #[test]
    fn resolution_check() {
        let p = synthetic(&[14.0], 10.0, 18.0, 0.1, 16.0);
        assert!(matches!(detect_zeros(&p), Err(Error::Resolution { .. })));
    }

    #[test]
    fn required_primes_monotone() {
        let a = required_primes_estimate(14.134725, 1.1, 0.05).unwrap();
        let b = required_primes_estimate(14.134725, 2.0, 0.05).unwrap();
        let c = required_primes_estimate(14.134725, 1.1, 0.025).unwrap();
        assert!(a.is_finite() && b > a && c > a);
        let fixed = tau_truncation(&WeightParams::new(14.134725, 200).unwrap(), 0.05).unwrap().tau;
        assert!(a > fixed);
        assert!(required_primes_estimate(2.0, 1.1, 0.05).is_err());
        assert!(required_primes_estimate(90.0, 50.0, 1e-3).unwrap().is_infinite());
    }
}
