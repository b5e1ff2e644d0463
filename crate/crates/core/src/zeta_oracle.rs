//! Independent evaluation of `ζ(s)`, `ζ'(s)`, the functional-equation factor
//! `χ(s)` and the critical-line zeros.
//!
//! Nothing here touches primes: this module is the ground truth the prime-side
//! machinery is checked against.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::explicit_formula::ZeroTable;
use crate::numerics::{ln_cos, ln_gamma_complex, ln_sin};

/// Largest `|Im s|` accepted by [`zeta_em`].
pub const MAX_HEIGHT: f64 = 1e3;

/// Default target error of [`zeta_em`].
pub const DEFAULT_TOL: f64 = 1e-12;

const CORRECTION_TERMS: usize = 8;

/// Bernoulli numbers B_2 .. B_20.
const BERNOULLI: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174_611.0 / 330.0,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZetaEvaluation {
    pub s: Complex64,
    pub value: Complex64,
    pub derivative: Complex64,
    /// Number of directly summed terms `N`.
    pub terms: usize,
    /// Size of the first omitted Euler–Maclaurin correction.
    pub est_error: f64,
}

impl ZetaEvaluation {
    /// `ζ'(s)/ζ(s)`.
    pub fn log_derivative(&self) -> Complex64 {
        self.derivative / self.value
    }
}

/// `ζ(s)` and `ζ'(s)` by Euler–Maclaurin summation.
///
/// Starts from `N = max(20, ⌈2|Im s|⌉)` terms and 8 Bernoulli corrections and
/// doubles `N` until the first omitted correction falls below `tol`.
pub fn zeta_em(s: Complex64, tol: f64) -> Result<ZetaEvaluation> {
    if (s - 1.0).norm() == 0.0 {
        return Err(Error::domain("zeta_em", "pole at s = 1"));
    }
    if s.im.abs() > MAX_HEIGHT || !s.re.is_finite() {
        return Err(Error::argument("s", format!("|Im s| = {} exceeds {MAX_HEIGHT}", s.im.abs())));
    }
    let mut n = 20usize.max((2.0 * s.im.abs()).ceil() as usize);
    loop {
        let ev = em_sum(s, n);
        if ev.est_error <= tol {
            return Ok(ev);
        }
        if n > 1 << 16 {
            return Err(Error::Numerical { what: "zeta_em", achieved: ev.est_error, requested: tol });
        }
        n *= 2;
    }
}

fn em_sum(s: Complex64, n: usize) -> ZetaEvaluation {
    let zero = Complex64::new(0.0, 0.0);
    let mut value = zero;
    let mut derivative = zero;
    for j in 1..n {
        let lj = (j as f64).ln();
        let term = (-s * lj).exp();
        value += term;
        derivative -= term * lj;
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let n_pow = (-s * ln_n).exp(); // N^{-s}
    let sm1 = s - 1.0;
    let tail = n_pow * nf / sm1; // N^{1-s}/(s-1)
    value += tail + 0.5 * n_pow;
    derivative += -tail * ln_n - tail / sm1 - 0.5 * n_pow * ln_n;

    // T_j = B_{2j}/(2j)! · s(s+1)...(s+2j-2) · N^{-s-2j+1}
    let mut poly = s; // product of (s+i), i = 0..=2j-2
    let mut dpoly = Complex64::new(1.0, 0.0);
    let mut pow = n_pow / nf; // N^{-s-1}
    let mut fact = 2.0; // (2j)!
    let mut est_error = 0.0;
    for (j, &b) in BERNOULLI.iter().enumerate() {
        let coeff = b / fact;
        let term = coeff * poly * pow;
        if j == CORRECTION_TERMS {
            // first omitted term, with the usual remainder factor
            let sigma = s.re + 2.0 * j as f64 + 1.0;
            let ratio = if sigma > 0.0 { ((s + 2.0 * j as f64 + 1.0).norm() / sigma).max(1.0) } else { f64::INFINITY };
            est_error = term.norm() * ratio;
            break;
        }
        value += term;
        derivative += coeff * pow * (dpoly - poly * ln_n);
        // advance to j+1: multiply by (s+2j+1)(s+2j+2)
        for i in [2 * j + 1, 2 * j + 2] {
            let f = s + i as f64;
            dpoly = dpoly * f + poly;
            poly *= f;
        }
        pow /= nf * nf;
        let m = 2.0 * (j + 1) as f64;
        fact *= (m + 1.0) * (m + 2.0);
    }
    ZetaEvaluation { s, value, derivative, terms: n, est_error }
}

/// `ζ(s)` with the default tolerance.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    Ok(zeta_em(s, DEFAULT_TOL)?.value)
}

/// `χ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s)`, with `ζ(s) = χ(s) ζ(1−s)`.
///
/// For `Re s ≥ ½` the equivalent form `2^{s−1} π^s / (Γ(s) cos(πs/2))` is used,
/// which is regular at the positive even integers.
pub fn chi_factor(s: Complex64) -> Result<Complex64> {
    let half = 0.5 * PI * s;
    if s.re >= 0.5 {
        let c = half.cos();
        if (s.re - s.re.round()).abs() < 1e-12 && s.im.abs() < 1e-12 && (s.re.round() as i64) % 2 == 1 {
            return Err(Error::domain("chi_factor", format!("pole at s = {}", s.re.round())));
        }
        if c.norm() < 1e-300 {
            return Err(Error::domain("chi_factor", "pole of Γ(1 - s)"));
        }
        let log = (s - 1.0) * 2f64.ln() + s * PI.ln() - ln_gamma_complex(s)? - ln_cos(half);
        Ok(log.exp())
    } else {
        let log = s * 2f64.ln() + (s - 1.0) * PI.ln() + ln_sin(half) + ln_gamma_complex(1.0 - s)?;
        Ok(log.exp())
    }
}

/// Riemann–Siegel theta `θ(t) = arg Γ(¼ + it/2) − (t/2) ln π`, modulo `2π`.
pub fn theta(t: f64) -> f64 {
    let lg = ln_gamma_complex(Complex64::new(0.25, 0.5 * t)).expect("no poles on Re = 1/4");
    lg.im - 0.5 * t * PI.ln()
}

/// Smooth zero-counting estimate `θ(t)/π + 1` using the asymptotic theta.
pub fn zero_count_main_term(t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let x = t / (2.0 * PI);
    // continuous theta from its asymptotic series
    let th = 0.5 * t * x.ln() - 0.5 * t - PI / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t.powi(3));
    th / PI + 1.0
}

/// Hardy's function `Z(t) = e^{iθ(t)} ζ(½ + it)`, real for real `t`.
pub fn hardy_z(t: f64) -> Result<f64> {
    let z = zeta_em(Complex64::new(0.5, t), DEFAULT_TOL)?.value;
    let rot = Complex64::from_polar(1.0, theta(t));
    Ok((rot * z).re)
}

/// Outcome of [`find_zeros`].
#[derive(Clone, Debug)]
pub struct ZeroSearch {
    pub table: ZeroTable,
    /// `θ(T)/π + 1`, the smooth count the table is compared against.
    pub expected_count: f64,
    /// Set when the count differs from the smooth estimate by more than 2.
    pub incomplete_warning: Option<String>,
}

pub const GRID_STEP: f64 = 0.05;
const ROOT_TOL: f64 = 1e-10;
const REFINE_LEVELS: u32 = 3;

/// All zeros `0 < γ ≤ t_max` on the critical line, from sign changes of
/// `Z(t)` on a 0.05 grid, refined where `|Z|` dips without changing sign, and
/// bisected to `1e-10`.
pub fn find_zeros(t_max: f64) -> Result<ZeroSearch> {
    if !(t_max > 0.0) || t_max > MAX_HEIGHT {
        return Err(Error::argument("t_max", format!("{t_max} is outside (0, {MAX_HEIGHT}]")));
    }
    // Z has no zeros below 14
    let t0 = 1.0;
    let steps = ((t_max - t0) / GRID_STEP).ceil().max(1.0) as usize;
    let grid: Vec<f64> = (0..=steps).map(|i| (t0 + i as f64 * GRID_STEP).min(t_max)).collect();
    let values: Vec<f64> = grid.par_iter().map(|&t| hardy_z(t)).collect::<Result<_>>()?;

    let mut brackets = Vec::new();
    for i in 0..grid.len() - 1 {
        let (a, b) = (grid[i], grid[i + 1]);
        if a == b {
            continue;
        }
        if sign_change(values[i], values[i + 1]) {
            brackets.push((a, b, values[i]));
        } else if i > 0 && i + 1 < grid.len() {
            // |Z| local minimum without a sign change: look for a hidden pair
            let (l, m, r) = (values[i - 1].abs(), values[i].abs(), values[i + 1].abs());
            if m < l && m <= r && values[i - 1].signum() == values[i].signum() {
                refine(grid[i - 1], grid[i + 1], REFINE_LEVELS, &mut brackets)?;
            }
        }
    }
    brackets.sort_by(|x, y| x.0.total_cmp(&y.0));
    brackets.dedup_by(|x, y| (x.0 - y.0).abs() < 1e-12);

    let mut gammas: Vec<f64> = brackets.par_iter().map(|&(a, b, fa)| bisect(a, b, fa)).collect::<Result<_>>()?;
    gammas.sort_by(f64::total_cmp);
    gammas.dedup_by(|x, y| (*x - *y).abs() < 1e-9);

    let expected_count = zero_count_main_term(t_max);
    let incomplete_warning = ((gammas.len() as f64 - expected_count).abs() > 2.0).then(|| {
        format!(
            "found {} zeros up to {t_max} but the smooth count is {expected_count:.2}; zeros may be missing",
            gammas.len()
        )
    });
    let table = ZeroTable::with_coverage(gammas, 0.0, t_max)?;
    Ok(ZeroSearch { table, expected_count, incomplete_warning })
}

fn sign_change(a: f64, b: f64) -> bool {
    (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0) || a == 0.0
}

fn refine(a: f64, b: f64, levels: u32, out: &mut Vec<(f64, f64, f64)>) -> Result<()> {
    let n = 8;
    let h = (b - a) / n as f64;
    let ts: Vec<f64> = (0..=n).map(|i| a + i as f64 * h).collect();
    let vs: Vec<f64> = ts.iter().map(|&t| hardy_z(t)).collect::<Result<_>>()?;
    for i in 0..n {
        if sign_change(vs[i], vs[i + 1]) {
            out.push((ts[i], ts[i + 1], vs[i]));
        }
    }
    if levels > 1 && !vs.windows(2).any(|w| sign_change(w[0], w[1])) {
        for i in 1..n {
            if vs[i].abs() < vs[i - 1].abs() && vs[i].abs() <= vs[i + 1].abs() {
                refine(ts[i - 1], ts[i + 1], levels - 1, out)?;
            }
        }
    }
    Ok(())
}

fn bisect(mut a: f64, mut b: f64, mut fa: f64) -> Result<f64> {
    if fa == 0.0 {
        return Ok(a);
    }
    while b - a > ROOT_TOL {
        let m = 0.5 * (a + b);
        let fm = hardy_z(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Asymptotic size of the n-th ordinate, `2πn / ln n`.
pub fn gamma_n_estimate(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain("gamma_n_estimate", format!("n = {n} is below 2")));
    }
    let nf = n as f64;
    Ok(2.0 * PI * nf / nf.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn known_values() {
        let z2 = zeta_em(c(2.0, 0.0), 1e-12).unwrap();
        assert!((z2.value.re - PI * PI / 6.0).abs() < 1e-10);
        assert!(z2.est_error <= 1e-12);
        assert!((zeta(c(0.0, 0.0)).unwrap().re + 0.5).abs() < 1e-12);
        assert!((zeta(c(-1.0, 0.0)).unwrap().re + 1.0 / 12.0).abs() < 1e-12);
        // ζ'(0) = -ln(2π)/2
        let d0 = zeta_em(c(0.0, 0.0), 1e-12).unwrap().derivative;
        assert!((d0.re + 0.5 * (2.0 * PI).ln()).abs() < 1e-11);
        assert!(matches!(zeta_em(c(1.0, 0.0), 1e-10), Err(Error::Domain { .. })));
        assert!(matches!(zeta_em(c(0.5, 2000.0), 1e-10), Err(Error::Argument { .. })));
    }

    #[test]
    fn derivative_matches_finite_difference() {
        for &(x, y) in &[(0.5, 14.0), (2.0, 5.0), (-0.7, 33.0), (1.3, 200.0)] {
            let s = c(x, y);
            let h = 1e-5;
            let fd = (zeta(s + h).unwrap() - zeta(s - h).unwrap()) / (2.0 * h);
            let d = zeta_em(s, 1e-12).unwrap().derivative;
            assert!((fd - d).norm() < 1e-6 * d.norm().max(1.0), "s = {s}");
        }
    }

    #[test]
    fn first_zero() {
        let v = zeta(c(0.5, 14.134_725)).unwrap();
        assert!(v.norm() <= 1e-5);
        assert!(hardy_z(14.0).unwrap().signum() != hardy_z(14.3).unwrap().signum());
    }

    #[test]
    fn chi_values() {
        assert!((chi_factor(c(0.5, 0.0)).unwrap().norm() - 1.0).abs() < 1e-13);
        let chi2 = chi_factor(c(2.0, 0.0)).unwrap();
        assert!((chi2.re + 2.0 * PI * PI).abs() < 1e-10 && chi2.im.abs() < 1e-10);
        assert!(matches!(chi_factor(c(1.0, 0.0)), Err(Error::Domain { .. })));
        assert!(matches!(chi_factor(c(3.0, 0.0)), Err(Error::Domain { .. })));
        let s = c(0.3, 7.0);
        let r = zeta(s).unwrap() - chi_factor(s).unwrap() * zeta(1.0 - s).unwrap();
        assert!(r.norm() <= 1e-8);
        // |χ(1/2 + it)| = 1 on the critical line
        assert!((chi_factor(c(0.5, 123.4)).unwrap().norm() - 1.0).abs() < 1e-11);
    }

    #[test]
    fn hardy_z_is_real_rotation() {
        // e^{iθ} ζ(1/2+it) has vanishing imaginary part
        for t in [3.0, 17.2, 99.9] {
            let z = zeta(c(0.5, t)).unwrap();
            let rot = Complex64::from_polar(1.0, theta(t)) * z;
            assert!(rot.im.abs() < 1e-10 * z.norm().max(1.0));
        }
    }

    #[test]
    fn zeros_to_thirty() {
        let found = find_zeros(30.0).unwrap();
        let g = found.table.gammas();
        assert_eq!(g.len(), 3);
        for (got, want) in g.iter().zip([14.134_725_141_7, 21.022_039_638_8, 25.010_857_580_1]) {
            assert!((got - want).abs() < 1e-8, "{got} vs {want}");
        }
        assert!(found.incomplete_warning.is_none());
        assert!(find_zeros(10.0).unwrap().table.is_empty());
    }

    #[test]
    fn zeros_to_hundred() {
        let found = find_zeros(100.0).unwrap();
        assert_eq!(found.table.len(), 29);
        let main = (100.0 / (2.0 * PI)) * (100.0 / (2.0 * PI)).ln() - 100.0 / (2.0 * PI) + 7.0 / 8.0;
        assert!((29.0 - main).abs() < 2.0);
        assert!(found.incomplete_warning.is_none());
    }

    #[test]
    fn gamma_estimate() {
        assert!((gamma_n_estimate(2).unwrap() - 4.0 * PI / 2f64.ln()).abs() < 1e-12);
        assert!((gamma_n_estimate(2).unwrap() - 18.129).abs() < 1e-3);
        assert!(gamma_n_estimate(1).is_err());
        for n in 3..200u64 {
            assert!(gamma_n_estimate(n + 1).unwrap() > gamma_n_estimate(n).unwrap());
        }
    }
}
