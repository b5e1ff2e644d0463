//! Log-gamma and digamma.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::complex::{ln_sin, tan_stable};
use crate::error::{Error, Result};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// B_{2j} / (2j (2j - 1)), j = 1..8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

// Stirling series is used once the argument is at least this large
const SHIFT_TO: f64 = 10.0;

/// `ln Γ(x)` for real `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("log_gamma", format!("x = {x} is not positive and finite")));
    }
    if x < SHIFT_TO {
        let n = (SHIFT_TO - x).ceil() as usize;
        let mut prod = 1.0;
        for j in 0..n {
            prod *= x + j as f64;
        }
        Ok(stirling_real(x + n as f64) - prod.ln())
    } else {
        Ok(stirling_real(x))
    }
}

fn stirling_real(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut pow = inv;
    for c in STIRLING {
        series += c * pow;
        pow *= inv2;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + series
}

/// A logarithm of `Γ(z)` for complex `z` away from the poles. The imaginary
/// part is a valid branch but not necessarily the principal one.
pub fn ln_gamma_complex(z: Complex64) -> Result<Complex64> {
    check_pole("ln_gamma_complex", z)?;
    if z.re < 0.5 {
        // Γ(z) Γ(1 - z) = π / sin(πz)
        let reflected = ln_gamma_complex(1.0 - z)?;
        return Ok(PI.ln() - ln_sin(PI * z) - reflected);
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_TO {
        shift += w.ln();
        w += 1.0;
    }
    Ok(stirling_complex(w) - shift)
}

fn stirling_complex(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series
}

/// Digamma `ψ(z) = Γ'(z)/Γ(z)`.
///
/// Shifts upward with `ψ(z+1) = ψ(z) + 1/z` until `Re z ≥ 10` and then uses
/// the asymptotic series `ln z − 1/(2z) − Σ B₂ⱼ/(2j z^{2j})` through `z⁻¹⁴`. Arguments with
/// `Re z < 1/2` go through the reflection `ψ(z) = ψ(1−z) − π cot(πz)`.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    check_pole("digamma", z)?;
    if z.re < 0.5 {
        let cot = tan_stable(PI * z).inv();
        return Ok(digamma(1.0 - z)? - PI * cot);
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_TO {
        shift += w.inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let tail = 1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32760.0 - inv2 / 12.0));
    let series = w.ln() - 0.5 * inv - inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * tail)));
    Ok(series - shift)
}

fn check_pole(func: &'static str, z: Complex64) -> Result<()> {
    if z.re <= 0.0 && z.im.abs() < 1e-12 && (z.re - z.re.round()).abs() < 1e-12 {
        return Err(Error::domain(func, format!("pole at z = {}", z.re.round())));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::EULER_GAMMA;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn log_gamma_special_values() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-14);
        assert!(log_gamma(2.0).unwrap().abs() < 1e-14);
        let half = log_gamma(0.5).unwrap();
        assert!((half - PI.sqrt().ln()).abs() < 1e-13);
        assert!((half - 0.572_364_942_9).abs() < 1e-10);
    }

    #[test]
    fn log_gamma_matches_integer_factorials() {
        // ln((n-1)!) accumulated from exact integer products
        let mut fact: u128 = 1;
        for n in 1u32..=30 {
            if n > 1 {
                fact *= u128::from(n - 1);
            }
            let exact = (fact as f64).ln();
            let got = log_gamma(f64::from(n)).unwrap();
            assert!((got - exact).abs() < 1e-12 * exact.abs().max(1.0), "n = {n}");
        }
        assert!((log_gamma(10.0).unwrap() - 12.801_827_480_1).abs() < 1e-10);
    }

    #[test]
    fn log_gamma_large_argument() {
        // ln Γ(1e6) from ln Γ(x+1) = ln Γ(x) + ln x and the Stirling series is
        // only representable to a few ulps of the result itself
        let x = 1e6;
        let v = log_gamma(x).unwrap();
        let reference = (x - 0.5) * x.ln() - x + HALF_LN_2PI + 1.0 / (12.0 * x);
        assert!((v - reference).abs() <= 4.0 * f64::EPSILON * v);
    }

    #[test]
    fn log_gamma_rejects_non_positive() {
        assert!(matches!(log_gamma(0.0), Err(Error::Domain { .. })));
        assert!(matches!(log_gamma(-3.5), Err(Error::Domain { .. })));
        assert!(log_gamma(f64::NAN).is_err());
    }

    #[test]
    fn complex_log_gamma_agrees_on_real_axis() {
        for &x in &[0.3, 1.0, 2.5, 7.25, 40.0] {
            let z = ln_gamma_complex(c(x, 0.0)).unwrap();
            assert!((z.re - log_gamma(x).unwrap()).abs() < 1e-12);
        }
        // Γ(-0.5) = -2√π
        let z = ln_gamma_complex(c(-0.5, 0.0)).unwrap().exp();
        assert!((z.re + 2.0 * PI.sqrt()).abs() < 1e-12 && z.im.abs() < 1e-12);
    }

    #[test]
    fn complex_log_gamma_recurrence() {
        for &(x, y) in &[(0.25, 7.0), (3.0, -40.0), (-2.3, 1.5), (0.5, 300.0)] {
            let z = c(x, y);
            let lhs = ln_gamma_complex(z + 1.0).unwrap().exp();
            let rhs = z * ln_gamma_complex(z).unwrap().exp();
            assert!((lhs - rhs).norm() <= 1e-11 * rhs.norm());
        }
    }

    #[test]
    fn digamma_special_values() {
        let one = digamma(c(1.0, 0.0)).unwrap();
        assert!((one.re + EULER_GAMMA).abs() < 1e-12 && one.im == 0.0);
        assert!((one.re + 0.577_215_664_9).abs() < 1e-10);

        let half = digamma(c(0.5, 0.0)).unwrap();
        let expected = -EULER_GAMMA - 2.0 * 2f64.ln();
        assert!((half.re - expected).abs() < 1e-10);
        assert!((half.re + 1.963_510_026_0).abs() < 1e-10);

        let harmonic: f64 = (1..=9).map(|j| 1.0 / f64::from(j)).sum();
        let ten = digamma(c(10.0, 0.0)).unwrap();
        assert!((ten.re - (-EULER_GAMMA + harmonic)).abs() < 1e-10);
        assert!((ten.re - 2.251_752_589_1).abs() < 1e-10);
    }

    #[test]
    fn digamma_poles() {
        for &x in &[0.0, -1.0, -7.0] {
            assert!(matches!(digamma(c(x, 0.0)), Err(Error::Domain { .. })));
        }
        assert!(digamma(c(-1.0, 0.5)).is_ok());
    }

    #[test]
    fn digamma_reflection_branch() {
        // ψ(1 - z) - ψ(z) = π cot(πz) checked through the upward recurrence
        let z = c(-3.3, 2.0);
        let lhs = digamma(z + 1.0).unwrap() - digamma(z).unwrap();
        assert!((lhs - z.inv()).norm() < 1e-10);
    }

    proptest! {
        #[test]
        fn digamma_recurrence(re in 0.5f64..50.0, im in -50.0f64..50.0) {
            let z = c(re, im);
            let r = digamma(z + 1.0).unwrap() - digamma(z).unwrap() - z.inv();
            prop_assert!(r.norm() <= 1e-10);
        }

        #[test]
        fn digamma_is_derivative_of_log_gamma(re in 0.6f64..30.0, im in -30.0f64..30.0) {
            let z = c(re, im);
            let h = 1e-4;
            let fd = (ln_gamma_complex(z + h).unwrap() - ln_gamma_complex(z - h).unwrap()) / (2.0 * h);
            prop_assert!((fd - digamma(z).unwrap()).norm() < 1e-7);
        }
    }
}
