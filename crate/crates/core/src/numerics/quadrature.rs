//! Adaptive composite Gauss–Legendre quadrature for smooth integrands.

use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

use crate::error::{Error, Result};

const ORDER: usize = 20;
const MAX_INTERVALS: usize = 200_000;

/// Values a quadrature can accumulate.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadResult<T> {
    pub value: T,
    /// Sum of the local |coarse − refined| differences.
    pub error: f64,
    pub intervals: usize,
}

/// Nodes and weights on [-1, 1], by Newton iteration on P_n.
fn rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = ORDER;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for j in 2..=n {
                    let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
        }
        out
    })
}

fn gauss<T: QuadValue, F: Fn(f64) -> T>(f: &F, a: f64, b: f64) -> T {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = T::zero();
    for &(x, w) in rule() {
        acc = acc + f(mid + half * x) * w;
    }
    acc * half
}

/// `∫_a^b f` to absolute tolerance `tol`.
///
/// Each interval is accepted when the rule on the interval and on its two
/// halves agree within the interval's share of `tol`; otherwise it is split.
pub fn integrate<T: QuadValue, F: Fn(f64) -> T>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult<T>> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::argument("integration bounds", format!("[{a}, {b}] is not finite")));
    }
    if a == b {
        return Ok(QuadResult { value: T::zero(), error: 0.0, intervals: 0 });
    }
    let total = (b - a).abs();
    let mut stack = vec![(a, b, gauss(&f, a, b))];
    let mut value = T::zero();
    let mut error = 0.0;
    let mut intervals = 0usize;
    while let Some((lo, hi, coarse)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = gauss(&f, lo, mid);
        let right = gauss(&f, mid, hi);
        let fine = left + right;
        let diff = (fine - coarse).magnitude();
        let share = tol * (hi - lo).abs() / total;
        intervals += 1;
        if diff <= share || (hi - lo).abs() <= 1e-12 * total {
            value = value + fine;
            error += diff;
        } else if intervals + stack.len() > MAX_INTERVALS {
            return Err(Error::Numerical {
                what: "adaptive quadrature",
                achieved: error + diff,
                requested: tol,
            });
        } else {
            stack.push((mid, hi, right));
            stack.push((lo, mid, left));
        }
    }
    if !value.magnitude().is_finite() {
        return Err(Error::Numerical { what: "adaptive quadrature", achieved: f64::INFINITY, requested: tol });
    }
    Ok(QuadResult { value, error, intervals })
}

/// Integrates over consecutive breakpoints, splitting `tol` by length.
pub fn integrate_breaks<T: QuadValue, F: Fn(f64) -> T>(f: F, breaks: &[f64], tol: f64) -> Result<QuadResult<T>> {
    let total: f64 = breaks.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    let mut out = QuadResult { value: T::zero(), error: 0.0, intervals: 0 };
    for w in breaks.windows(2) {
        if w[0] == w[1] {
            continue;
        }
        let part = integrate(&f, w[0], w[1], tol * (w[1] - w[0]).abs() / total)?;
        out.value = out.value + part.value;
        out.error += part.error;
        out.intervals += part.intervals;
    }
    Ok(out)
}
