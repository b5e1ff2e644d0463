//! Physicists' Hermite polynomials `H_n(x)` at large degree.

use super::ExtendedReal;
use std::f64::consts::LN_2;

const RESCALE_ABOVE: f64 = 1e150;
const RESCALE_BELOW: f64 = 1e-150;

/// `H_n(x)` as a mantissa and a power-of-two exponent: `H_n(x) = m · 2^e`.
///
/// Runs `H_{j+1} = 2x H_j − 2j H_{j−1}` in native floats so that signed
/// cancellation between the two terms is exact to rounding, and moves the
/// common scale into the integer exponent whenever the pair leaves
/// `[1e-150, 1e150]`.
pub fn hermite_mantissa(n: u64, x: f64) -> (f64, i64) {
    if n == 0 {
        return (1.0, 0);
    }
    let two_x = 2.0 * x;
    let mut prev = 1.0f64;
    let mut cur = two_x;
    let mut exp2: i64 = 0;
    for j in 1..n {
        let next = two_x * cur - 2.0 * j as f64 * prev;
        prev = cur;
        cur = next;
        let m = cur.abs().max(prev.abs());
        if m > RESCALE_ABOVE || (m < RESCALE_BELOW && m > 0.0) {
            let e = m.log2().floor() as i32;
            let scale = 2f64.powi(-e);
            cur *= scale;
            prev *= scale;
            exp2 += i64::from(e);
        }
    }
    (cur, exp2)
}

/// `H_n(x)` in extended range.
pub fn hermite_scaled(n: u64, x: f64) -> ExtendedReal {
    let (m, e) = hermite_mantissa(n, x);
    if m == 0.0 {
        return ExtendedReal::ZERO;
    }
    ExtendedReal::from_log(if m > 0.0 { 1 } else { -1 }, m.abs().ln() + e as f64 * LN_2)
}
