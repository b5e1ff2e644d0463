//! Overflow-free elementary functions of a complex argument.

use num_complex::Complex64;

// beyond this |Im z| the exponential form is used
const LARGE_IM: f64 = 20.0;

/// `tan(z)`, finite for any `|Im z|` (tends to `±i`).
pub fn tan_stable(z: Complex64) -> Complex64 {
    let (x2, y2) = (2.0 * z.re, 2.0 * z.im);
    let ch = y2.cosh();
    if ch.is_finite() {
        let den = x2.cos() + ch;
        Complex64::new(x2.sin() / den, y2.sinh() / den)
    } else {
        Complex64::new(0.0, y2.signum())
    }
}

/// A logarithm of `sin(z)`, usable where `sin(z)` itself would overflow.
/// The imaginary part is determined only modulo `2π`.
pub fn ln_sin(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im.abs() < LARGE_IM {
        z.sin().ln()
    } else if z.im > 0.0 {
        // sin z = e^{-iz} (e^{2iz} - 1) / (2i)
        -i * z + ((2.0 * i * z).exp() - 1.0).ln() - (2.0 * i).ln()
    } else {
        // sin z = e^{iz} (1 - e^{-2iz}) / (2i)
        i * z + (1.0 - (-2.0 * i * z).exp()).ln() - (2.0 * i).ln()
    }
}

/// A logarithm of `cos(z)`; see [`ln_sin`].
pub fn ln_cos(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im.abs() < LARGE_IM {
        z.cos().ln()
    } else if z.im > 0.0 {
        -i * z + (1.0 + (2.0 * i * z).exp()).ln() - 2f64.ln()
    } else {
        i * z + (1.0 + (-2.0 * i * z).exp()).ln() - 2f64.ln()
    }
}
