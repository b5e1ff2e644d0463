//! Numerical building blocks shared by every formula evaluation.
//!
//! Terms of the explicit formula combine factors such as `Γ(k + 1/2)`,
//! `H_{2k}(x)` and `γ^{2k} e^{-αγ²}` whose magnitudes lie far outside the
//! `f64` range even though their products are of order one. Such products are
//! formed in log space with [`ExtendedReal`] and only the final term is
//! converted back to a native float.

mod complex;
mod extended;
mod gamma;
mod hermite;
mod quadrature;
mod summation;

pub use complex::{ln_cos, ln_sin, tan_stable};
pub use extended::ExtendedReal;
pub use gamma::{digamma, ln_gamma_complex, log_gamma};
pub use hermite::{hermite_mantissa, hermite_scaled};
pub use quadrature::{integrate, integrate_breaks, QuadResult, QuadValue};
pub use summation::{compensated_sum, tree_reduce, NeumaierSum};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
