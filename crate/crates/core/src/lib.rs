//! Hermite-weighted explicit formula for the zeros of the Riemann zeta function.
//!
//! A Gaussian-weighted sum over the ordinates `γ_n` of the nontrivial zeros is
//! expressed through a sum over prime powers weighted with Hermite polynomials.
//! The crate evaluates both sides, scans the prime side for the half-unit-mass
//! bumps that mark zeros, and validates everything against an independent
//! Euler–Maclaurin zeta oracle.
//!
//! Module map:
//!
//! * [`numerics`]: extended-range reals, log-gamma, digamma, Hermite recurrence,
//!   compensated summation and adaptive Gauss–Legendre quadrature.
//! * [`sieve`]: segmented von Mangoldt sieve.
//! * [`weights`]: the weight pair `ŵ(s)` / `w(x)`, its asymptotic form and the
//!   truncation length of the prime sum.
//! * [`explicit_formula`]: zero side, prime side, pole term, `g(s)`, the `J`
//!   integral, the Perron oracle and the exact contour identity.
//! * [`zeta_oracle`]: ζ(s), ζ'(s), χ(s) and critical-line zeros.
//! * [`scan`]: profiles over a ξ grid and half-mass zero detection.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod error;
pub mod explicit_formula;
pub mod numerics;
pub mod scan;
pub mod sieve;
pub mod weights;
pub mod zeta_oracle;

pub use error::{Error, Result};
