use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul, Neg};

/// A real number stored as `sign · exp(log_magnitude)`.
///
/// Covers magnitudes such as `H_{2k}(x)` for `k ~ 10^4` or `1/Γ(k + 1/2)`
/// that overflow or underflow `f64`. Multiplication and division are exact
/// in sign and add/subtract log-magnitudes. Addition is deliberately not
/// provided: signed cancellation has to happen in a native mantissa (see
/// [`hermite_mantissa`](super::hermite_mantissa)).
#[derive(Clone, Copy, PartialEq)]
pub struct ExtendedReal {
    sign: i8,
    log_magnitude: f64,
}

impl ExtendedReal {
    pub const ZERO: ExtendedReal = ExtendedReal {
        sign: 0,
        log_magnitude: f64::NEG_INFINITY,
    };

    pub const ONE: ExtendedReal = ExtendedReal {
        sign: 1,
        log_magnitude: 0.0,
    };

    /// Builds a value from its sign and natural-log magnitude. A zero sign
    /// yields exactly zero regardless of `log_magnitude`.
    pub fn from_log(sign: i8, log_magnitude: f64) -> Self {
        match sign.cmp(&0) {
            Ordering::Equal => Self::ZERO,
            Ordering::Greater => Self {
                sign: 1,
                log_magnitude,
            },
            Ordering::Less => Self {
                sign: -1,
                log_magnitude,
            },
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self {
                sign: if x > 0.0 { 1 } else { -1 },
                log_magnitude: x.abs().ln(),
            }
        }
    }

    /// Converts back to `f64`, saturating to `±inf` or `0` outside its range.
    pub fn to_f64(self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            f64::from(self.sign) * self.log_magnitude.exp()
        }
    }

    /// `-1`, `0` or `+1`.
    pub fn sign(self) -> i8 {
        self.sign
    }

    /// Natural log of `|value|`; `-inf` for zero.
    pub fn log_magnitude(self) -> f64 {
        self.log_magnitude
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn abs(self) -> Self {
        Self {
            sign: self.sign.abs(),
            log_magnitude: self.log_magnitude,
        }
    }

    /// Integer power; `x^0 = 1` including for zero.
    pub fn powi(self, n: i64) -> Self {
        if n == 0 {
            return Self::ONE;
        }
        if self.sign == 0 {
            return if n > 0 {
                Self::ZERO
            } else {
                Self::from_log(1, f64::INFINITY)
            };
        }
        let sign = if self.sign < 0 && n % 2 != 0 { -1 } else { 1 };
        Self::from_log(sign, self.log_magnitude * n as f64)
    }

    /// Multiplies by `exp(x)` for a real `x`.
    pub fn mul_exp(self, x: f64) -> Self {
        if self.sign == 0 {
            self
        } else {
            Self::from_log(self.sign, self.log_magnitude + x)
        }
    }
}

impl Default for ExtendedReal {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<f64> for ExtendedReal {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl Neg for ExtendedReal {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            sign: -self.sign,
            log_magnitude: self.log_magnitude,
        }
    }
}

impl Mul for ExtendedReal {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.sign == 0 || rhs.sign == 0 {
            Self::ZERO
        } else {
            Self::from_log(self.sign * rhs.sign, self.log_magnitude + rhs.log_magnitude)
        }
    }
}

impl Div for ExtendedReal {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        if self.sign == 0 {
            Self::ZERO
        } else if rhs.sign == 0 {
            Self::from_log(self.sign, f64::INFINITY)
        } else {
            Self::from_log(self.sign * rhs.sign, self.log_magnitude - rhs.log_magnitude)
        }
    }
}

impl fmt::Debug for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "ExtendedReal(0)"),
            s => write!(
                f,
                "ExtendedReal({}exp({}))",
                if s < 0 { "-" } else { "+" },
                self.log_magnitude
            ),
        }
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == 0 {
            return write!(f, "0");
        }
        // base-10 mantissa/exponent so huge values still print
        let log10 = self.log_magnitude / std::f64::consts::LN_10;
        let mut exponent = log10.floor();
        let mut mantissa = 10f64.powf(log10 - exponent);
        if mantissa >= 9.999_999_5 {
            mantissa /= 10.0;
            exponent += 1.0;
        }
        let sign = if self.sign < 0 { "-" } else { "" };
        write!(f, "{sign}{mantissa:.6}e{exponent}")
    }
}
