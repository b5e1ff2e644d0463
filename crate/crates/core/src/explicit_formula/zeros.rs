use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Ordinates `γ_n > 0` of nontrivial zeros `½ + iγ_n`, strictly increasing,
/// together with the height interval on which the table is known to be
/// complete.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroTable {
    gammas: Vec<f64>,
    coverage: (f64, f64),
}

/// Entries starting in this interval are taken to begin at the first zero.
pub const FIRST_ZERO_RANGE: (f64, f64) = (14.0, 14.2);

fn validate(gammas: &[f64]) -> Result<()> {
    for (i, &g) in gammas.iter().enumerate() {
        if !(g > 0.0 && g.is_finite()) {
            return Err(Error::Validation { line: i + 1, detail: format!("ordinate {g} is not positive") });
        }
        if i > 0 && g <= gammas[i - 1] {
            return Err(Error::Validation {
                line: i + 1,
                detail: format!("ordinate {g} does not exceed the previous entry {}", gammas[i - 1]),
            });
        }
    }
    Ok(())
}

impl ZeroTable {
    /// A table whose completeness is inferred from its entries: from 0 when it
    /// starts at the first zero, otherwise from its first entry, up to its last.
    pub fn new(gammas: Vec<f64>) -> Result<Self> {
        validate(&gammas)?;
        let coverage = match (gammas.first(), gammas.last()) {
            (Some(&first), Some(&last)) => {
                let lo = if first > FIRST_ZERO_RANGE.0 && first < FIRST_ZERO_RANGE.1 { 0.0 } else { first };
                (lo, last)
            }
            _ => (0.0, 0.0),
        };
        Ok(Self { gammas, coverage })
    }

    /// A table declared complete on `[lo, hi]`.
    pub fn with_coverage(gammas: Vec<f64>, lo: f64, hi: f64) -> Result<Self> {
        validate(&gammas)?;
        if !(lo <= hi) {
            return Err(Error::argument("coverage", format!("[{lo}, {hi}] is empty")));
        }
        Ok(Self { gammas, coverage: (lo, hi) })
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    pub fn coverage(&self) -> (f64, f64) {
        self.coverage
    }

    pub fn starts_at_first_zero(&self) -> bool {
        self.coverage.0 == 0.0 && self.gammas.first().is_some_and(|&g| g > FIRST_ZERO_RANGE.0 && g < FIRST_ZERO_RANGE.1)
    }

    /// The first `n` entries; completeness extends up to the next entry.
    pub fn first(&self, n: usize) -> ZeroTable {
        if n >= self.gammas.len() {
            return self.clone();
        }
        ZeroTable {
            gammas: self.gammas[..n].to_vec(),
            coverage: (self.coverage.0, self.gammas[n].min(self.coverage.1)),
        }
    }

    /// Errors unless the table is complete on `[lo, hi]` (empty tables pass).
    pub fn require(&self, lo: f64, hi: f64) -> Result<()> {
        if self.is_empty() {
            return Ok(());
        }
        let (have_lo, have_hi) = self.coverage;
        if lo < have_lo || hi > have_hi {
            return Err(Error::Coverage { needed_lo: lo, needed_hi: hi, have_lo, have_hi });
        }
        Ok(())
    }

    /// For tables starting at the first zero: the count up to the last entry
    /// lies within ±2 of `(T/2π) ln(T/2π) − T/2π + 7/8`.
    pub fn density_consistent(&self) -> bool {
        let Some(&t) = self.gammas.last() else { return true };
        if !self.starts_at_first_zero() {
            return true;
        }
        (self.gammas.len() as f64 - smooth_count(t)).abs() <= 2.0
    }
}

/// `(T/2π) ln(T/2π) − T/2π + 7/8`.
pub fn smooth_count(t: f64) -> f64 {
    let x = t / (2.0 * PI);
    x * x.ln() - x + 7.0 / 8.0
}
