use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of a function (poles, x ≤ 0, ...).
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    /// Caller-supplied argument violates a precondition.
    #[error("invalid argument `{field}`: {detail}")]
    Argument { field: &'static str, detail: String },

    #[error("zero table does not cover [{needed_lo}, {needed_hi}] (table covers [{have_lo}, {have_hi}])")]
    Coverage {
        needed_lo: f64,
        needed_hi: f64,
        have_lo: f64,
        have_hi: f64,
    },

    #[error("truncation infeasible at xi = {xi}: tau = {tau:e} exceeds 2^63; eps must be at least {eps_floor:e}")]
    TruncationInfeasible { xi: f64, tau: f64, eps_floor: f64 },

    #[error("k = {k} exceeds the exact-weight limit {limit}; use the asymptotic weight")]
    UnsupportedRegime { k: u64, limit: u64 },

    #[error("numerical failure in {what}: achieved {achieved:e}, requested {requested:e}")]
    Numerical {
        what: &'static str,
        achieved: f64,
        requested: f64,
    },

    #[error("grid step {step} does not resolve the Gaussian width at xi = {xi} (need step <= {max_step})")]
    Resolution { xi: f64, step: f64, max_step: f64 },

    #[error("line {line}: cannot parse `{text}` as a number")]
    Parse { line: usize, text: String },

    #[error("line {line}: {detail}")]
    Validation { line: usize, detail: String },

    #[error("i/o error on {path}: {detail}")]
    Io { path: String, detail: String },
}

impl Error {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            func,
            detail: detail.into(),
        }
    }

    pub(crate) fn argument(field: &'static str, detail: impl Into<String>) -> Self {
        Error::Argument {
            field,
            detail: detail.into(),
        }
    }
}
