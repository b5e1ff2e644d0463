use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::scan::KPolicy;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolicyName {
    /// k = ceil(alpha xi^2)
    FixedAlpha,
    /// k = ceil(2 xi^2)
    TwiceSquare,
    /// k = ceil(beta (xi ln(xi ln xi))^2)
    LogSquared,
}

/// Copies every unset option of `flags` from `file`.
macro_rules! overlay {
    ($flags:expr, $file:expr; $($field:ident),* $(,)?) => {
        $( if $flags.$field.is_none() { $flags.$field = $file.$field.take(); } )*
    };
}

#[derive(Args, Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct SieveArgs {
    /// Sieve Λ(n) for 1 ≤ n ≤ LIMIT
    #[arg(long)]
    pub limit: Option<u64>,
    /// CSV of n,lambda for every prime power
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct EvalArgs {
    #[arg(long)]
    pub xi: Option<f64>,
    /// Hermite parameter; overrides the policy
    #[arg(long)]
    pub k: Option<u64>,
    /// α₀ of the fixed-alpha policy (default 1)
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, value_enum)]
    pub policy: Option<PolicyName>,
    /// β of the log-squared policy
    #[arg(long)]
    pub beta: Option<f64>,
    /// Tail tolerance of the prime sum (default 0.05)
    #[arg(long)]
    pub eps: Option<f64>,
    /// Use the Hermite-recurrence weight instead of the asymptotic one
    #[arg(long)]
    #[serde(default)]
    pub exact: bool,
    /// Zero table; adds the zero side to the report
    #[arg(long)]
    pub zeros: Option<PathBuf>,
}

/// Declares an argument struct with the grid and policy options shared by
/// the scanning subcommands, plus extra fields.
macro_rules! scan_args {
    ($(#[$meta:meta])* $name:ident { $($(#[$fmeta:meta])* $field:ident : $ty:ty),* $(,)? }) => {
        $(#[$meta])*
        #[derive(Args, Clone, Debug, Default, Deserialize)]
        #[serde(deny_unknown_fields, rename_all = "kebab-case")]
        pub struct $name {
            #[arg(long)]
            pub lo: Option<f64>,
            #[arg(long)]
            pub hi: Option<f64>,
            /// Grid step, at most 0.1
            #[arg(long)]
            pub step: Option<f64>,
            /// α₀ of the fixed-alpha policy (default 1)
            #[arg(long)]
            pub alpha: Option<f64>,
            #[arg(long, value_enum)]
            pub policy: Option<PolicyName>,
            /// β of the log-squared policy
            #[arg(long)]
            pub beta: Option<f64>,
            /// Tail tolerance of the prime sum (default 0.05)
            #[arg(long)]
            pub eps: Option<f64>,
            /// Use the Hermite-recurrence weight instead of the asymptotic one
            #[arg(long)]
            #[serde(default)]
            pub exact: bool,
            /// Output CSV
            #[arg(long)]
            pub out: Option<PathBuf>,
            $($(#[$fmeta])* #[arg(long)] pub $field: $ty,)*
        }

        impl $name {
            pub fn overlay(&mut self, mut file: Self) {
                overlay!(self, file; lo, hi, step, alpha, policy, beta, eps, out $(, $field)*);
                self.exact |= file.exact;
            }

            /// The shared grid and policy options.
            pub fn common(&self) -> ScanArgs {
                ScanArgs {
                    lo: self.lo,
                    hi: self.hi,
                    step: self.step,
                    alpha: self.alpha,
                    policy: self.policy,
                    beta: self.beta,
                    eps: self.eps,
                    exact: self.exact,
                    out: self.out.clone(),
                }
            }
        }
    };
}

scan_args!(ScanArgs {});

scan_args!(DetectArgs {
    /// Also write the underlying profile
    profile_out: Option<PathBuf>,
});

scan_args!(CompareArgs {
    /// Zero table (default: computed by the oracle)
    zeros: Option<PathBuf>,
});

#[derive(Args, Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct IdentityArgs {
    #[arg(long)]
    pub xi: Option<f64>,
    #[arg(long)]
    pub k: Option<u64>,
    /// Tail tolerance of the prime sum (default 1e-6)
    #[arg(long)]
    pub eps: Option<f64>,
    /// Zero table (default: computed by the oracle)
    #[arg(long)]
    pub zeros: Option<PathBuf>,
}

#[derive(Args, Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct OracleArgs {
    /// Largest ordinate searched, at most 1000
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl SieveArgs {
    pub fn overlay(&mut self, mut file: Self) {
        overlay!(self, file; limit, out);
    }
}

impl EvalArgs {
    pub fn overlay(&mut self, mut file: Self) {
        overlay!(self, file; xi, k, alpha, policy, beta, eps, zeros);
        self.exact |= file.exact;
    }
}

impl IdentityArgs {
    pub fn overlay(&mut self, mut file: Self) {
        overlay!(self, file; xi, k, eps, zeros);
    }
}

impl OracleArgs {
    pub fn overlay(&mut self, mut file: Self) {
        overlay!(self, file; t_max, out);
    }
}

/// TOML configuration: optional `threads` plus one table per subcommand.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ConfigFile {
    pub threads: Option<usize>,
    #[serde(default)]
    pub sieve: SieveArgs,
    #[serde(default)]
    pub eval: EvalArgs,
    #[serde(default)]
    pub profile: ScanArgs,
    #[serde(default)]
    pub detect: DetectArgs,
    #[serde(default)]
    pub identity_check: IdentityArgs,
    #[serde(default)]
    pub oracle_zeros: OracleArgs,
    #[serde(default)]
    pub compare: CompareArgs,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Io { path: path.display().to_string(), detail: e.to_string() })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::argument("config", e.message().to_string()))
    }
}

/// Resolves the policy options; `fixed-alpha` with α₀ = 1 unless told otherwise.
pub fn resolve_policy(policy: Option<PolicyName>, alpha: Option<f64>, beta: Option<f64>) -> Result<KPolicy> {
    let p = match (policy, alpha, beta) {
        (None | Some(PolicyName::FixedAlpha), a, None) => KPolicy::FixedAlpha(a.unwrap_or(1.0)),
        (Some(PolicyName::TwiceSquare), None, None) => KPolicy::TwiceSquare,
        (Some(PolicyName::LogSquared), None, Some(b)) => KPolicy::LogSquared { beta_policy: b },
        (Some(PolicyName::LogSquared), None, None) => {
            return Err(Error::argument("beta", "required by the log-squared policy"));
        }
        (_, Some(_), _) => return Err(Error::argument("alpha", "only applies to the fixed-alpha policy")),
        (_, _, Some(_)) => return Err(Error::argument("beta", "only applies to the log-squared policy")),
    };
    p.validate()?;
    Ok(p)
}

pub fn required<T>(value: Option<T>, field: &'static str) -> Result<T> {
    value.ok_or_else(|| Error::argument(field, "is required (flag or config file)"))
}
