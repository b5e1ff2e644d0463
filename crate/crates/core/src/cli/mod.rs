//! Command-line interface.
//!
//! Exit codes: 0 on success (including `--help`), 1 when a computation fails,
//! 2 for invalid arguments, unreadable inputs, or violated preconditions.

pub mod config;
pub mod io;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::explicit_formula::{
    identity_residual, prime_side_with, zero_side_s, WeightKind, ZeroTable, ZERO_WINDOW_WIDTHS,
};
use crate::scan::{detect_zeros, scan_profile_with, ScanProfile, ZeroCandidate};
use crate::sieve::prime_power_iter;
use crate::numerics::NeumaierSum;
use crate::weights::WeightParams;
use crate::zeta_oracle::{find_zeros, MAX_HEIGHT};

use config::{required, resolve_policy, CompareArgs, ConfigFile, DetectArgs, EvalArgs, IdentityArgs, OracleArgs, ScanArgs, SieveArgs};
pub use io::{fmt_g, parse_zero_table, read_zero_table, write_zero_table};

pub const PROFILE_HEADER: [&str; 5] = ["xi", "S", "k", "terms_used", "error_bound"];
pub const CANDIDATE_HEADER: [&str; 4] = ["location", "mass", "window_lo", "window_hi"];
pub const COMPARE_HEADER: [&str; 5] = ["xi", "prime_S", "zero_S", "difference", "k"];

#[derive(Parser, Debug)]
#[command(name = "explicit-zeros", version, about = "Locate zeta zeros from prime powers through a Hermite-weighted explicit formula")]
struct Cli {
    /// TOML file with one table per subcommand; flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sieve the von Mangoldt function up to a limit
    Sieve(SieveArgs),
    /// Prime side of S(xi, k) at a single point
    Eval(EvalArgs),
    /// Prime-side profile of S over a grid of xi
    Profile(ScanArgs),
    /// Zero candidates from the half-unit masses of a profile
    Detect(DetectArgs),
    /// Residual of the contour identity for the exact weight
    IdentityCheck(IdentityArgs),
    /// Critical-line zeros from the zeta oracle
    OracleZeros(OracleArgs),
    /// Prime side against zero side over a grid
    Compare(CompareArgs),
}

/// Runs the CLI with process arguments, printing to stdout/stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (code, out, err) = run_captured(args);
    print!("{out}");
    eprint!("{err}");
    let _ = std::io::stdout().flush();
    code
}

/// Runs the CLI and returns `(exit code, stdout, stderr)`.
pub fn run_captured<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.to_string();
            return if e.use_stderr() { (2, String::new(), text) } else { (0, text, String::new()) };
        }
    };
    let mut out = String::new();
    let mut err = String::new();
    match execute(cli, &mut out, &mut err) {
        Ok(()) => (0, out, err),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            (exit_code(&e), out, err)
        }
    }
}

/// 1 for failures of a computation, 2 for everything the caller can fix.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Numerical { .. } | Error::Domain { .. } => 1,
        _ => 2,
    }
}

fn execute(cli: Cli, out: &mut String, err: &mut String) -> Result<()> {
    let file = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let threads = cli.threads.or(file.threads);
    if threads == Some(0) {
        return Err(Error::argument("threads", "must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::argument("threads", e.to_string()))?;
    pool.install(|| dispatch(cli.command, file, out, err))
}

fn dispatch(command: Command, file: ConfigFile, out: &mut String, err: &mut String) -> Result<()> {
    match command {
        Command::Sieve(mut a) => {
            a.overlay(file.sieve);
            cmd_sieve(&a, out)
        }
        Command::Eval(mut a) => {
            a.overlay(file.eval);
            cmd_eval(&a, out)
        }
        Command::Profile(mut a) => {
            a.overlay(file.profile);
            cmd_profile(&a, out)
        }
        Command::Detect(mut a) => {
            a.overlay(file.detect);
            cmd_detect(&a, out)
        }
        Command::IdentityCheck(mut a) => {
            a.overlay(file.identity_check);
            cmd_identity(&a, out, err)
        }
        Command::OracleZeros(mut a) => {
            a.overlay(file.oracle_zeros);
            cmd_oracle(&a, out, err)
        }
        Command::Compare(mut a) => {
            a.overlay(file.compare);
            cmd_compare(&a, out, err)
        }
    }
}

fn cmd_sieve(a: &SieveArgs, out: &mut String) -> Result<()> {
    let limit = required(a.limit, "limit")?;
    let mut psi = NeumaierSum::new();
    let mut count = 0u64;
    let mut rows = Vec::new();
    for (n, l) in prime_power_iter(limit)? {
        psi.add(l);
        count += 1;
        if a.out.is_some() {
            rows.push(vec![n.to_string(), fmt_g(l)]);
        }
    }
    if let Some(path) = &a.out {
        io::write_csv(path, &["n", "lambda"], &rows)?;
    }
    let _ = writeln!(out, "limit: {limit}");
    let _ = writeln!(out, "prime_powers: {count}");
    let _ = writeln!(out, "psi: {}", fmt_g(psi.value()));
    Ok(())
}

fn weight_kind(exact: bool) -> WeightKind {
    if exact {
        WeightKind::Exact
    } else {
        WeightKind::default()
    }
}

fn cmd_eval(a: &EvalArgs, out: &mut String) -> Result<()> {
    let xi = required(a.xi, "xi")?;
    let eps = a.eps.unwrap_or(0.05);
    let p = match a.k {
        Some(k) => {
            if a.policy.is_some() || a.alpha.is_some() || a.beta.is_some() {
                return Err(Error::argument("k", "cannot be combined with policy options"));
            }
            WeightParams::new(xi, k)?
        }
        None => WeightParams::new(xi, resolve_policy(a.policy, a.alpha, a.beta)?.k_for(xi)?)?,
    };
    let zeros = a.zeros.as_deref().map(read_zero_table).transpose()?;
    let b = prime_side_with(&p, eps, weight_kind(a.exact))?;
    let _ = writeln!(out, "xi: {}", fmt_g(xi));
    let _ = writeln!(out, "k: {}", p.k());
    let _ = writeln!(out, "alpha: {}", fmt_g(p.alpha()));
    let _ = writeln!(out, "weight: {}", if a.exact { "exact" } else { "asymptotic" });
    let _ = writeln!(out, "smooth_term: {}", fmt_g(b.smooth_term));
    let _ = writeln!(out, "prime_sum: {}", fmt_g(b.prime_sum));
    let _ = writeln!(out, "pole_term: {}", fmt_g(b.pole_term));
    let _ = writeln!(out, "S: {}", fmt_g(b.total));
    let _ = writeln!(out, "error_bound: {} (uncalibrated, C = 1)", fmt_g(b.error_bound));
    let _ = writeln!(out, "terms_used: {}", b.terms_used);
    if let Some(z) = zeros {
        let zs = zero_side_s(&p, &z)?;
        let _ = writeln!(out, "zero_side_S: {}", fmt_g(zs.value));
        let _ = writeln!(out, "difference: {}", fmt_g(b.total - zs.value));
    }
    Ok(())
}

fn build_profile(a: &ScanArgs) -> Result<ScanProfile> {
    let lo = required(a.lo, "lo")?;
    let hi = required(a.hi, "hi")?;
    let step = required(a.step, "step")?;
    let policy = resolve_policy(a.policy, a.alpha, a.beta)?;
    scan_profile_with(lo, hi, step, policy, a.eps.unwrap_or(0.05), weight_kind(a.exact))
}

fn profile_rows(p: &ScanProfile) -> Vec<Vec<String>> {
    (0..p.len())
        .map(|i| {
            vec![
                fmt_g(p.xis[i]),
                fmt_g(p.values[i]),
                p.ks[i].to_string(),
                p.terms_used[i].to_string(),
                fmt_g(p.error_bounds[i]),
            ]
        })
        .collect()
}

fn candidate_rows(c: &[ZeroCandidate]) -> Vec<Vec<String>> {
    c.iter().map(|z| vec![fmt_g(z.location), fmt_g(z.mass), fmt_g(z.window.0), fmt_g(z.window.1)]).collect()
}

fn describe_profile(p: &ScanProfile, out: &mut String) {
    let imax = (0..p.len()).fold(0, |m, i| if p.values[i] > p.values[m] { i } else { m });
    let _ = writeln!(out, "points: {}", p.len());
    let _ = writeln!(out, "range: [{}, {}] step {}", fmt_g(p.xis[0]), fmt_g(p.xis[p.len() - 1]), fmt_g(p.step));
    let _ = writeln!(out, "policy: {:?}", p.policy);
    let _ = writeln!(out, "eps: {}", fmt_g(p.eps));
    let _ = writeln!(out, "max_S: {} at xi = {}", fmt_g(p.values[imax]), fmt_g(p.xis[imax]));
    let _ = writeln!(out, "max_terms_used: {}", p.terms_used.iter().max().copied().unwrap_or(0));
}

fn cmd_profile(a: &ScanArgs, out: &mut String) -> Result<()> {
    let p = build_profile(a)?;
    if let Some(path) = &a.out {
        io::write_csv(path, &PROFILE_HEADER, &profile_rows(&p))?;
    }
    describe_profile(&p, out);
    Ok(())
}

fn cmd_detect(a: &DetectArgs, out: &mut String) -> Result<()> {
    let p = build_profile(&a.common())?;
    let found = detect_zeros(&p)?;
    if let Some(path) = &a.out {
        io::write_csv(path, &CANDIDATE_HEADER, &candidate_rows(&found))?;
    }
    if let Some(path) = &a.profile_out {
        io::write_csv(path, &PROFILE_HEADER, &profile_rows(&p))?;
    }
    describe_profile(&p, out);
    let _ = writeln!(out, "candidates: {}", found.len());
    for c in &found {
        let _ = writeln!(
            out,
            "  {} mass {} window [{}, {}]",
            fmt_g(c.location),
            fmt_g(c.mass),
            fmt_g(c.window.0),
            fmt_g(c.window.1)
        );
    }
    Ok(())
}

/// Reads `path`, or runs the zero oracle up to `height` when no table is given.
fn zero_table(path: Option<&std::path::Path>, height: f64, err: &mut String) -> Result<ZeroTable> {
    if let Some(p) = path {
        return read_zero_table(p);
    }
    if height > MAX_HEIGHT {
        return Err(Error::argument("zeros", format!("a table reaching {height} is needed; the oracle stops at {MAX_HEIGHT}")));
    }
    let search = find_zeros(height.max(1.0))?;
    if let Some(w) = &search.incomplete_warning {
        let _ = writeln!(err, "warning: {w}");
    }
    Ok(search.table)
}

fn cmd_identity(a: &IdentityArgs, out: &mut String, err: &mut String) -> Result<()> {
    let xi = required(a.xi, "xi")?;
    let k = required(a.k, "k")?;
    let eps = a.eps.unwrap_or(1e-6);
    let p = WeightParams::new(xi, k)?;
    let zeros = zero_table(a.zeros.as_deref(), p.spectral_window().1 + 1.0, err)?;
    let r = identity_residual(&p, &zeros, eps)?;
    let _ = writeln!(out, "xi: {}", fmt_g(xi));
    let _ = writeln!(out, "k: {k}");
    let _ = writeln!(out, "eps: {}", fmt_g(eps));
    let _ = writeln!(out, "zeros: {}", zeros.len());
    let _ = writeln!(out, "m1: {}", fmt_g(r.m1));
    let _ = writeln!(out, "pole_term: {}", fmt_g(r.pole_term));
    let _ = writeln!(out, "zero_sum: {}", fmt_g(r.zero_sum));
    let _ = writeln!(out, "J: {}", fmt_g(r.j));
    let _ = writeln!(out, "terms_used: {}", r.terms_used);
    let _ = writeln!(out, "residual: {}", fmt_g(r.residual));
    Ok(())
}

fn cmd_oracle(a: &OracleArgs, out: &mut String, err: &mut String) -> Result<()> {
    let t_max = required(a.t_max, "t-max")?;
    let search = find_zeros(t_max)?;
    if let Some(w) = &search.incomplete_warning {
        let _ = writeln!(err, "warning: {w}");
    }
    match &a.out {
        Some(path) => {
            write_zero_table(path, &search.table)?;
            let _ = writeln!(out, "t_max: {}", fmt_g(t_max));
            let _ = writeln!(out, "zeros: {}", search.table.len());
            let _ = writeln!(out, "smooth_count: {}", fmt_g(search.expected_count));
        }
        None => {
            for &g in search.table.gammas() {
                let _ = writeln!(out, "{}", fmt_g(g));
            }
        }
    }
    Ok(())
}

fn cmd_compare(a: &CompareArgs, out: &mut String, err: &mut String) -> Result<()> {
    let common = a.common();
    let lo = required(common.lo, "lo")?;
    let hi = required(common.hi, "hi")?;
    let policy = resolve_policy(common.policy, common.alpha, common.beta)?;
    let alpha_min = [lo, hi]
        .iter()
        .map(|&x| Ok(policy.k_for(x)? as f64 / (x * x)))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let height = hi + ZERO_WINDOW_WIDTHS / alpha_min.sqrt() + 1.0;
    let zeros = zero_table(a.zeros.as_deref(), height, err)?;
    let p = build_profile(&common)?;
    let mut rows = Vec::with_capacity(p.len());
    let mut worst = (0.0f64, p.xis[0]);
    for i in 0..p.len() {
        let params = WeightParams::new(p.xis[i], p.ks[i])?;
        let z = zero_side_s(&params, &zeros)?.value;
        let d = p.values[i] - z;
        if d.abs() > worst.0 {
            worst = (d.abs(), p.xis[i]);
        }
        rows.push(vec![fmt_g(p.xis[i]), fmt_g(p.values[i]), fmt_g(z), fmt_g(d), p.ks[i].to_string()]);
    }
    if let Some(path) = &a.out {
        io::write_csv(path, &COMPARE_HEADER, &rows)?;
    }
    describe_profile(&p, out);
    let _ = writeln!(out, "zeros: {}", zeros.len());
    let _ = writeln!(out, "max_abs_difference: {} at xi = {}", fmt_g(worst.0), fmt_g(worst.1));
    Ok(())
}
