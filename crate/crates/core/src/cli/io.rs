use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::explicit_formula::ZeroTable;

/// Significant digits of every floating-point field written by the CLI.
pub const SIG_DIGITS: usize = 12;

/// `%.12g`-style formatting, independent of locale.
pub fn fmt_g(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= SIG_DIGITS as i32 {
        let m = trim_fraction(mantissa);
        let sign = if exp < 0 { "-" } else { "+" };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
    trim_fraction(&format!("{x:.decimals$}")).to_string()
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Reads a zero table: one ordinate per line, blank lines and lines starting
/// with `#` skipped. Errors carry the 1-based file line.
pub fn read_zero_table(path: &Path) -> Result<ZeroTable> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io { path: path.display().to_string(), detail: e.to_string() })?;
    parse_zero_table(&text)
}

pub fn parse_zero_table(text: &str) -> Result<ZeroTable> {
    let mut gammas: Vec<f64> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let g: f64 = match s.parse() {
            Ok(v) if f64::is_finite(v) => v,
            _ => return Err(Error::Parse { line, text: s.to_string() }),
        };
        if g <= 0.0 {
            return Err(Error::Validation { line, detail: format!("ordinate {g} is not positive") });
        }
        if let Some(&prev) = gammas.last() {
            if g <= prev {
                return Err(Error::Validation { line, detail: format!("{g} does not exceed the previous entry {prev}") });
            }
        }
        gammas.push(g);
    }
    ZeroTable::new(gammas)
}

/// Writes a zero table in the format read by [`read_zero_table`].
pub fn write_zero_table(path: &Path, table: &ZeroTable) -> Result<()> {
    let mut out = String::new();
    for &g in table.gammas() {
        out.push_str(&fmt_g(g));
        out.push('\n');
    }
    fs::write(path, out).map_err(|e| Error::Io { path: path.display().to_string(), detail: e.to_string() })
}

/// Writes a CSV file with the given header; rows are pre-formatted fields.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let io_err = |e: csv::Error| Error::Io { path: path.display().to_string(), detail: e.to_string() };
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_path(path).map_err(io_err)?;
    w.write_record(header).map_err(io_err)?;
    for row in rows {
        w.write_record(row).map_err(io_err)?;
    }
    w.flush().map_err(|e| Error::Io { path: path.display().to_string(), detail: e.to_string() })
}
