//! Command-line flags and the optional `key = value` config file.
//!
//! A flag given on the command line wins over the same key in the file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Parser, Debug)]
#[command(name = "psidiff", version, about = "Irrationality measure functions and their normalized differences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Psi,
    Word,
    Profile,
    Construct,
    Verify,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// ψ of one number at given points or on every denominator interval.
    Psi(Flags),
    /// The B/Q/T word of two numbers.
    Word(Flags),
    /// Ratio profile of two numbers.
    Profile(Flags),
    /// Build an extremal pair.
    Construct(Flags),
    /// Run the lemma and theorem checks on a pair.
    Verify(Flags),
}

impl Command {
    pub fn split(self) -> (CommandKind, Flags) {
        match self {
            Command::Psi(f) => (CommandKind::Psi, f),
            Command::Word(f) => (CommandKind::Word, f),
            Command::Profile(f) => (CommandKind::Profile, f),
            Command::Construct(f) => (CommandKind::Construct, f),
            Command::Verify(f) => (CommandKind::Verify, f),
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    Exact,
    Interval,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    /// One letter per line (`word` only).
    Lines,
}

#[derive(Args, Debug, Default, Clone)]
pub struct Flags {
    /// Config file with `key = value` lines.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// First number, `cf:[...]` or `quad:(P,D,Q)`.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Second number.
    #[arg(long)]
    pub beta: Option<String>,
    /// Value limit; integers or `1e12`.
    #[arg(long)]
    pub limit: Option<String>,
    /// Evaluation points for `psi`, comma separated.
    #[arg(long)]
    pub t: Option<String>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Enclosure width for interval mode, e.g. `1e-20` or `1/1000`.
    #[arg(long)]
    pub tol: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON file with exact values for each profile record.
    #[arg(long)]
    pub sidecar: Option<PathBuf>,
    /// Significant digits in decimal output.
    #[arg(long)]
    pub precision: Option<usize>,
    /// Tail window length in records.
    #[arg(long)]
    pub window: Option<usize>,
    /// Seed for randomized sweeps in `verify`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// `sqrt2` or `tau`.
    #[arg(long)]
    pub family: Option<String>,
    /// Exponent for `construct`, rational in (0, 1).
    #[arg(long)]
    pub x: Option<String>,
    /// Target constant for `construct`: a rational, `c1` or `c2`.
    #[arg(long = "target-c")]
    pub target_c: Option<String>,
    /// Kronecker tolerance for `construct`.
    #[arg(long)]
    pub epsilon: Option<String>,
    /// Bound on U in the Kronecker search.
    #[arg(long)]
    pub bound: Option<u64>,
    /// Slack for the C_2 check in `verify`.
    #[arg(long)]
    pub slack: Option<String>,
}

const KEYS: &[&str] = &[
    "alpha", "beta", "limit", "t", "mode", "tol", "format", "out", "sidecar", "precision", "window", "seed",
    "family", "x", "target-c", "epsilon", "bound", "slack",
];

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn parse_file(path: &Path) -> Result<BTreeMap<String, (usize, String)>, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = i + 1;
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| ConfigError(format!("{}:{lineno}: expected `key = value`", path.display())))?;
        let key = key.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(ConfigError(format!("{}:{lineno}: unknown key `{key}`", path.display())));
        }
        let value = value.trim().trim_matches('"').to_string();
        if map.insert(key.clone(), (lineno, value)).is_some() {
            return Err(ConfigError(format!("{}:{lineno}: duplicate key `{key}`", path.display())));
        }
    }
    Ok(map)
}

fn fill<T>(slot: &mut Option<T>, key: &str, file: &BTreeMap<String, (usize, String)>, path: &Path, parse: impl Fn(&str) -> Option<T>) -> Result<(), ConfigError> {
    if slot.is_some() {
        return Ok(());
    }
    if let Some((lineno, v)) = file.get(key) {
        *slot = Some(parse(v).ok_or_else(|| ConfigError(format!("{}:{lineno}: bad value for `{key}`: {v}", path.display())))?);
    }
    Ok(())
}

impl Flags {
    /// Fills unset flags from the config file, if one was given.
    pub fn merge_config(mut self) -> Result<Flags, ConfigError> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let file = parse_file(&path)?;
        let s = |v: &str| Some(v.to_string());
        fill(&mut self.alpha, "alpha", &file, &path, s)?;
        fill(&mut self.beta, "beta", &file, &path, s)?;
        fill(&mut self.limit, "limit", &file, &path, s)?;
        fill(&mut self.t, "t", &file, &path, s)?;
        fill(&mut self.mode, "mode", &file, &path, |v| ModeArg::from_str(v, true).ok())?;
        fill(&mut self.tol, "tol", &file, &path, s)?;
        fill(&mut self.format, "format", &file, &path, |v| Format::from_str(v, true).ok())?;
        fill(&mut self.out, "out", &file, &path, |v| Some(PathBuf::from(v)))?;
        fill(&mut self.sidecar, "sidecar", &file, &path, |v| Some(PathBuf::from(v)))?;
        fill(&mut self.precision, "precision", &file, &path, |v| v.parse().ok())?;
        fill(&mut self.window, "window", &file, &path, |v| v.parse().ok())?;
        fill(&mut self.seed, "seed", &file, &path, |v| v.parse().ok())?;
        fill(&mut self.family, "family", &file, &path, s)?;
        fill(&mut self.x, "x", &file, &path, s)?;
        fill(&mut self.target_c, "target-c", &file, &path, s)?;
        fill(&mut self.epsilon, "epsilon", &file, &path, s)?;
        fill(&mut self.bound, "bound", &file, &path, |v| v.parse().ok())?;
        fill(&mut self.slack, "slack", &file, &path, s)?;
        Ok(self)
    }
}

/// Parses `123`, `-4/7`, `0.25`, `1e-9` or `2.5E3` exactly.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("0{int}{frac}").parse().ok()?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut v = BigRational::from_integer(digits);
    if scale >= 0 {
        v *= BigRational::from_integer(ten.pow(scale as u32));
    } else {
        v /= BigRational::from_integer(ten.pow((-scale) as u32));
    }
    Some(if neg { -v } else { v })
}

/// Parses a positive integer limit such as `1000000` or `1e12`.
pub fn parse_limit(s: &str) -> Option<BigInt> {
    let v = parse_rational(s)?;
    if !v.is_integer() || v < BigRational::one() {
        return None;
    }
    Some(v.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(parse_rational("1/2"), Some(r(1, 2)));
        assert_eq!(parse_rational("0.003"), Some(r(3, 1000)));
        assert_eq!(parse_rational("-2.5e1"), Some(r(-25, 1)));
        assert_eq!(parse_rational("1e-9"), Some(r(1, 1_000_000_000)));
        assert_eq!(parse_rational(".5"), Some(r(1, 2)));
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_limit("1e12"), Some(BigInt::from(10).pow(12)));
        assert_eq!(parse_limit("0"), None);
        assert_eq!(parse_limit("1.5"), None);
    }
}
