//! Command-line front end: `qexp`, `lambda` and `verify`.
//!
//! Every flag can also be set through an environment variable (`MODREG_TOL`,
//! `MODREG_TERMS`, ...). A flag on the command line wins over the variable,
//! which wins over the built-in default.

use crate::eisenstein::{build_series, EisensteinSpec, Family};
use crate::error::{Error, Result};
use crate::lfunc::{catalog_pair, completed_lambda_with, lambda_star_with, pair_truncation, LambdaConfig, LambdaValue, MellinPair, StarPoint};
use crate::qseries::Coeff;
use crate::suites::{run, Suite, SuiteOptions, SuiteReport};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use std::io::Write;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "modreg", version, about = "Eisenstein series, completed L-functions and regulator identity checks")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Target tolerance of L-value quadrature.
    #[arg(long, global = true, env = "MODREG_TOL", default_value_t = 1e-13)]
    pub tol: f64,
    /// Number of q-expansion coefficients to print.
    #[arg(long, global = true, env = "MODREG_TERMS", default_value_t = 20)]
    pub terms: u64,
    /// Working precision in bits; values above 53 are rejected (double precision only).
    #[arg(long, global = true, env = "MODREG_PREC", default_value_t = 53)]
    pub prec: u32,
    /// Seed of the randomized suites.
    #[arg(long, global = true, env = "MODREG_SEED", default_value_t = 7)]
    pub seed: u64,
    /// Write the output here instead of standard output.
    #[arg(long, global = true, env = "MODREG_OUT")]
    pub out: Option<std::path::PathBuf>,
    #[arg(long, global = true, env = "MODREG_FORMAT", value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dump the q-expansion of one catalog series.
    Qexp(SeriesArgs),
    /// Completed L-function of a catalog series, or of a product of two.
    Lambda(LambdaArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SeriesArgs {
    /// E, F, G or H
    pub family: String,
    pub k: u32,
    pub a: i64,
    pub b: i64,
    #[arg(value_name = "N")]
    pub n: u64,
}

#[derive(Debug, Clone, Args)]
pub struct LambdaArgs {
    #[command(flatten)]
    pub series: SeriesArgs,
    /// The point `s`, e.g. `4`, `0.5+2i`, `1-0.25i`.
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    /// Regularized value at `s = 0` or `s = k`.
    #[arg(long)]
    pub star: bool,
    /// Multiply by a second G or H series of the same `N`: `FAMILY K A B`.
    #[arg(long, num_args = 4, value_names = ["FAMILY", "K", "A", "B"], allow_hyphen_values = true)]
    pub times: Option<Vec<String>>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    pub suite: SuiteChoice,
    #[arg(long)]
    pub k1: Option<u32>,
    #[arg(long)]
    pub k2: Option<u32>,
    #[arg(long = "N")]
    pub n: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum SuiteChoice {
    Hurwitz,
    Fourier,
    AtkinLehner,
    Slash,
    Rz,
    Rankin,
    Fibers,
    Cancellation,
    Theorem,
    Preswap,
    Constants,
    Lambda,
    All,
}

impl SuiteChoice {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteChoice::Hurwitz => vec![Suite::Hurwitz],
            SuiteChoice::Fourier => vec![Suite::Fourier],
            SuiteChoice::AtkinLehner => vec![Suite::AtkinLehner],
            SuiteChoice::Slash => vec![Suite::Slash],
            SuiteChoice::Rz => vec![Suite::Rz],
            SuiteChoice::Rankin => vec![Suite::Rankin],
            SuiteChoice::Fibers => vec![Suite::Fibers],
            SuiteChoice::Cancellation => vec![Suite::Cancellation],
            SuiteChoice::Theorem => vec![Suite::Theorem],
            SuiteChoice::Preswap => vec![Suite::Preswap],
            SuiteChoice::Constants => vec![Suite::Constants],
            SuiteChoice::Lambda => vec![Suite::Lambda],
            SuiteChoice::All => Suite::ALL.to_vec(),
        }
    }
}

/// Parses `4`, `-1.5`, `2i`, `0.5+2i`, `1-0.25i`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidSpec(format!("cannot parse {text:?} as a complex number"));
    let num = |x: &str| -> Result<f64> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => x.parse::<f64>().map_err(|_| bad()),
        }
    };
    if let Some(body) = t.strip_suffix('i') {
        // split at the last sign that is not an exponent sign or the leading one
        let bytes = body.as_bytes();
        let mut split = None;
        for j in (1..bytes.len()).rev() {
            if (bytes[j] == b'+' || bytes[j] == b'-') && !matches!(bytes[j - 1], b'e' | b'E') {
                split = Some(j);
                break;
            }
        }
        match split {
            Some(j) => Ok(Complex64::new(body[..j].parse::<f64>().map_err(|_| bad())?, num(&body[j..])?)),
            None => Ok(Complex64::new(0.0, num(body)?)),
        }
    } else {
        Ok(Complex64::new(t.parse::<f64>().map_err(|_| bad())?, 0.0))
    }
}

fn spec_of(s: &SeriesArgs) -> Result<EisensteinSpec> {
    EisensteinSpec::new(s.family.parse::<Family>()?, s.k, s.a, s.b, s.n)
}

/// What a command produced: the text to write and the exit code.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    schema: u32,
    #[serde(flatten)]
    body: T,
}

fn json<T: Serialize>(body: T) -> String {
    let mut s = serde_json::to_string_pretty(&Envelope { schema: SCHEMA, body }).expect("report serializes");
    s.push('\n');
    s
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    if cli.config.tol <= 0.0 || !cli.config.tol.is_finite() {
        return Err(Error::InvalidSpec("--tol must be positive".into()));
    }
    if cli.config.terms == 0 {
        return Err(Error::InvalidSpec("--terms must be positive".into()));
    }
    if cli.config.prec == 0 || cli.config.prec > 53 {
        return Err(Error::InvalidSpec(format!("--prec {} not supported: only double precision (<= 53 bits)", cli.config.prec)));
    }
    match &cli.command {
        Command::Qexp(args) => qexp(args, &cli.config),
        Command::Lambda(args) => lambda(args, &cli.config),
        Command::Verify(args) => verify(args, &cli.config),
    }
}

#[derive(Serialize)]
struct CoeffLine {
    exponent: String,
    re: f64,
    im: f64,
    exact: Option<String>,
}

#[derive(Serialize)]
struct QexpReport {
    spec: EisensteinSpec,
    denom: u64,
    coefficients: Vec<CoeffLine>,
}

fn qexp(args: &SeriesArgs, cfg: &RunConfig) -> Result<Outcome> {
    let spec = spec_of(args)?;
    let series = build_series(&spec, cfg.terms)?;
    let text = match cfg.format.unwrap_or(OutputFormat::Text) {
        OutputFormat::Text => series.dump(&spec.family.to_string(), spec.a, spec.b),
        OutputFormat::Json | OutputFormat::Csv => {
            let d = series.denom();
            let coefficients: Vec<CoeffLine> = (0..cfg.terms)
                .map(|e| {
                    let c = series.coeff(e);
                    let z = c.to_complex();
                    let g = num_integer::gcd(e, d);
                    CoeffLine {
                        exponent: format!("{}/{}", e / g, d / g),
                        re: z.re,
                        im: z.im,
                        exact: match c {
                            Coeff::Exact(x) => Some(x.to_string()),
                            _ => None,
                        },
                    }
                })
                .collect();
            if cfg.format == Some(OutputFormat::Json) {
                json(QexpReport { spec, denom: d, coefficients })
            } else {
                let mut s = String::from("exponent,re,im\n");
                for c in coefficients {
                    s.push_str(&format!("{},{:.17e},{:.17e}\n", c.exponent, c.re, c.im));
                }
                s
            }
        }
    };
    Ok(Outcome { text, code: 0 })
}

fn pair_for(spec: &EisensteinSpec, weight_total: u32) -> Result<MellinPair> {
    catalog_pair(spec, pair_truncation(spec.n * spec.n, weight_total + 1))
}

#[derive(Serialize)]
struct LambdaReport {
    spec: EisensteinSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    times: Option<EisensteinSpec>,
    weight: i64,
    level: u64,
    #[serde(flatten)]
    value: LambdaValue,
}

fn lambda(args: &LambdaArgs, cfg: &RunConfig) -> Result<Outcome> {
    let spec = spec_of(&args.series)?;
    let s = parse_complex(&args.s)?;
    let other = match &args.times {
        Some(v) => {
            let k = v[1].parse::<u32>().map_err(|_| Error::InvalidSpec(format!("bad weight {:?}", v[1])))?;
            let a = v[2].parse::<i64>().map_err(|_| Error::InvalidSpec(format!("bad label {:?}", v[2])))?;
            let b = v[3].parse::<i64>().map_err(|_| Error::InvalidSpec(format!("bad label {:?}", v[3])))?;
            Some(EisensteinSpec::new(v[0].parse::<Family>()?, k, a, b, spec.n)?)
        }
        None => None,
    };
    let total = spec.k + other.map_or(0, |o| o.k);
    let mut pair = pair_for(&spec, total)?;
    if let Some(o) = &other {
        pair = pair.mul(&pair_for(o, total)?)?;
    }
    let lcfg = LambdaConfig { tol: cfg.tol.max(2f64.powi(-(cfg.prec as i32))), ..Default::default() };
    let value = if args.star {
        let at = if s.norm() < 1e-13 {
            StarPoint::Zero
        } else if (s - pair.weight as f64).norm() < 1e-13 {
            StarPoint::K
        } else {
            return Err(Error::InvalidSpec(format!("--star needs s = 0 or s = k = {}", pair.weight)));
        };
        lambda_star_with(&pair, at, &lcfg)?
    } else {
        completed_lambda_with(&pair, s, &lcfg)?
    };
    let report = LambdaReport { spec, times: other, weight: pair.weight, level: pair.level, value };
    let text = match cfg.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => json(report),
        OutputFormat::Csv => {
            let v = report.value.value;
            format!("s_re,s_im,re,im,err\n{},{},{:.17e},{:.17e},{:.3e}\n", s.re, s.im, v.re, v.im, v.err)
        }
        OutputFormat::Text => {
            let v = report.value.value;
            format!("Lambda(s = {s}) = {:.15e} {:+.15e}i  (err {:.2e})\n", v.re, v.im, v.err)
        }
    };
    Ok(Outcome { text, code: 0 })
}

#[derive(Serialize)]
struct VerifyReport {
    passed: bool,
    seed: u64,
    suites: Vec<SuiteReport>,
}

fn verify(args: &VerifyArgs, cfg: &RunConfig) -> Result<Outcome> {
    let opts = SuiteOptions { seed: cfg.seed, k1: args.k1, k2: args.k2, n: args.n };
    let reports: Vec<SuiteReport> = args.suite.suites().into_iter().map(|s| run(s, &opts)).collect();
    let passed = reports.iter().all(|r| r.passed);
    for r in reports.iter().filter(|r| !r.passed) {
        let worst = r.worst.as_ref().map_or("none".to_string(), |w| format!("{} residual {:e}", w.id, w.residual));
        eprintln!("FAIL {} ({}): worst {}; threshold {:e}; errors {}", r.suite, r.reference, worst, r.threshold, r.errors.len());
        for e in &r.errors {
            eprintln!("  {e}");
        }
    }
    let report = VerifyReport { passed, seed: cfg.seed, suites: reports };
    let text = match cfg.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => json(&report),
        OutputFormat::Csv => {
            let mut s = String::from("suite,check,residual,passed\n");
            for r in &report.suites {
                for c in &r.checks {
                    s.push_str(&format!("{},\"{}\",{:e},{}\n", r.suite, c.id.replace('"', "'"), c.residual, c.passed));
                }
            }
            s
        }
        OutputFormat::Text => {
            let mut s = String::new();
            for r in &report.suites {
                let worst = r.worst.as_ref().map_or(0.0, |w| w.residual);
                s.push_str(&format!(
                    "{} {:<14} cases {:>4}  worst {:.2e}  threshold {:.0e}\n",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.suite,
                    r.cases,
                    worst,
                    r.threshold
                ));
            }
            s
        }
    };
    Ok(Outcome { text, code: if passed { 0 } else { 1 } })
}

/// Parses `argv`, runs the command, writes the output; returns the exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let written = match &cli.config.out {
                Some(path) => std::fs::write(path, &out.text),
                None => std::io::stdout().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return 4;
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("4").unwrap(), Complex64::new(4.0, 0.0));
        assert_eq!(parse_complex("0.5+2i").unwrap(), Complex64::new(0.5, 2.0));
        assert_eq!(parse_complex("1-0.25i").unwrap(), Complex64::new(1.0, -0.25));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("1e-3+1e-2i").unwrap(), Complex64::new(1e-3, 1e-2));
        assert!(parse_complex("x").is_err());
    }
}
