//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 non-convergence.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::catalog::catalog_lookup;
use crate::exact::{wallis_even_ratio, wallis_odd_ratio, WallisParity};
use crate::quadrature::{oracle_integral_with, Inner, QuadratureOptions, QuadratureResult, DEFAULT_LEVEL_CAP, MAX_LEVEL};
use crate::sequences::{BernoulliTable, EulerTable};
use crate::transform::{integrate_with, PiLinearValue, TransformError, TransformOptions, DEFAULT_MAX_TERMS};
use crate::verification::report::{format_number, round_sig};
use crate::verification::{run_all, APPLICATIONS, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NON_CONVERGENCE: i32 = 3;

/// Environment variable naming a `key=value` config file.
pub const CONFIG_ENV: &str = "WALLIS_SERIES_CONFIG";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Table,
    Json,
}

impl FromStr for OutputFormat {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "json" => Ok(OutputFormat::Json),
            other => Err(ConfigError::Value {
                key: "output_format".into(),
                value: other.into(),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CliConfig {
    pub tolerance: f64,
    pub max_terms: usize,
    pub output_format: OutputFormat,
    pub quadrature_level_cap: usize,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            tolerance: 1e-10,
            max_terms: DEFAULT_MAX_TERMS,
            output_format: OutputFormat::Table,
            quadrature_level_cap: DEFAULT_LEVEL_CAP,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {message}")]
    Read { path: PathBuf, message: String },
    #[error("line {line}: expected key=value")]
    Syntax { line: usize },
    #[error("unknown config key {0:?}")]
    UnknownKey(String),
    #[error("invalid value {value:?} for {key}")]
    Value { key: String, value: String },
}

impl CliConfig {
    /// Parses a flat `key=value` file; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut config = CliConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(ConfigError::Syntax { line: i + 1 })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = || ConfigError::Value {
                key: key.into(),
                value: value.into(),
            };
            match key {
                "tolerance" => config.tolerance = value.parse().map_err(|_| bad())?,
                "max_terms" => config.max_terms = value.parse().map_err(|_| bad())?,
                "output_format" => config.output_format = value.parse()?,
                "quadrature_level_cap" => config.quadrature_level_cap = value.parse().map_err(|_| bad())?,
                _ => return Err(ConfigError::UnknownKey(key.into())),
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Read {
            path: path.to_owned(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(ConfigError::Value {
                key: "tolerance".into(),
                value: self.tolerance.to_string(),
            });
        }
        if self.max_terms == 0 {
            return Err(ConfigError::Value {
                key: "max_terms".into(),
                value: "0".into(),
            });
        }
        if self.quadrature_level_cap == 0 || self.quadrature_level_cap > MAX_LEVEL {
            return Err(ConfigError::Value {
                key: "quadrature_level_cap".into(),
                value: self.quadrature_level_cap.to_string(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Parser)]
#[command(name = "wallis-series", version, about = "Integrals of f(sin x) over [0, π/2] from Maclaurin coefficients")]
struct Cli {
    /// Config file (key=value); defaults to $WALLIS_SERIES_CONFIG when set.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Odd,
    Even,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum NumberKind {
    Bernoulli,
    Euler,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact value of ∫₀^{π/2} sin^m x dx with m = 2n+1 (odd) or 2n (even).
    Wallis {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum)]
        parity: ParityArg,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Integrate a catalog function composed with sin and compare with quadrature.
    Integrate {
        #[arg(long)]
        name: String,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        max_terms: Option<usize>,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Bernoulli or Euler type numbers.
    Numbers {
        #[arg(value_enum)]
        kind: NumberKind,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        max_terms: Option<usize>,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
}

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl std::fmt::Display) -> Self {
        Output {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Runs the CLI with explicit arguments and streams; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let output = match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output::ok(text)
            }
        }
    };
    let _ = stdout.write_all(output.stdout.as_bytes());
    let _ = stderr.write_all(output.stderr.as_bytes());
    output.code
}

/// Entry point for the binary.
pub fn main() -> i32 {
    run(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr())
}

fn load_config(path: Option<&Path>) -> Result<CliConfig, ConfigError> {
    match path {
        Some(p) => CliConfig::load(p),
        None => match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => CliConfig::load(Path::new(&p)),
            _ => Ok(CliConfig::default()),
        },
    }
}

fn dispatch(cli: Cli) -> Output {
    let mut config = match load_config(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => return Output::usage(e),
    };
    match cli.command {
        Command::Wallis { n, parity, format } => {
            config.output_format = format.unwrap_or(config.output_format);
            cmd_wallis(n, parity, config.output_format)
        }
        Command::Integrate {
            name,
            tol,
            max_terms,
            format,
        } => {
            config.tolerance = tol.unwrap_or(config.tolerance);
            config.max_terms = max_terms.unwrap_or(config.max_terms);
            config.output_format = format.unwrap_or(config.output_format);
            if let Err(e) = config.validate() {
                return Output::usage(e);
            }
            cmd_integrate(&name, &config)
        }
        Command::Numbers { kind, count, format } => {
            config.output_format = format.unwrap_or(config.output_format);
            cmd_numbers(kind, count as usize, config.output_format)
        }
        Command::Verify { tol, max_terms, format } => {
            config.tolerance = tol.unwrap_or(config.tolerance);
            config.max_terms = max_terms.unwrap_or(config.max_terms);
            config.output_format = format.unwrap_or(config.output_format);
            if let Err(e) = config.validate() {
                return Output::usage(e);
            }
            cmd_verify(&config)
        }
    }
}

fn json_line(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn cmd_wallis(n: u64, parity: ParityArg, format: OutputFormat) -> Output {
    let Ok(n) = usize::try_from(n) else {
        return Output::usage("n is too large");
    };
    let (parity, ratio) = match parity {
        ParityArg::Odd => (WallisParity::Odd, wallis_odd_ratio(n)),
        ParityArg::Even => (WallisParity::Even, wallis_even_ratio(n)),
    };
    let value = crate::transform::summation::to_f64(&ratio);
    let (exponent, rendered, value, factor) = match parity {
        WallisParity::Odd => (2 * n + 1, ratio.to_string(), value, None),
        WallisParity::Even => (
            2 * n,
            format!("{ratio} × π/2"),
            value * std::f64::consts::FRAC_PI_2,
            Some("π/2"),
        ),
    };
    let value = round_sig(value);
    let text = match format {
        OutputFormat::Table => format!(
            "∫₀^{{π/2}} sin^{exponent} x dx = {rendered}\n≈ {}\n",
            format_number(value)
        ),
        OutputFormat::Json => json_line(&json!({
            "n": n,
            "parity": if parity == WallisParity::Odd { "odd" } else { "even" },
            "exponent": exponent,
            "ratio": ratio.to_string(),
            "factor": factor,
            "exact": rendered,
            "value": value,
        })),
    };
    Output::ok(text)
}

#[derive(Serialize)]
struct IntegrateReport<'a> {
    name: &'a str,
    converged: bool,
    series_value: f64,
    series_tail: f64,
    odd_part: String,
    even_part: String,
    tail_estimate: f64,
    terms_used: usize,
    strategy: &'a str,
    oracle_value: Option<f64>,
    oracle_error: Option<f64>,
    evaluations: Option<usize>,
    abs_diff: Option<f64>,
    note: Option<String>,
    error: Option<String>,
}

fn integrate_report<'a>(
    name: &'a str,
    value: &'a PiLinearValue,
    converged: bool,
    oracle: Option<QuadratureResult>,
    note: Option<String>,
    error: Option<String>,
) -> IntegrateReport<'a> {
    let rendered = value.rendered();
    IntegrateReport {
        name,
        converged,
        series_value: round_sig(rendered),
        series_tail: round_sig(value.tail_bound),
        odd_part: value.odd_part.to_string(),
        even_part: value.even_part.to_string(),
        tail_estimate: round_sig(value.tail_estimate),
        terms_used: value.terms_used,
        strategy: &value.strategy_used,
        oracle_value: oracle.map(|o| round_sig(o.value)),
        oracle_error: oracle.map(|o| round_sig(o.error_estimate)),
        evaluations: oracle.map(|o| o.evaluations),
        abs_diff: oracle.map(|o| round_sig((rendered - o.value).abs())),
        note,
        error,
    }
}

fn integrate_table(r: &IntegrateReport<'_>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "name        {}", r.name);
    let _ = writeln!(
        out,
        "series      {} ± {}{}",
        format_number(r.series_value),
        format_number(r.series_tail),
        if r.converged { "" } else { "  (not converged)" }
    );
    let _ = writeln!(out, "terms used  {}", r.terms_used);
    let _ = writeln!(out, "strategy    {}", r.strategy);
    if let (Some(v), Some(e), Some(n)) = (r.oracle_value, r.oracle_error, r.evaluations) {
        let _ = writeln!(out, "oracle      {} ± {} ({n} evaluations)", format_number(v), format_number(e));
    }
    if let Some(d) = r.abs_diff {
        let _ = writeln!(out, "difference  {}", format_number(d));
    }
    if let Some(note) = &r.note {
        let _ = writeln!(out, "note        {note}");
    }
    if let Some(e) = &r.error {
        let _ = writeln!(out, "error       {e}");
    }
    out
}

fn cmd_integrate(name: &str, config: &CliConfig) -> Output {
    let spec = match catalog_lookup(name) {
        Ok(s) => s,
        Err(e) => return Output::usage(e),
    };
    let options = TransformOptions {
        max_terms: config.max_terms,
        strategy: None,
    };
    let quadrature = QuadratureOptions {
        level_cap: config.quadrature_level_cap,
    };
    let oracle = oracle_integral_with(name, Inner::Sin, config.tolerance / 10.0, &quadrature).ok();
    let note = APPLICATIONS
        .iter()
        .find(|c| c.series_name == name)
        .and_then(|c| c.known_constant)
        .map(|k| format!("equals {}", k.label));

    let (value, converged, error) = match integrate_with(spec, config.tolerance, &options) {
        Ok(v) => (v, true, None),
        Err(TransformError::NonConvergence { source, best }) => match best {
            Some(b) => (*b, false, Some(source.to_string())),
            None => {
                return Output {
                    code: EXIT_NON_CONVERGENCE,
                    stdout: String::new(),
                    stderr: format!("error: {source}\n"),
                }
            }
        },
        Err(e) => return Output::usage(e),
    };
    let report = integrate_report(name, &value, converged, oracle, note, error);
    let stdout = match config.output_format {
        OutputFormat::Table => integrate_table(&report),
        OutputFormat::Json => json_line(&report),
    };
    Output {
        code: if converged { EXIT_OK } else { EXIT_NON_CONVERGENCE },
        stdout,
        stderr: String::new(),
    }
}

fn cmd_numbers(kind: NumberKind, count: usize, format: OutputFormat) -> Output {
    let (label, values): (&str, Vec<String>) = match kind {
        NumberKind::Bernoulli => ("bernoulli", BernoulliTable::new(count).values().iter().map(|v| v.to_string()).collect()),
        NumberKind::Euler => ("euler", EulerTable::new(count).values().iter().map(|v| v.to_string()).collect()),
    };
    let text = match format {
        OutputFormat::Table => {
            let symbol = if kind == NumberKind::Bernoulli { "B_k" } else { "E_k" };
            let mut out = format!("{:>4}  {symbol}\n", "k");
            for (i, v) in values.iter().enumerate() {
                let _ = writeln!(out, "{:>4}  {v}", i + 1);
            }
            out
        }
        OutputFormat::Json => {
            let rows: Vec<_> = values
                .iter()
                .enumerate()
                .map(|(i, v)| json!({ "k": i + 1, "value": v }))
                .collect();
            json_line(&json!({ "kind": label, "values": rows }))
        }
    };
    Output::ok(text)
}

fn cmd_verify(config: &CliConfig) -> Output {
    let options = VerifyOptions {
        tol: config.tolerance,
        max_terms: config.max_terms,
        level_cap: config.quadrature_level_cap,
    };
    let report = match run_all(&options) {
        Ok(r) => r,
        Err(e) => return Output::usage(e),
    };
    let stdout = match config.output_format {
        OutputFormat::Table => report.render_table(),
        OutputFormat::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
    };
    Output {
        code: if report.all_passed() { EXIT_OK } else { EXIT_VERIFY_FAILED },
        stdout,
        stderr: String::new(),
    }
}
