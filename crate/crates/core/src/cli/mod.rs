//! Command-line front end shared by the `oscmean` binary and the tests.
//!
//! Exit statuses: `0` every check passed, `1` an identity or verification check
//! failed, `2` usage or domain error.

mod output;

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand};
use rug::Float;

use crate::error::{Error, Result};
use crate::identities::{conjecture_scan, exact_suite, numeric_suite, IdentityReport};
use crate::means::{neuman_ln, MeanRequest};
use crate::precision::Precision;
use crate::wronskian::make_log_curve;

pub use output::{MeanSummary, OutputFormat, Row};

/// Environment variable supplying the default precision; `--precision` wins over it.
pub const PRECISION_ENV: &str = "OSCMEAN_PRECISION";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "oscmean",
    version,
    about = "Means from osculating hyperplanes of t*(log t)^k curves, and checks of the identities behind them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Significand bits (at least 53). Defaults to $OSCMEAN_PRECISION, then 53.
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV.
    #[arg(long, global = true)]
    csv: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Intersection point, M_1, L_N and optionally M_k for one input tuple.
    Mean {
        /// Comma-separated positive, distinct values.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        values: Vec<String>,
        /// Also compute M_k.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Every exact identity and every seeded numeric check.
    Verify {
        #[arg(long, default_value_t = 7, allow_hyphen_values = true)]
        max_n: i64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Exact identities only.
    Identities {
        #[arg(long, default_value_t = 7, allow_hyphen_values = true)]
        max_n: i64,
        /// Keep only rows for this n (plus rows without an n).
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
    /// M_n on <t, ..., t^(n-1), log t> against I_Z.
    Conjecture {
        #[arg(long, allow_hyphen_values = true, required = true)]
        n: i64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubcommandKind {
    Mean,
    Verify,
    Identities,
    Conjecture,
}

/// Fully resolved invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub subcommand: SubcommandKind,
    pub values: Option<Vec<Float>>,
    pub n_range: Option<RangeInclusive<usize>>,
    pub k: Option<usize>,
    pub precision: Precision,
    pub seed: u64,
    pub trials: usize,
    pub output_format: OutputFormat,
}

/// Outcome of a command: the exit status and what to print.
struct Outcome {
    status: i32,
    stdout: String,
    stderr: String,
}

fn usage(message: impl Into<String>) -> Error {
    Error::BadParameter(message.into())
}

fn resolve_precision(flag: Option<u32>, env: Option<&str>) -> Result<Precision> {
    match (flag, env) {
        (Some(bits), _) => Precision::new(bits),
        (None, Some(text)) => text
            .trim()
            .parse()
            .map_err(|_| usage(format!("invalid {PRECISION_ENV} value '{text}'"))),
        (None, None) => Ok(Precision::default()),
    }
}

fn parse_values(raw: &[String], precision: Precision) -> Result<Vec<Float>> {
    raw.iter()
        .map(|text| {
            let trimmed = text.trim();
            Float::parse(trimmed)
                .map(|parsed| Float::with_val(precision.bits(), parsed))
                .map_err(|_| Error::Parse(format!("invalid value '{trimmed}'")))
        })
        .collect()
}

fn dimension(n: i64) -> Result<usize> {
    if n < 2 {
        return Err(usage("n must be ≥ 2"));
    }
    usize::try_from(n).map_err(|_| usage(format!("n = {n} is too large")))
}

fn format_of(common: &Common) -> OutputFormat {
    if common.json {
        OutputFormat::Json
    } else if common.csv {
        OutputFormat::Csv
    } else {
        OutputFormat::Human
    }
}

impl RunConfig {
    fn from_cli(cli: Cli, env_precision: Option<&str>) -> Result<Self> {
        let common = match &cli.command {
            Command::Mean { common, .. }
            | Command::Verify { common, .. }
            | Command::Identities { common, .. }
            | Command::Conjecture { common, .. } => common.clone(),
        };
        let precision = resolve_precision(common.precision, env_precision)?;
        let mut config = RunConfig {
            subcommand: SubcommandKind::Mean,
            values: None,
            n_range: None,
            k: None,
            precision,
            seed: 0,
            trials: 100,
            output_format: format_of(&common),
        };
        match cli.command {
            Command::Mean { values, k, .. } => {
                config.values = Some(parse_values(&values, precision)?);
                config.k = k;
            }
            Command::Verify {
                max_n, trials, seed, ..
            } => {
                config.subcommand = SubcommandKind::Verify;
                config.n_range = Some(2..=dimension(max_n)?);
                config.trials = trials;
                config.seed = seed;
            }
            Command::Identities { max_n, n, .. } => {
                config.subcommand = SubcommandKind::Identities;
                let max_n = dimension(max_n)?;
                config.n_range = Some(match n {
                    Some(n) => {
                        let n = dimension(n)?;
                        if n > max_n {
                            return Err(usage(format!("--n {n} exceeds --max-n {max_n}")));
                        }
                        n..=n
                    }
                    None => 2..=max_n,
                });
            }
            Command::Conjecture {
                n, trials, seed, ..
            } => {
                config.subcommand = SubcommandKind::Conjecture;
                if n < 3 {
                    return Err(usage("the conjecture curve needs n ≥ 3"));
                }
                let n = dimension(n)?;
                config.n_range = Some(n..=n);
                config.trials = trials;
                config.seed = seed;
            }
        }
        if config.trials == 0 {
            return Err(usage("trials must be ≥ 1"));
        }
        Ok(config)
    }
}

/// Parse `args` (including the program name), run, and write to `stdout`/`stderr`.
/// Returns the exit status.
pub fn run<I, T>(args: I, env_precision: Option<&str>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let outcome = match Cli::try_parse_from(args) {
        Ok(cli) => match RunConfig::from_cli(cli, env_precision) {
            Ok(config) => execute(&config),
            Err(e) => error_outcome(&e),
        },
        Err(e) => {
            use clap::error::ErrorKind;
            let status = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            if status == EXIT_OK {
                Outcome {
                    status,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    status,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    };
    // A closed pipe is not worth a panic; the status still reports the outcome.
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    let _ = stderr.write_all(outcome.stderr.as_bytes());
    let _ = stdout.flush();
    outcome.status
}

fn error_outcome(e: &Error) -> Outcome {
    Outcome {
        status: EXIT_USAGE,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

/// Run a resolved configuration.
fn execute(config: &RunConfig) -> Outcome {
    let result = match config.subcommand {
        SubcommandKind::Mean => cmd_mean(config),
        SubcommandKind::Verify => cmd_verify(config),
        SubcommandKind::Identities => cmd_identities(config),
        SubcommandKind::Conjecture => cmd_conjecture(config),
    };
    result.unwrap_or_else(|e| error_outcome(&e))
}

fn cmd_mean(config: &RunConfig) -> Result<Outcome> {
    let values = config.values.clone().unwrap_or_default();
    let curve = make_log_curve(values.len())
        .map_err(|_| Error::BadDimension(format!("need at least 2 values, got {}", values.len())))?;
    let request = MeanRequest::new(values.clone(), config.precision);
    let result = match config.k {
        Some(k) => request.mean(&curve, k)?,
        None => request.intersect(&curve)?,
    };
    let ln = neuman_ln(&values, result.precision)?;
    let summary = MeanSummary::new(&result, &ln, config.k);
    Ok(Outcome {
        status: EXIT_OK,
        stdout: summary.render(config.output_format)?,
        stderr: String::new(),
    })
}

fn rows_outcome(mut reports: Vec<IdentityReport>, format: OutputFormat) -> Result<Outcome> {
    reports.sort_by(|a, b| (a.identity.as_str(), a.n).cmp(&(b.identity.as_str(), b.n)));
    let stdout = output::render_rows(&reports, format)?;
    let failing = reports.iter().find(|r| !r.passed());
    Ok(match failing {
        None => Outcome {
            status: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Some(first) => Outcome {
            status: EXIT_CHECK_FAILED,
            stdout,
            stderr: format!("FAILED {}\n", first.reproducer()),
        },
    })
}

fn max_n(config: &RunConfig) -> usize {
    config.n_range.as_ref().map_or(7, |r| *r.end())
}

fn cmd_verify(config: &RunConfig) -> Result<Outcome> {
    let n = max_n(config);
    let mut rows = exact_suite(n)?;
    rows.extend(numeric_suite(n, config.trials, config.seed, config.precision)?);
    rows_outcome(rows, config.output_format)
}

fn cmd_identities(config: &RunConfig) -> Result<Outcome> {
    let range = config.n_range.clone().unwrap_or(2..=7);
    let mut rows = exact_suite(*range.end())?;
    rows.retain(|r| r.n.is_none_or(|n| range.contains(&n)));
    rows_outcome(rows, config.output_format)
}

fn cmd_conjecture(config: &RunConfig) -> Result<Outcome> {
    let n = max_n(config);
    let report = conjecture_scan(n, config.trials, config.seed, config.precision)?;
    rows_outcome(vec![report], config.output_format)
}
