use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use super::report::{run, RunOptions, SeedChoice, DEFAULT_SEED};
use super::suite::{format_suite, run_suite};
use super::{CliError, EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_OK};
use crate::topology::{parse_singularity_file, parse_strata_file};

#[derive(Debug, Parser)]
#[command(name = "peddeg", version, about = "Projective Euclidean distance degree of a hypersurface")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the degree of one variety and cross-check the pipelines.
    Run(RunArgs),
    /// Run every built-in example against its known value.
    Suite(SuiteArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Homogeneous polynomial, e.g. "x0^2*x2 - x1^2*(x1+x2)".
    #[arg(long)]
    pub poly: Option<String>,
    /// Comma-separated variable names.
    #[arg(long, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    /// Built-in example name.
    #[arg(long)]
    pub example: Option<String>,
    /// Unsigned integer, or "random".
    #[arg(long, default_value_t = DEFAULT_SEED.to_string())]
    pub seed: String,
    /// Comma-separated data point, entries like 1/2 or 3-2*i.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub beta: Option<Vec<String>>,
    /// Sample the data point with nonzero imaginary parts.
    #[arg(long)]
    pub complex_beta: bool,
    #[arg(long)]
    pub skip_cover: bool,
    /// File with lines `x0:x1:x2 m r delta`.
    #[arg(long)]
    pub singularities: Option<PathBuf>,
    /// File with lines `label chi eu`.
    #[arg(long)]
    pub strata: Option<PathBuf>,
    /// Smoothness and incidence tolerance (default 1e-8).
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Compact single-line output.
    #[arg(long)]
    pub json: bool,
    /// Include per-path diagnostics.
    #[arg(long)]
    pub paths_report: bool,
    /// Include wall-clock timings (makes output nondeterministic).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = DEFAULT_SEED.to_string())]
    pub seed: String,
    /// Print the table as JSON.
    #[arg(long)]
    pub json: bool,
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn seed(text: &str) -> Result<SeedChoice, CliError> {
    text.parse().map_err(|e| CliError::Input(format!("--seed: {e}")))
}

impl RunArgs {
    pub fn to_options(&self) -> Result<RunOptions, CliError> {
        let singularities = match &self.singularities {
            Some(p) => parse_singularity_file(&read(p)?)?,
            None => Vec::new(),
        };
        let strata = match &self.strata {
            Some(p) => Some(parse_strata_file(&read(p)?)?),
            None => None,
        };
        Ok(RunOptions {
            polynomial: self.poly.clone(),
            variables: self
                .vars
                .as_ref()
                .map(|v| v.iter().map(|s| s.trim().to_string()).collect()),
            example: self.example.clone(),
            seed: seed(&self.seed)?,
            beta: self.beta.clone(),
            complex_beta: self.complex_beta,
            skip_cover: self.skip_cover,
            singularities,
            strata,
            tolerance: self.tolerance,
            paths_report: self.paths_report,
            timings: self.timings,
            tracker: None,
        })
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Run(args) => {
            let report = run(&args.to_options()?)?;
            writeln!(out, "{}", report.to_json(args.json)).ok();
            Ok(if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Suite(args) => {
            let s = seed(&args.seed)?.resolve();
            let report = run_suite(s);
            if args.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializes")).ok();
            } else {
                write!(out, "{}", format_suite(&report)).ok();
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn execute<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    write!(out, "{shown}").ok();
                    EXIT_OK
                }
                _ => {
                    write!(err, "{shown}").ok();
                    EXIT_INPUT
                }
            };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            writeln!(err, "error: {e}").ok();
            e.exit_code()
        }
    }
}
