//! Command-line front end: argument parsing, job specs and report rendering.

mod commands;
mod report;

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

pub use report::Report;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum VariantArg {
    Sl,
    Gl,
    Twisted,
}

impl From<VariantArg> for rankdual_core::Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Sl => rankdual_core::Variant::Sl,
            VariantArg::Gl => rankdual_core::Variant::Gl,
            VariantArg::Twisted => rankdual_core::Variant::Twisted,
        }
    }
}

/// Rectangle and weights shared by most subcommands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, clap::Args)]
pub struct Shape {
    /// Rank
    #[arg(long)]
    pub r: usize,
    /// Level
    #[arg(long)]
    pub l: usize,
    /// Genus
    #[arg(long)]
    pub g: u32,
    /// JSON array of diagrams, e.g. '["2,1","1,0"]'
    #[arg(long, default_value = "[]")]
    pub weights: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Subcommand)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Verlinde number of one variant
    Verlinde {
        #[command(flatten)]
        #[serde(flatten)]
        shape: Shape,
        #[arg(long, value_enum, default_value_t = VariantArg::Sl)]
        variant: VariantArg,
    },
    /// Vafa-Intriligator intersection number for the given weights
    Vi {
        #[command(flatten)]
        #[serde(flatten)]
        shape: Shape,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
    /// Intersection number of the conjugate weights against the l-side twisted Verlinde number
    ViCheck {
        #[command(flatten)]
        #[serde(flatten)]
        shape: Shape,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
    /// Schur reciprocity and rank-level suites at one root-of-unity order
    Symmetry {
        #[arg(long = "N")]
        #[serde(rename = "N")]
        order: usize,
        /// Check every case instead of a seeded sample
        #[arg(long)]
        exhaustive: bool,
        /// Cases per suite when not exhaustive
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Degree normalization with its replayable plan
    Normalize {
        #[command(flatten)]
        #[serde(flatten)]
        shape: Shape,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        dd: i64,
        #[arg(long, default_value_t = rankdual_core::duality::DEFAULT_THRESHOLD, allow_hyphen_values = true)]
        threshold: i64,
    },
    /// Normalize, then compare the twisted Verlinde numbers of both sides
    Verdict {
        #[command(flatten)]
        #[serde(flatten)]
        shape: Shape,
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long, allow_hyphen_values = true)]
        dd: i64,
        #[arg(long, default_value_t = rankdual_core::duality::DEFAULT_THRESHOLD, allow_hyphen_values = true)]
        threshold: i64,
    },
    /// Exact Schur polynomial value at roots of unity
    SchurEval {
        /// Diagram as comma-separated parts, e.g. "2,1"
        #[arg(long)]
        diagram: String,
        #[arg(long = "N")]
        #[serde(rename = "N")]
        order: usize,
        /// Comma-separated exponents in 0..N, one per row of the diagram
        #[arg(long)]
        subset: String,
    },
    /// Parabolic linear-algebra identities on standard and random flags
    ParlinCheck {
        #[arg(long, default_value_t = 3)]
        exhaustive_max: usize,
        #[arg(long, default_value_t = 100)]
        random_seeds: usize,
        #[arg(long, default_value_t = 5)]
        random_max: usize,
    },
}

/// Everything needed to reproduce one invocation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    #[serde(flatten)]
    pub command: Command,
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub oracle: bool,
    #[serde(default = "default_precision")]
    pub precision: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub timings: bool,
}

fn default_precision() -> usize {
    50
}

#[derive(Debug, Parser)]
#[command(name = "rankdual", version, about = "Exact rank-level duality numbers")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Recompute in floating point and report the discrepancy
    #[arg(long, global = true)]
    oracle: bool,
    /// Decimal digits for --oracle
    #[arg(long, global = true, default_value_t = 50)]
    precision: usize,
    /// Seed for every randomized suite
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Include elapsed_ms in reports (makes output time-dependent)
    #[arg(long, global = true)]
    timings: bool,
    /// Run a JobSpec given as JSON text, or as @path to a JSON file; the spec
    /// carries its own format, oracle, precision, seed and timings settings
    #[arg(long)]
    job: Option<String>,
    /// Print the JobSpec for this invocation instead of running it
    #[arg(long, global = true)]
    emit_job: bool,
}

/// Exit code and rendered streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(msg: impl std::fmt::Display) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

fn load_job(text: &str) -> Result<JobSpec, String> {
    let body = match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?,
        None => text.to_string(),
    };
    serde_json::from_str(&body).map_err(|e| format!("malformed job spec: {e}"))
}

/// Parses `argv` (including the program name) and runs the requested job.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let job = match (&cli.job, cli.command) {
        (Some(text), _) => match load_job(text) {
            Ok(job) => job,
            Err(e) => return Outcome::input_error(e),
        },
        (None, Some(command)) => JobSpec {
            command,
            format: cli.format,
            oracle: cli.oracle,
            precision: cli.precision,
            seed: cli.seed,
            timings: cli.timings,
        },
        (None, None) => return Outcome::input_error("no subcommand given (try --help)"),
    };
    if cli.emit_job {
        let text = serde_json::to_string_pretty(&job).expect("job specs serialize");
        return Outcome { code: 0, stdout: text + "\n", stderr: String::new() };
    }
    run_job(&job)
}

/// Runs a parsed job.
pub fn run_job(job: &JobSpec) -> Outcome {
    match commands::execute(job) {
        Ok(report) => {
            let code = if report.passed() { 0 } else { 1 };
            match report.render(job.format) {
                Ok(stdout) => Outcome { code, stdout, stderr: String::new() },
                Err(e) => Outcome::input_error(e),
            }
        }
        Err(commands::Failure::Input(msg)) => Outcome::input_error(msg),
        Err(commands::Failure::Identity(msg)) => {
            Outcome { code: 1, stdout: String::new(), stderr: format!("identity failed: {msg}\n") }
        }
    }
}
