//! Command-line front end. The `svdna` binary only forwards to [`run`].
//!
//! Exit codes: 0 success, 1 `batch --verify` found differences, 2 usage or
//! input-validation error, 3 I/O error, 4 numeric failure.
//! Diagnostics go to stderr (verbosity from `SVDNA_LOG`: error, warn, info,
//! debug); data lines go to stdout.

mod batch;
mod commands;
mod format;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::transfer::ResizePolicy;

pub use batch::{batch, BatchOptions, BatchSummary, ManifestRecord, MANIFEST_HEADER, MANIFEST_NAME};
pub use commands::{read_noise_csv, NoiseRow, NOISE_HEADER};
pub use format::sig_digits;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "svdna", version, about = "SVD-based noise transfer for grayscale images")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Restyle one source image with the noise of one target image.
    Restyle(RestyleArgs),
    /// Apply the sampling policy to every source image of a registry.
    Batch(BatchArgs),
    /// Append noise statistics of images to a CSV report.
    NoiseReport(NoiseReportArgs),
    /// Alignment distance between two noise reports.
    Align(AlignArgs),
    /// Dice scores of predicted against ground-truth label masks.
    Dice(DiceArgs),
    /// Time the transfer on seeded random images.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct RestyleArgs {
    #[arg(long, short)]
    pub source: PathBuf,
    #[arg(long, short)]
    pub target: PathBuf,
    /// Number of leading source singular triplets kept.
    #[arg(short, long)]
    pub k: usize,
    #[arg(long, default_value = "resize-target")]
    pub resize_policy: ResizePolicy,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BatchArgs {
    /// Registry config (TOML).
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub out_dir: PathBuf,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub workers: u32,
    /// Overrides the config's seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Recompute and compare against existing outputs instead of writing.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct NoiseReportArgs {
    /// Image files or directories (searched recursively for .png/.tif).
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long, default_value = "")]
    pub domain: String,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct AlignArgs {
    pub csv_a: PathBuf,
    pub csv_b: PathBuf,
}

#[derive(Debug, Args)]
pub struct DiceArgs {
    #[arg(long, num_args = 1.., required = true)]
    pub pred: Vec<PathBuf>,
    #[arg(long, num_args = 1.., required = true)]
    pub gt: Vec<PathBuf>,
    /// Comma-separated class ids.
    #[arg(long, value_delimiter = ',', required = true)]
    pub classes: Vec<u32>,
    /// Labels must lie in `0..num_classes`.
    #[arg(long, default_value_t = 256)]
    pub num_classes: u32,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 256)]
    pub size: usize,
    #[arg(long, default_value_t = 10)]
    pub iterations: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

/// A failed command: exit code plus message.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Self {
            code: exit_code(&err),
            message: err.to_string(),
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    if err.is_io() {
        EXIT_IO
    } else if err.is_numeric() {
        EXIT_NUMERIC
    } else {
        EXIT_USAGE
    }
}

fn init_logging() {
    let env = env_logger::Env::new().filter_or("SVDNA_LOG", "warn");
    let _ = env_logger::Builder::from_env(env)
        .format_timestamp(None)
        .try_init();
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    init_logging();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Restyle(a) => commands::restyle(&a),
        Command::Batch(a) => commands::batch(&a),
        Command::NoiseReport(a) => commands::noise_report(&a),
        Command::Align(a) => commands::align(&a),
        Command::Dice(a) => commands::dice(&a),
        Command::Bench(a) => commands::bench(&a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
