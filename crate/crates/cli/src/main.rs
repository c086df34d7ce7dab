//! `sepsym`: compute and verify separating-set thresholds for symmetric
//! polynomials over finite fields.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.

mod commands;
mod golden;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "sepsym",
    version,
    about = "Separating sets of symmetric polynomials over finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, env = "SEPSYM_JOBS", global = true)]
    pub jobs: Option<usize>,
    /// Maximum number of orbits a brute-force check may enumerate.
    #[arg(long, default_value_t = sepsym::orbits::DEFAULT_ORBIT_BOUND, global = true)]
    pub orbit_bound: u64,
    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// `S_q(n)`, indexed by `[n]_q`.
    Sq,
    /// `S(n) = {s_1, ..., s_n}`.
    Full,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbit count, gamma_q(n), #S(n), #S_q(n) and their difference.
    Gamma {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        /// Require #S_q(n); fails when q is not a prime power.
        #[arg(long)]
        with_sq: bool,
    },
    /// chi_q and the bracket around x_0(q) for a single q.
    Chi {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = sepsym::chi::DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// chi_q for every q in a range.
    ChiTable {
        #[arg(long)]
        q_min: u64,
        #[arg(long)]
        q_max: u64,
        #[arg(long, default_value_t = sepsym::chi::DEFAULT_TOLERANCE)]
        tol: f64,
        /// Compare against the shipped reference table; exit 1 on mismatch.
        #[arg(long)]
        verify_golden: bool,
    },
    /// Exact and predicted F_3 defect for every n in a range.
    Delta3 {
        #[arg(long)]
        n_min: u64,
        #[arg(long)]
        n_max: u64,
        /// Exit 1 if exact and predicted values ever disagree.
        #[arg(long)]
        verify: bool,
    },
    /// Interval classification of n (n >= 9) for the F_3 defect.
    Classify3 {
        #[arg(long, conflicts_with_all = ["n_min", "n_max"], required_unless_present_all = ["n_min", "n_max"])]
        n: Option<u64>,
        #[arg(long, requires = "n_max")]
        n_min: Option<u64>,
        #[arg(long, requires = "n_min")]
        n_max: Option<u64>,
    },
    /// Brute-force check whether {s_t : t in T} separates the orbits.
    CheckSep {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        /// Comma-separated indices.
        #[arg(
            long = "T",
            value_delimiter = ',',
            required_unless_present = "preset",
            conflicts_with = "preset"
        )]
        t: Vec<usize>,
        #[arg(long, value_enum)]
        preset: Option<Preset>,
    },
    /// Smallest separating subset of S(n), plus redundancy in S_q(n).
    Minsep {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
    },
    /// List orbit representatives with their elementary symmetric values.
    Orbits {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
    },
}

/// How a command ended when it did not hit an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    VerificationFailed,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl From<sepsym::Error> for CliError {
    fn from(e: sepsym::Error) -> Self {
        match e {
            sepsym::Error::Parameter(_) | sepsym::Error::Scale { .. } => {
                CliError::Usage(e.to_string())
            }
            sepsym::Error::Internal(_) => CliError::Failure(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Failure(format!("i/o error: {e}"))
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Failure(format!("{e:#}"))
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let jobs = cli
        .common
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    // Fails only if a global pool already exists, which cannot happen here.
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global();

    let sink: Box<dyn Write> = match &cli.common.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            CliError::Usage(format!("cannot create {}: {e}", path.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let ctx = commands::Context {
        format: cli.common.format,
        jobs,
        orbit_bound: cli.common.orbit_bound,
    };
    commands::dispatch(cli.command, &ctx, sink)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
