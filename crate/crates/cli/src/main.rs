//! `collapse-bounds`: exclusion-plot scans, bound curves, and Monte Carlo
//! verification for mass-density-power spontaneous-collapse models.

mod commands;
mod config;

use clap::{Parser, Subcommand, ValueEnum};
use collapse_core::bounds::BoundKind;
use config::RunConfig;
use std::path::PathBuf;
use std::process::ExitCode;

/// Errors with their process exit categories:
/// 2 = config/usage, 3 = domain/precondition, 4 = numeric, 5 = I/O.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Domain(String),
    Numeric(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Numeric(_) => 4,
            CliError::Io(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Domain(m) | CliError::Numeric(m) | CliError::Io(m) => m,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "collapse-bounds",
    version,
    about = "Exclusion plots and verification for mass-density-power collapse models",
    after_help = "Set COLLAPSE_BOUNDS_THREADS to cap worker-thread parallelism."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum CurveKind {
    Lower,
    Radiation,
    Ligo,
    Lisa,
}

impl From<CurveKind> for BoundKind {
    fn from(k: CurveKind) -> Self {
        match k {
            CurveKind::Lower => BoundKind::LowerTheoretical,
            CurveKind::Radiation => BoundKind::UpperRadiation,
            CurveKind::Ligo => BoundKind::UpperLigo,
            CurveKind::Lisa => BoundKind::UpperLisa,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Assemble exclusion tables (one CSV per alpha) in an output directory.
    Exclusion {
        /// Flat key-value config file; all keys optional.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory for the CSV files.
        #[arg(long)]
        out: PathBuf,
    },
    /// Export a single bound curve as CSV (stdout unless --out is given).
    Curve {
        #[arg(long, value_enum)]
        kind: CurveKind,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1e-9)]
        rc_min: f64,
        #[arg(long, default_value_t = 1e-2)]
        rc_max: f64,
        #[arg(long, default_value_t = 240)]
        points: usize,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the Monte Carlo verification suite (pass/fail at 3 sigma).
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Override the ensemble size.
        #[arg(long)]
        trajectories: Option<usize>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Directory for the CSV report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_config(path: &Option<PathBuf>) -> Result<RunConfig, CliError> {
    match path {
        Some(p) => RunConfig::load(p).map_err(CliError::Parse),
        None => Ok(RunConfig::default()),
    }
}

fn init_thread_pool() {
    if let Ok(threads) = std::env::var("COLLAPSE_BOUNDS_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => eprintln!("warning: ignoring invalid COLLAPSE_BOUNDS_THREADS={threads}"),
        }
    }
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    init_thread_pool();
    match cli.command {
        Command::Exclusion { config, out } => {
            let cfg = load_config(&config)?;
            commands::cmd_exclusion(&cfg, &out)
        }
        Command::Curve {
            kind,
            alpha,
            rc_min,
            rc_max,
            points,
            config,
            out,
        } => {
            let cfg = load_config(&config)?;
            commands::cmd_curve(
                &cfg,
                kind.into(),
                alpha,
                rc_min,
                rc_max,
                points,
                out.as_deref(),
            )
        }
        Command::Verify {
            seed,
            trajectories,
            config,
            out,
        } => {
            let cfg = load_config(&config)?;
            commands::cmd_verify(&cfg, seed, trajectories, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}
