//! `wolfpack` command-line tool.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "wolfpack", version, about = "Grey wolf optimizers, benchmark studies and a wave energy converter model")]
pub struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Override any configuration key, e.g. `--set optimizer.hc.g=50` (repeatable).
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Base seed [default: config optimizer.seed, then $WOLFPACK_SEED, then 0].
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Root output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Run directory name under out/<command>/ [default: UTC timestamp].
    #[arg(long, global = true)]
    pub tag: Option<String>,
    /// Worker threads for parallel cells [default: all cores].
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Repeated benchmark runs of the compared algorithms, with Friedman ranks.
    Bench(BenchArgs),
    /// Seeded optimizations of mean PTO power over (H, T, K, C).
    Optimize(OptimizeArgs),
    /// One time-domain simulation, written as a series plus summary.
    Simulate(SimulateArgs),
    /// Power matrix or two-parameter sensitivity grid.
    Sweep(SweepArgs),
    /// Rank candidate sites by RMSE against a target sea state.
    Site(SiteArgs),
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true)]
pub struct BenchArgs {
    #[command(subcommand)]
    pub action: Option<BenchAction>,
    /// Comma-separated algorithms [default: gwo,mgwo,eegwo,igwo,ergwo,hc-egwo].
    #[arg(long, value_delimiter = ',')]
    pub algos: Vec<String>,
    /// Comma-separated functions [default: F1..F16].
    #[arg(long, value_delimiter = ',')]
    pub funcs: Vec<String>,
    /// Runs per (algorithm, function) [default: 30].
    #[arg(long)]
    pub repeats: Option<usize>,
    /// Iterations per run [default: 500].
    #[arg(long)]
    pub iters: Option<usize>,
    /// Population size [default: 30].
    #[arg(long)]
    pub agents: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum BenchAction {
    /// Print the benchmark table as CSV on stdout.
    List,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    /// Algorithm [default: hc-egwo].
    #[arg(long)]
    pub algo: Option<String>,
    /// Independent runs with seeds seed, seed+1, ... [default: 10].
    #[arg(long)]
    pub runs: Option<usize>,
    /// Iterations per run [default: 1000].
    #[arg(long)]
    pub iters: Option<usize>,
    /// Population size [default: 20].
    #[arg(long)]
    pub agents: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Wave height H (or Hs with --irregular), m.
    #[arg(long, default_value_t = 4.223)]
    pub height: f64,
    /// Wave period T (or Tp with --irregular), s.
    #[arg(long, default_value_t = 7.39)]
    pub period: f64,
    /// PTO stiffness K, MNm/rad.
    #[arg(long = "pto-k", default_value_t = 54.46)]
    pub k: f64,
    /// PTO damping C, MNsm/rad.
    #[arg(long = "pto-c", default_value_t = 75.58)]
    pub c: f64,
    /// Pierson-Moskowitz sea instead of a regular wave.
    #[arg(long)]
    pub irregular: bool,
    /// Spectral components for --irregular.
    #[arg(long, default_value_t = 200)]
    pub components: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Two swept parameters from H, T, K, C [default: config sweep.vary, H,T].
    #[arg(long, value_delimiter = ',')]
    pub vary: Vec<String>,
    /// Values for the other parameters, e.g. `H=4.223,T=7.39` [default: config sweep.fixed].
    #[arg(long, value_delimiter = ',')]
    pub fix: Vec<String>,
    /// Axis as `P=lo:hi:n`, e.g. `K=0:100:21` (repeatable) [default: config sweep.grid].
    #[arg(long)]
    pub grid: Vec<String>,
    /// Report power for over-rotating cells too.
    #[arg(long)]
    pub no_mask: bool,
}

#[derive(Debug, Args)]
pub struct SiteArgs {
    /// Target wave height H*, m [default: 4.223].
    #[arg(long)]
    pub hstar: Option<f64>,
    /// Target wave period T*, s [default: 7.39].
    #[arg(long)]
    pub tstar: Option<f64>,
    /// Sites CSV, or `synthetic` for the bundled 105-point climate [default: synthetic].
    #[arg(long)]
    pub data: Option<String>,
    /// Divide deviations by the target values.
    #[arg(long)]
    pub relative: bool,
}

#[derive(Debug)]
pub enum CliError {
    /// Invalid input or configuration; exit code 2.
    Config(String),
    /// Failure while running; exit code 1.
    Runtime(String),
}

impl CliError {
    pub fn from_core(e: wolfpack::Error) -> Self {
        match e {
            wolfpack::Error::Config(_)
            | wolfpack::Error::Dimension { .. }
            | wolfpack::Error::UnknownAlgorithm(_)
            | wolfpack::Error::UnknownBenchmark(_)
            | wolfpack::Error::FrequencyOutOfRange { .. }
            | wolfpack::Error::Data { .. }
            | wolfpack::Error::Rows(_) => CliError::Config(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }

    pub fn io(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
