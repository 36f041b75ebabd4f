mod gen;
mod input;
mod single;
mod survey;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lefschetz_core::inverse_system::TrialConfig;
use lefschetz_core::poly::DEFAULT_COEFF_BOUND;

use crate::input::FormSource;
use crate::verify::{IntRange, Theorem};

#[derive(Parser)]
#[command(name = "lefschetz", version, about = "Hilbert functions and Lefschetz properties of artinian Gorenstein algebras")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "LEFSCHETZ_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Linear forms sampled per check.
    #[arg(long, global = true, default_value_t = 5, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub trials: usize,
    /// Coefficients are drawn from [-bound, bound].
    #[arg(long, global = true, default_value_t = DEFAULT_COEFF_BOUND, value_parser = clap::value_parser!(i64).range(1..))]
    pub coeff_bound: i64,
    /// Output format; the default depends on the command.
    #[arg(long, global = true, value_enum)]
    pub output: Option<Format>,
}

impl RunConfig {
    pub fn trial_config(&self) -> TrialConfig {
        TrialConfig { trials: self.trials, coeff_bound: self.coeff_bound, seed: self.seed }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    Min,
    Max,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert function of the algebra with the given dual generator.
    Hvector(FormSource),
    /// Weak Lefschetz property.
    Wlp(FormSource),
    /// Strong Lefschetz property via higher Hessians.
    Slp(FormSource),
    /// Print a Perazzo form over u, v with its predicted h-vector.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Sample random Perazzo forms over u, v and check them, one JSON line each.
    Survey {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Check a theorem over a parameter grid.
    Verify {
        #[arg(long, value_enum)]
        theorem: Theorem,
        /// Range of n, as `a..b` (inclusive) or a single value.
        #[arg(long, default_value = "2..4")]
        n: IntRange,
        /// Largest degree for the lower, upper and unimodal grids.
        #[arg(long, default_value_t = 8)]
        d_max: usize,
        /// Degree range for the wlp grid.
        #[arg(long, default_value = "4..8")]
        d: IntRange,
        /// Random forms per grid point, or pairs for watanabe.
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] lefschetz_core::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Input(String),
}

fn run(cli: Cli) -> Result<Status, CliError> {
    let config = cli.config;
    match cli.command {
        Command::Hvector(src) => single::hvector(&src, &config),
        Command::Wlp(src) => single::lefschetz(&src, &config, single::Which::Wlp),
        Command::Slp(src) => single::lefschetz(&src, &config, single::Which::Slp),
        Command::Gen { kind, n, d } => gen::run(kind, n, d, &config),
        Command::Survey { n, d, count } => survey::run(n, d, count, &config),
        Command::Verify { theorem, n, d_max, d, samples } => verify::run(theorem, n, d_max, d, samples, &config),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Status::Holds) => ExitCode::SUCCESS,
        Ok(Status::Fails) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
