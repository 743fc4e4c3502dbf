//! `miconf`: confidence intervals, sample sizes and simulations for discrete
//! mutual information.
//!
//! Exit codes: 0 success, 2 input error, 3 domain error.

mod commands;
mod payload;
mod report;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use miconf::Unit;

#[derive(Debug)]
pub enum CliError {
    /// Malformed or unreadable input; exit code 2.
    Input(String),
    /// Parameter outside its valid range; exit code 3.
    Domain(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "input error: {msg}"),
            CliError::Domain(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

impl From<miconf::Error> for CliError {
    fn from(e: miconf::Error) -> Self {
        if e.is_domain() {
            CliError::Domain(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "miconf", version, about = "Distribution-free confidence intervals for mutual information")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Confidence interval for MI from samples or a count table.
    Interval(IntervalArgs),
    /// Sample size needed for a target half-width.
    Samplesize(SampleSizeArgs),
    /// Monte Carlo sampling distribution of the plug-in MI.
    Simulate(SimulateArgs),
    /// Tabulate the MI-difference bound over a grid of radii.
    Bound(BoundArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum UnitArg {
    Bits,
    Nats,
}

impl From<UnitArg> for Unit {
    fn from(u: UnitArg) -> Self {
        match u {
            UnitArg::Bits => Unit::Bits,
            UnitArg::Nats => Unit::Nats,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Thm2,
    Thm4,
    Both,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("payload").required(true).args(["samples", "counts", "joint"])))]
pub struct IntervalArgs {
    /// CSV of paired 1-based labels (requires --mx and --my).
    #[arg(long, requires_all = ["mx", "my"])]
    pub samples: Option<PathBuf>,
    /// JSON count table {mx, my, counts}.
    #[arg(long)]
    pub counts: Option<PathBuf>,
    /// JSON joint distribution {mx, my, probs}; rejected, since it carries no sample size.
    #[arg(long)]
    pub joint: Option<PathBuf>,
    #[arg(long)]
    pub mx: Option<usize>,
    #[arg(long)]
    pub my: Option<usize>,
    #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value_t = UnitArg::Bits)]
    pub unit: UnitArg,
    /// Clip endpoints to [0, log mx].
    #[arg(long)]
    pub clamp: bool,
    /// Significant digits in the report.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..=17))]
    pub precision: u32,
}

#[derive(Debug, Args)]
pub struct SampleSizeArgs {
    /// Target half-width, in --unit.
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long)]
    pub mx: usize,
    #[arg(long)]
    pub my: usize,
    #[arg(long, value_enum, default_value_t = UnitArg::Bits)]
    pub unit: UnitArg,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..=17))]
    pub precision: u32,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ChannelArg {
    Bsc,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum, default_value_t = ChannelArg::Bsc)]
    pub channel: ChannelArg,
    /// Crossover probability of the BSC.
    #[arg(long, required_unless_present = "joint")]
    pub ber: Option<f64>,
    /// Probability of input symbol 1.
    #[arg(long, required_unless_present = "joint")]
    pub px: Option<f64>,
    /// Sample from a JSON joint distribution instead of a channel model.
    #[arg(long, conflicts_with_all = ["ber", "px"])]
    pub joint: Option<PathBuf>,
    /// Samples per replicate.
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub reps: u64,
    /// Quantile levels are alpha/2 and 1 - alpha/2.
    #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the sorted sampling CDF as two space-separated columns.
    #[arg(long)]
    pub emit_cdf: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = UnitArg::Bits)]
    pub unit: UnitArg,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..=17))]
    pub precision: u32,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// start:stop:count, within [0, 2].
    #[arg(long)]
    pub epsilon_grid: String,
    #[arg(long)]
    pub mx: usize,
    #[arg(long)]
    pub my: usize,
    /// Add the older three-term bound as a third column.
    #[arg(long)]
    pub compare_zhang: bool,
    #[arg(long, value_enum, default_value_t = UnitArg::Nats)]
    pub unit: UnitArg,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..=17))]
    pub precision: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Interval(args) => commands::interval(&args),
        Command::Samplesize(args) => commands::samplesize(&args),
        Command::Simulate(args) => commands::simulate(&args),
        Command::Bound(args) => commands::bound(&args),
    };
    match result {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("miconf: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
