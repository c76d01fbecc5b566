mod commands;
mod error;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use discord_lab::metrics::MetricKind;

pub use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "discord-lab", version, about = "Discord of response and related quantum-correlation measures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Discord of response of one state, as JSON.
    Discord(DiscordArgs),
    /// Bures discord of random two-qubit states, as CSV with a JSON sidecar.
    Scan(ScanArgs),
    /// Discord of response against geometric discord on a Bell-diagonal slice, as CSV.
    Figure1(Figure1Args),
    /// Upper boundary of the discord at fixed purity, as CSV.
    Boundary(BoundaryArgs),
    /// Worst-case reading error and its dependence on the unitary spectrum, as JSON.
    Reading(ReadingArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    #[value(name = "werner")]
    Werner,
    #[value(name = "bell_diagonal")]
    BellDiagonal,
    #[value(name = "mq_b", alias = "b")]
    MqB,
    #[value(name = "mq_c", alias = "c")]
    MqC,
    #[value(name = "mq_d", alias = "d")]
    MqD,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Werner => "werner",
            Family::BellDiagonal => "bell_diagonal",
            Family::MqB => "mq_b",
            Family::MqC => "mq_c",
            Family::MqD => "mq_d",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    Bures,
    Trace,
    Hellinger,
}

impl From<Metric> for MetricKind {
    fn from(m: Metric) -> Self {
        match m {
            Metric::Bures => MetricKind::Bures,
            Metric::Trace => MetricKind::Trace,
            Metric::Hellinger => MetricKind::Hellinger,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Optimize,
    Analytic,
}

/// A state given either as a named family or as a JSON file.
#[derive(Debug, Args)]
pub struct StateArgs {
    /// Named state family.
    #[arg(long, conflicts_with = "state", required_unless_present = "state")]
    pub family: Option<Family>,
    /// JSON file describing the state.
    #[arg(long)]
    pub state: Option<PathBuf>,
    /// Singlet weight of a Werner state.
    #[arg(long)]
    pub f: Option<f64>,
    /// Bell-diagonal spectrum, four comma-separated weights.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub gamma: Option<Vec<f64>>,
    /// Purity of a maximally correlated family state.
    #[arg(long)]
    pub purity: Option<f64>,
}

#[derive(Debug, Args)]
pub struct DiscordArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, value_enum, default_value_t = Metric::Bures)]
    pub metric: Metric,
    #[arg(long, value_enum, default_value_t = Method::Optimize)]
    pub method: Method,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long)]
    pub seed: u64,
    /// Worker threads; defaults to one per core.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
    /// CSV output; the sidecar is written next to it with `.meta.json` appended.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct Figure1Args {
    /// Grid points along each axis.
    #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u64).range(2..))]
    pub resolution: u64,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundaryArgs {
    /// Number of purity values in [1/4, 1].
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(2..))]
    pub resolution: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReadingArgs {
    #[command(flatten)]
    pub state: StateArgs,
    /// Number of spectra in the sweep, `omega = k pi / (2 R)` for `k = 1..=R`.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub resolution: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Discord(a) => commands::discord(&a),
        Command::Scan(a) => commands::scan(&a),
        Command::Figure1(a) => commands::figure1(&a),
        Command::Boundary(a) => commands::boundary(&a),
        Command::Reading(a) => commands::reading(&a),
    }
}
