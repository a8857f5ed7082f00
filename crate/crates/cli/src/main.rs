//! `edgelighter` command-line tool.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Failures grouped by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config values or parameters (exit code 2).
    Config(String),
    /// Unreadable or malformed inputs, failed writes (exit code 3).
    Data(String),
}

impl From<edgelighter::Error> for CliError {
    fn from(e: edgelighter::Error) -> Self {
        use edgelighter::Error as E;
        match e {
            E::InvalidProbability { .. }
            | E::InvalidArgument(_)
            | E::InstanceTooLarge { .. }
            | E::DegenerateChain(_)
            | E::InvalidPermutation(_) => CliError::Config(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

#[derive(Parser, Debug)]
#[command(name = "edgelighter", version, about = "Edgelighter walks, graph matching and anonymization experiments")]
pub struct Cli {
    /// Master seed for every random draw [default: 2024, or the config's seed].
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Directory for output files.
    #[arg(long, global = true, default_value = "out")]
    pub out_dir: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample a random graph and write it as an edge list.
    Sample(SampleArgs),
    /// Run an edgelighter walk and record edge counts and cover rate.
    Walk(WalkArgs),
    /// Exact analysis of tiny chains and Monte Carlo cover times.
    #[command(subcommand)]
    Chain(ChainCommand),
    /// Match two graphs given as edge lists.
    Match(MatchArgs),
    /// Run an anonymization experiment.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
    /// Clean a SNAP edge list: relabel, restrict, keep the largest component.
    Ingest(IngestArgs),
    /// Render a trace CSV as an SVG plot.
    Plot(PlotArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelArg {
    Er,
    Sbm,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkArg {
    Standard,
    Block,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(value_enum)]
    pub model: ModelArg,
    #[arg(long)]
    pub n: usize,
    /// Edge probability (ER).
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// Number of blocks (SBM); defaults to the built-in preset for n.
    #[arg(long)]
    pub blocks: Option<usize>,
    /// Output file name inside --out-dir.
    #[arg(long, default_value = "graph.txt")]
    pub output: String,
}

#[derive(Args, Debug)]
pub struct WalkArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// `vertex label` file; required for the block walk.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "standard")]
    pub kind: WalkArg,
    #[arg(long)]
    pub steps: u64,
    #[arg(long, default_value_t = 1)]
    pub every: u64,
    #[arg(long, default_value_t = 0.5)]
    pub q_on_to_off: f64,
    #[arg(long, default_value_t = 0.5)]
    pub q_off_to_on: f64,
}

#[derive(Args, Debug, Clone)]
pub struct ChainParams {
    /// Vertex count of the standard chain.
    #[arg(long)]
    pub n: Option<usize>,
    /// Community sizes for the block chain, e.g. `2,3`.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    /// Cross-community edges in the block chain's initial graph.
    #[arg(long, default_value_t = 1)]
    pub cross_edges: usize,
    #[arg(long, default_value_t = 0.5)]
    pub q_on_to_off: f64,
    #[arg(long, default_value_t = 0.5)]
    pub q_off_to_on: f64,
}

#[derive(Subcommand, Debug)]
pub enum ChainCommand {
    /// Write the transition matrix and state list as CSV.
    Enumerate(ChainParams),
    /// Write the closed-form stationary law with power-iteration check.
    Stationary(ChainParams),
    /// Exact worst-start total variation mixing time.
    Mixing {
        #[command(flatten)]
        params: ChainParams,
        #[arg(long, default_value_t = 0.25)]
        epsilon: f64,
    },
    /// Monte Carlo cover-time statistics.
    Cover {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        replicates: usize,
    },
}

#[derive(Args, Debug)]
pub struct MatchArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long, default_value_t = 0.05)]
    pub seed_fraction: f64,
    #[arg(long, value_enum, default_value = "identity")]
    pub init: InitArg,
    #[arg(long, default_value_t = 1)]
    pub restarts: usize,
    #[arg(long, default_value_t = 30)]
    pub max_iterations: usize,
    /// Use the exhaustive solver (at most 9 free vertices).
    #[arg(long)]
    pub brute_force: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum InitArg {
    Identity,
    Barycenter,
    Random,
}

#[derive(Args, Debug, Clone)]
pub struct ExperimentArgs {
    /// Named preset.
    #[arg(long)]
    pub preset: Option<String>,
    /// TOML config file (may itself name a preset).
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub replicates: Option<usize>,
    /// Comma-separated graph sizes.
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    /// Comma-separated checkpoint cadences.
    #[arg(long, value_delimiter = ',')]
    pub cadence: Option<Vec<u64>>,
    /// Also render one SVG per trace.
    #[arg(long)]
    pub plots: bool,
}

#[derive(Subcommand, Debug)]
pub enum ExperimentCommand {
    /// Standard walk on ER graphs.
    ErSweep(ExperimentArgs),
    /// Block walk on SBM graphs.
    SbmSweep(ExperimentArgs),
    /// A graph loaded from an edge list.
    Loaded {
        #[command(flatten)]
        args: ExperimentArgs,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        labels: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct IngestArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub directed: bool,
    #[arg(long)]
    pub one_indexed: bool,
    /// Keep original ids in `LO-HI` (inclusive).
    #[arg(long)]
    pub id_range: Option<String>,
    /// Keep only the largest connected component.
    #[arg(long)]
    pub lcc: bool,
    /// Label file to restrict and relabel alongside the graph.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    #[arg(long, default_value = "ingested.txt")]
    pub output: String,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    #[arg(long)]
    pub trace: PathBuf,
    #[arg(long, default_value = "trace")]
    pub title: String,
    #[arg(long, default_value = "trace.svg")]
    pub output: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
