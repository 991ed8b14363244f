use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::emit::Format;

#[derive(Debug, Parser)]
#[command(
    name = "lgi",
    version,
    about = "Leggett-Garg functionals on a sequentially measured qubit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a functional at one parameter point.
    Eval(EvalArgs),
    /// Search couplings and initial state for the largest value.
    Optimize(OptimizeArgs),
    /// Tabulate a functional along one parameter.
    Sweep(SweepArgs),
    /// Three-time disturbance report.
    Nsit(NsitArgs),
    /// Macrorealist and algebraic bounds by enumeration.
    Bounds(BoundsArgs),
    /// Regenerate every reference number and figure table.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct State {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
}

#[derive(Debug, Args)]
pub struct SpecArg {
    /// Term syntax such as "+[1,2,3] +[1,2] -[3]", or a shortcut K:n, K3var:n,
    /// L3var:n. A bare family name takes its size from --n.
    #[arg(long)]
    pub spec: String,
    #[arg(long)]
    pub n: Option<String>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub spec: SpecArg,
    /// Coupling per interval, comma separated; a single value is used for all.
    #[arg(long, allow_negative_numbers = true)]
    pub g: String,
    #[command(flatten)]
    pub state: State,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub spec: SpecArg,
    /// One coupling per interval instead of a shared one.
    #[arg(long)]
    pub unequal: bool,
    /// Grid points per axis.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Accepted for interface stability; the search is deterministic.
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Axis {
    G,
    Theta,
    Phi,
    /// Measurement count at g = π/(2n); takes the values from --n.
    N,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub spec: SpecArg,
    #[arg(long, value_enum)]
    pub axis: Axis,
    /// "lo,hi" for continuous axes.
    #[arg(long, allow_negative_numbers = true)]
    pub range: Option<String>,
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    /// Fixed coupling for θ and φ sweeps.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub g: f64,
    #[command(flatten)]
    pub state: State,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct NsitArgs {
    /// The two couplings, comma separated; a single value is used for both.
    #[arg(long, allow_negative_numbers = true)]
    pub g: String,
    #[command(flatten)]
    pub state: State,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub spec: SpecArg,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Directory for the manifest and figure tables.
    #[arg(long, default_value = "reproduction")]
    pub out: PathBuf,
    #[arg(long)]
    pub grid: Option<usize>,
}
