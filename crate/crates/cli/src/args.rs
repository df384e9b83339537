use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "jrsp", version, about = "Joint remote state preparation over noisy GHZ channels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fidelity vs. decoherence rate, simulated and closed form.
    Sweep(SweepArgs),
    /// The 16 noiseless measurement branches.
    Outcomes(OutcomesArgs),
    /// Closed forms vs. simulation for every channel and phase set.
    Verify(VerifyArgs),
    /// Print both measurement bases.
    Bases(BasesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AngleUnit {
    Degrees,
    #[default]
    Radians,
}

#[derive(Debug, Clone, Args)]
pub struct PhaseArgs {
    /// Alice's phases alpha_1..alpha_3, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
    pub alpha: Option<Vec<f64>>,

    /// Bob's phases beta_1..beta_3, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
    pub beta: Option<Vec<f64>>,

    /// Interpret phases as degrees.
    #[arg(long, conflicts_with = "radians")]
    pub degrees: bool,

    /// Interpret phases as radians (default).
    #[arg(long)]
    pub radians: bool,
}

impl PhaseArgs {
    pub fn unit(&self) -> AngleUnit {
        if self.degrees {
            AngleUnit::Degrees
        } else {
            AngleUnit::Radians
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub lambda_start: Option<f64>,

    #[arg(long, allow_negative_numbers = true)]
    pub lambda_end: Option<f64>,

    /// Number of grid points, endpoints included.
    #[arg(long)]
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Channel name or `all`.
    #[arg(long)]
    pub channel: Option<String>,

    #[command(flatten)]
    pub grid: GridArgs,

    #[command(flatten)]
    pub phases: PhaseArgs,

    /// Divide by the actual success weight instead of the ideal 1/4.
    #[arg(long)]
    pub renormalized: bool,

    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,

    #[arg(long)]
    pub output: Option<PathBuf>,

    /// fig1a, fig1b, fig1c, fig3a or fig3b.
    #[arg(long)]
    pub preset: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct OutcomesArgs {
    #[command(flatten)]
    pub phases: PhaseArgs,

    /// case1, bob-assist or both-assists.
    #[arg(long, default_value = "case1")]
    pub mode: String,

    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,

    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub grid: GridArgs,

    /// Verify a single phase set instead of the built-in list.
    #[command(flatten)]
    pub phases: PhaseArgs,

    #[arg(long, value_enum, default_value_t)]
    pub format: ReportFormat,

    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BasesArgs {
    #[command(flatten)]
    pub phases: PhaseArgs,

    #[arg(long)]
    pub output: Option<PathBuf>,
}
