//! `swldpc`: Slepian-Wolf coding with LDPC coset codes from the command line.

mod commands;
mod inputs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use swldpc_core::de::{ConvolutionMode, DeSettings};

#[derive(Debug, Parser)]
#[command(name = "swldpc", version, about = "Slepian-Wolf source coding with LDPC coset codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Syndrome of a bit string.
    Encode(commands::EncodeArgs),
    /// Recover the source bits from a syndrome and side information.
    Decode(commands::DecodeArgs),
    /// Monte-Carlo bit and frame error rates.
    Simulate(commands::SimulateArgs),
    /// Density evolution trajectory for one source.
    DeRun(commands::DeRunArgs),
    /// Density-evolution threshold of a source family by bisection.
    DeThreshold(commands::DeThresholdArgs),
    /// Feasible-domain sweep over the (p, q) family.
    Sweep(commands::SweepArgs),
    /// Equivalent channel of a source, with capacity and conditional entropy.
    Convert(commands::ConvertArgs),
    /// Source equivalence test, or a member of a source's equivalence class.
    Equiv(commands::EquivArgs),
    /// Degradation test between two sources, or apply a stochastic map.
    DegradeCheck(commands::DegradeArgs),
    /// Message-error concentration around the density-evolution prediction.
    Concentration(commands::ConcentrationArgs),
    /// Density evolution for a decoder that assumes the wrong source.
    Mismatch(commands::MismatchArgs),
}

/// Density-evolution flags shared by the analysis subcommands.
#[derive(Debug, Clone, Args)]
pub struct DeFlags {
    /// LLR grid step.
    #[arg(long, default_value_t = 1.0 / 64.0)]
    pub step: f64,
    /// LLR grid covers [-range, range].
    #[arg(long, default_value_t = 30.0)]
    pub range: f64,
    #[arg(long, default_value_t = 2000)]
    pub max_iter: usize,
    /// Error-probability target for convergence.
    #[arg(long, default_value_t = 1e-6)]
    pub target: f64,
    /// Convolution method: fft or direct.
    #[arg(long, default_value = "fft")]
    pub conv: String,
    /// Magnitude grid step is step / mag-divisor.
    #[arg(long, default_value_t = 4)]
    pub mag_divisor: usize,
    #[arg(long, default_value_t = 50.0)]
    pub mag_cap: f64,
}

impl DeFlags {
    pub fn settings(&self) -> Result<DeSettings, CliError> {
        if !(self.step > 0.0) || !(self.range > 0.0) {
            return Err(CliError::Usage("--step and --range must be positive".into()));
        }
        let mode: ConvolutionMode = self.conv.parse().map_err(|e: swldpc_core::Error| CliError::Usage(e.to_string()))?;
        let s = DeSettings {
            max_iter: self.max_iter,
            target: self.target,
            mode,
            mag_divisor: self.mag_divisor,
            mag_cap: self.mag_cap,
            ..DeSettings::with_grid(self.step, self.range)
        };
        s.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(s)
    }
}

/// Where data output goes.
#[derive(Debug, Clone, Args)]
pub struct OutputFlag {
    /// Write data here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(swldpc_core::Error),
    Io(PathBuf, std::io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain(e) => write!(f, "error: {e}"),
            CliError::Io(p, e) => write!(f, "error: {}: {e}", p.display()),
        }
    }
}

impl From<swldpc_core::Error> for CliError {
    fn from(e: swldpc_core::Error) -> Self {
        CliError::Domain(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Encode(a) => commands::encode(a),
        Command::Decode(a) => commands::decode(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::DeRun(a) => commands::de_run(a),
        Command::DeThreshold(a) => commands::de_threshold(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Convert(a) => commands::convert(a),
        Command::Equiv(a) => commands::equiv(a),
        Command::DegradeCheck(a) => commands::degrade_check(a),
        Command::Concentration(a) => commands::concentration(a),
        Command::Mismatch(a) => commands::mismatch(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            match e {
                CliError::Usage(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
