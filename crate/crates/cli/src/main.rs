//! `curvkepler`: verification suites, simulations, curvature scans and rank
//! tests for the superintegrable free and Kepler systems on curved spaces.
//!
//! Exit codes: 0 success, 1 a check failed, 2 invalid input, 3 a simulation
//! stopped at a chart singularity.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "curvkepler", version, about)]
struct Cli {
    /// TOML file with default values for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Seed for every sampled point; falls back to the file, then to CURVKEPLER_SEED.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output file; standard output when absent.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default, Clone)]
pub struct SpaceArgs {
    /// One of the six constant-curvature spaces.
    #[arg(long, conflicts_with_all = ["z", "kappa2"])]
    preset: Option<String>,
    /// Curvature parameter z (κ1).
    #[arg(long, allow_negative_numbers = true)]
    z: Option<f64>,
    /// Signature parameter κ2 (nonzero).
    #[arg(long, allow_negative_numbers = true)]
    kappa2: Option<f64>,
    /// Kepler coupling γ.
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check bracket tables at random points.
    Verify {
        #[command(flatten)]
        space: SpaceArgs,
        /// sl2z, casimirs, so4, lrl or all.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        samples: Option<usize>,
        /// Largest residual that still passes.
        #[arg(long)]
        threshold: Option<f64>,
        /// Scale one generator by this factor (negative control).
        #[arg(long)]
        perturb: Option<f64>,
    },
    /// Integrate one trajectory and write it as CSV.
    Simulate {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        family: Option<String>,
        /// Six comma-separated coordinates.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        state: Option<Vec<f64>>,
        /// Chart of --state; defaults to the family's polar chart.
        #[arg(long)]
        state_chart: Option<String>,
        #[arg(long)]
        t_end: Option<f64>,
        #[arg(long)]
        rel_tol: Option<f64>,
        #[arg(long)]
        abs_tol: Option<f64>,
        #[arg(long)]
        max_step: Option<f64>,
        #[arg(long)]
        sample_stride: Option<usize>,
        /// dop853 or midpoint.
        #[arg(long)]
        method: Option<String>,
        /// Step of the midpoint rule.
        #[arg(long)]
        step: Option<f64>,
        /// `constants` (default) or `none`.
        #[arg(long)]
        monitors: Option<String>,
        /// Where to write the drift summary JSON.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Numerical and closed-form curvature on a regular grid.
    Curvature {
        #[command(flatten)]
        space: SpaceArgs,
        /// nc or cc.
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        chart: Option<String>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        lo: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        hi: Option<Vec<f64>>,
        /// Points per axis.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Jacobian rank histogram of a set of constants.
    Rank {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        family: Option<String>,
        /// Comma-separated names among C2, C2mid, C3, I2, L1, L2, L3, H.
        #[arg(long, value_delimiter = ',')]
        observables: Option<Vec<String>>,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Write the six constant-curvature presets as JSON.
    ExportPresets,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
