use std::path::PathBuf;

use chainstate::PotentialSpec;
use clap::{Args, Parser, Subcommand};

use crate::grid::{GridSpec, Window};

#[derive(Debug, Parser)]
#[command(name = "chainstate", version, about = "Ground states of one-dimensional particle chains")]
pub struct Cli {
    /// Significant digits for floating-point output.
    #[arg(long, global = true, default_value_t = 15, value_parser = clap::value_parser!(u8).range(1..=17))]
    pub digits: u8,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct PotentialArg {
    /// Potential, e.g. `mie:n=12,m=6` or `riesz:c=1,s=12;c=-2,s=6`.
    #[arg(long, default_value = "mie:n=12,m=6")]
    pub potential: PotentialSpec,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ground-state energy per particle against the mean spacing.
    EnergyCurve {
        #[command(flatten)]
        potential: PotentialArg,
        #[arg(long = "a", default_value = "0.9:2.0:111")]
        grid: GridSpec,
    },
    /// Critical spacing against the repulsive exponent at fixed attractive exponent.
    PhaseDiagram {
        #[arg(long, default_value_t = 6.0)]
        m: f64,
        #[arg(long, default_value = "6.5:30:236")]
        n: GridSpec,
    },
    /// Energy-minimising gap ratio against the mean spacing.
    DeltaSweep {
        #[command(flatten)]
        potential: PotentialArg,
        #[arg(long = "a", default_value = "0.9:5.0:83")]
        grid: GridSpec,
    },
    /// Gap-ratio excess against distance from the critical spacing, with a power-law fit.
    BetaFit {
        #[command(flatten)]
        potential: PotentialArg,
        #[arg(long, default_value = "1e-8:1e-4")]
        window: Window,
        #[arg(long, default_value_t = 20)]
        points: usize,
    },
    /// Gap ratio under a hard core of radius sigma.
    HardcoreSweep {
        #[command(flatten)]
        potential: PotentialArg,
        /// Core radius; overrides a `sigma=` in the potential.
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long = "a", default_value = "1.1:6.0:99")]
        grid: GridSpec,
    },
    /// Junction spacing against sigma - 1, with a power-law fit.
    TauFit {
        #[command(flatten)]
        potential: PotentialArg,
        #[arg(long, default_value = "1e-12:1e-9")]
        window: Window,
        #[arg(long, default_value_t = 10)]
        points: usize,
    },
    /// Equidistant minimum spacing in the limit of coinciding exponents, against m.
    AminLimit {
        #[arg(long, default_value = "1.05:20:192")]
        m: GridSpec,
    },
    /// Cross-checks of closed forms, quadrature, direct sums and reference constants.
    Validate {
        /// Run a reduced subset.
        #[arg(long)]
        quick: bool,
    },
}
