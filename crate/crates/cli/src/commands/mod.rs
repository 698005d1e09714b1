//! Subcommand definitions and dispatch.

pub mod limit_inf;
pub mod limit_zero;
pub mod ppoly;
pub mod profile;
pub mod qpoly;
pub mod report;
pub mod verify;

use std::path::PathBuf;

use anyhow::Result;
use clap::{ArgAction, Args, Parser, Subcommand};

use crate::config::{OutputFormat, RunConfig};

/// Overall verdict of one command run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }

    pub fn from_passed(passed: bool) -> Outcome {
        if passed {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "peforge",
    version,
    about = "Exact construction and verification of a one-parameter family of \
             Einstein metrics on the even-dimensional ball"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the radial building-block polynomial Q_k and its exact facts
    Qpoly {
        /// Index of the building block, at least 1
        k: u32,
        #[command(flatten)]
        flags: Flags,
    },
    /// Print the structure polynomial P_n and its defining identities
    Ppoly {
        /// Half the real dimension, at least 2
        #[arg(value_name = "N")]
        dim: u32,
        #[command(flatten)]
        flags: Flags,
    },
    /// Build the three metric coefficients in a chosen radial chart
    Profile {
        #[command(flatten)]
        flags: Flags,
    },
    /// Run the exact Einstein checks, optionally cross-checked numerically
    Verify {
        #[command(flatten)]
        flags: Flags,
    },
    /// Large-parameter limit: complex-hyperbolic normalization and decay tables
    LimitInf {
        #[command(flatten)]
        flags: Flags,
    },
    /// Small-parameter limit: collapse decomposition and decay tables
    LimitZero {
        #[command(flatten)]
        flags: Flags,
    },
    /// Aggregate every check into one report, schema-validated as JSON
    Report {
        #[command(flatten)]
        flags: Flags,
    },
}

/// The shared option surface. Unset flags fall back to the `--config`
/// file and then to the built-in defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Half the real dimension: the family lives on the ball of dimension 2n
    #[arg(long)]
    pub n: Option<u32>,

    /// Parameter value: a rational literal (1, 1/10, 1e-2) or `formal`
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<String>,

    /// Radial chart: r, s, rho, t, or x
    #[arg(long)]
    pub chart: Option<String>,

    /// Truncation order for the origin and boundary series [default: 8]
    #[arg(long)]
    pub order: Option<usize>,

    /// Grid point count for the sup-norm tables [default: 50]
    #[arg(long)]
    pub grid: Option<usize>,

    /// Comma-separated parameter values for the tables
    #[arg(long = "c-list", value_delimiter = ',')]
    pub c_list: Option<Vec<String>>,

    /// Decimal digits for printed deviations [default: 40]
    #[arg(long, env = "PEFORGE_PRECISION")]
    pub precision: Option<u32>,

    /// Output format [default: text]
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,

    /// Write the output to this file instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Read defaults from a TOML file; explicit flags win
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Also run the finite-difference curvature oracle (needs --n 2 and a
    /// numeric --c)
    #[arg(long, action = ArgAction::SetTrue)]
    pub oracle: Option<bool>,

    /// Apply a structural control that must be caught: gamma2-plus-r,
    /// p-plus-r, or beta2-times-2
    #[arg(long)]
    pub perturb: Option<String>,

    /// Left end of the rescaled radial window for limit-zero [default: 0.5]
    #[arg(long)]
    pub r1: Option<f64>,

    /// Right end of the rescaled radial window for limit-zero [default: 2]
    #[arg(long)]
    pub r2: Option<f64>,

    /// Outer end of the fiber window for limit-zero [default: 5]
    #[arg(long = "R")]
    pub r_max: Option<f64>,
}

impl Flags {
    /// Folds the flag layer over the optional `--config` file.
    pub fn resolve(&self) -> Result<RunConfig> {
        let from_flags = RunConfig {
            n: self.n,
            c: self.c.clone(),
            chart: self.chart.clone(),
            order: self.order,
            grid: self.grid,
            c_list: self.c_list.clone(),
            precision: self.precision,
            format: self.format,
            out: self.out.clone(),
            oracle: self.oracle,
            perturb: self.perturb.clone(),
            r1: self.r1,
            r2: self.r2,
            r_max: self.r_max,
        };
        Ok(match &self.config {
            Some(path) => from_flags.merged_over(RunConfig::from_toml_file(path)?),
            None => from_flags,
        })
    }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Qpoly { k, flags } => qpoly::run(k, &flags.resolve()?),
        Command::Ppoly { dim, flags } => ppoly::run(dim, &flags.resolve()?),
        Command::Profile { flags } => profile::run(&flags.resolve()?),
        Command::Verify { flags } => verify::run(&flags.resolve()?),
        Command::LimitInf { flags } => limit_inf::run(&flags.resolve()?),
        Command::LimitZero { flags } => limit_zero::run(&flags.resolve()?),
        Command::Report { flags } => report::run(&flags.resolve()?),
    }
}
