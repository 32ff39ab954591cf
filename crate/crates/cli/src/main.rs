//! `rkp`: profiles, resonance catalogue, slope trees, verification and
//! trajectory export for the rotating Kepler problem.
//!
//! Exit codes: 0 success, 1 failed verification or run, 2 usage error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rkp_core::tree::MAX_DEPTH;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

impl From<rkp_core::Error> for CliError {
    fn from(e: rkp_core::Error) -> Self {
        match e {
            rkp_core::Error::Domain(msg) => CliError::Usage(msg),
            other => CliError::Failed(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    /// Planar Kepler
    #[value(name = "H")]
    Kepler,
    /// Rotating Kepler, K = H + L
    #[value(name = "K")]
    Jacobi,
    /// Delaunay Hamiltonian in the stereographic chart
    #[value(name = "delaunay")]
    ChartDelaunay,
    /// Delaunay plus L in the stereographic chart
    #[value(name = "chart-K")]
    ChartJacobi,
}

#[derive(Debug, Parser)]
#[command(name = "rkp", version, about = "Rotating Kepler problem toolkit")]
pub struct Cli {
    /// Optional key = value file; flags override its values
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Boundary of the sublevel set K~ <= c in the moment plane
    Profile {
        #[arg(long, allow_hyphen_values = true)]
        energy: Option<f64>,
        /// Samples per boundary component [default: 201]
        #[arg(long)]
        samples: Option<usize>,
        /// csv or svg; svg also writes a CSV of the plotted samples [default: csv]
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Resonance catalogue of second-kind orbits
    Orbits {
        /// Largest k + l [default: depth]
        #[arg(long)]
        max_sum: Option<u32>,
        /// [default: 4]
        #[arg(long)]
        depth: Option<u32>,
        /// Adds an in_window column for this Jacobi energy
        #[arg(long, allow_hyphen_values = true)]
        energy: Option<f64>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Stern-Brocot tree and its slope transform
    Tree {
        /// [default: 4]
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=i64::from(MAX_DEPTH)))]
        depth: Option<u32>,
        /// text or csv [default: text]
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run the invariant suite and write a CSV report
    Verify {
        /// [default: 42]
        #[arg(long)]
        seed: Option<u64>,
        /// Tolerance override, NAME=VALUE; NAME is a check or "symplectic"
        #[arg(long = "tol", value_name = "NAME=VALUE")]
        tol: Vec<String>,
        /// Restrict to groups: dynamics, regularization, toric, catalogue, tree
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Export a trajectory as CSV
    Flow {
        #[arg(long, value_enum, conflicts_with = "orbit")]
        field: Option<FieldArg>,
        /// Initial position, "q1,q2"
        #[arg(long, allow_hyphen_values = true, requires = "field")]
        q: Option<String>,
        /// Initial momentum, "p1,p2"
        #[arg(long, allow_hyphen_values = true, requires = "field")]
        p: Option<String>,
        /// Final time
        #[arg(long = "T", requires = "field")]
        t_end: Option<f64>,
        /// Step size [default: period / 2000]
        #[arg(long)]
        dt: Option<f64>,
        /// Second-kind orbit "k,l" at energy c_{k,l}
        #[arg(long, value_name = "K,L")]
        orbit: Option<String>,
        /// Eccentricity for --orbit [default: 0.3]
        #[arg(long, requires = "orbit")]
        ecc: Option<f64>,
        /// Report --orbit in the rotating frame
        #[arg(long, requires = "orbit")]
        rotating: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
