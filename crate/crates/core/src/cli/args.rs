use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "blaschke-lab", version, about = "Interpolation-constant bounds and quotient-norm solvers on the disc")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output format.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Upper bounds, kernel norms and constants for a node set.
    Bounds {
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long, default_value = "h2")]
        space: String,
        #[command(flatten)]
        output: Output,
    },
    /// Lower bound, witness, estimate and upper bound for `{-r}` repeated `n` times.
    Sandwich {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value = "h2")]
        space: String,
        /// Witness power (1 for H², 2 for Bergman); defaults by space.
        #[arg(long = "N")]
        power: Option<u32>,
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Nevanlinna–Pick value by Pick-matrix bisection.
    Np {
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long)]
        values: PathBuf,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Carathéodory–Schur value of a coefficient list.
    Cs {
        #[arg(long)]
        coeffs: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Quotient norm of a polynomial modulo the Blaschke product of a node set.
    Quotient {
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long)]
        f: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Empirical check of the Bernstein constant on a random node set.
    Bernstein {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Lower estimate of the Carleson interpolation constant.
    Carleson {
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long, default_value_t = 100)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Bound table over n = 1, 2, 4, ... ≤ nmax and a grid of radii.
    Table {
        #[arg(long)]
        nmax: usize,
        /// Comma-separated radii, e.g. `0,0.5,0.9`.
        #[arg(long)]
        rgrid: String,
        #[arg(long, default_value = "h2")]
        space: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}
