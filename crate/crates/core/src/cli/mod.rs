//! Command-line front end. Exit codes: 0 when every check passes, 1 when
//! violations are found, 2 for input errors.

mod commands;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::run;

#[derive(Parser, Debug, Clone)]
#[command(name = "equivar", version, about = "Exact checks of functional equivariance for B-series integrators")]
pub struct Cli {
    /// Truncation order.
    #[arg(long, global = true, default_value_t = 4)]
    pub order: usize,

    /// Number of colors for tree listings.
    #[arg(long, global = true, default_value_t = 1)]
    pub colors: u32,

    /// Seed for randomly generated instances.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Largest number of monomials in one symbolic intermediate.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub budget: usize,

    /// Extra catalog file whose entries add to or replace the built-in ones.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,

    /// List the method catalog and exit.
    #[arg(long)]
    pub list: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Qfe,
    NbAffine,
    PQfe,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Formal,
    Numeric,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// List rooted trees up to --order with --colors colors.
    Trees,
    /// Check a coefficient condition on a series file.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Which::Qfe)]
        which: Which,
        /// For p-qfe: only pairs whose roots have different colors.
        #[arg(long)]
        bilinear_only: bool,
    },
    /// Modified-field series of a catalog method or a tableau/series file.
    Modified { method: String },
    /// Residual of the functional-equivariance diagram.
    Verify {
        #[arg(long, default_value = "implicit-midpoint")]
        method: String,
        /// Vector field file; repeat once per part for splittings.
        #[arg(long)]
        field: Vec<PathBuf>,
        /// Observable file.
        #[arg(long)]
        observable: Option<PathBuf>,
        /// Initial point, comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::Formal)]
        mode: Mode,
        /// Step size for numeric mode.
        #[arg(long, default_value_t = 0.01)]
        h: f64,
        /// Stage-solver tolerance for numeric mode.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Largest numeric residual accepted as zero.
        #[arg(long, default_value_t = 1e-8)]
        threshold: f64,
        /// Degree of a randomly generated observable.
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Write the witness field and observable for a pair of trees.
    Witness {
        u: String,
        v: String,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

/// Parses the process arguments, runs, prints, and returns the exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    let outcome = run(&cli);
    print!("{}", outcome.output);
    if let Some(err) = &outcome.error {
        eprintln!("error: {err}");
    }
    outcome.code
}
