use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "nojunta",
    version,
    about = "Restrictions, no-junta subfunctions and degree bounds of Boolean functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, short = 'f', global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,

    /// Worker threads for exhaustive scans and sampling.
    #[arg(long, short = 'w', global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: u64,

    /// Include wall-clock time in the report; without it output is byte-identical across runs.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dependency set, nondegeneracy and symmetry profile.
    Analyze(TableArgs),
    /// First single-variable restriction that stays nondegenerate.
    FindNojunta(TableArgs),
    /// The restriction digraph and the structural checks on it.
    Digraph {
        #[command(flatten)]
        table: TableArgs,
        /// Emit Graphviz DOT (same as `--format dot`).
        #[arg(long)]
        dot: bool,
    },
    /// Representing polynomial and its degree over Z_m, or over Z without `-m`.
    Degree {
        #[command(flatten)]
        table: TableArgs,
        #[arg(short = 'm', long = "modulus")]
        m: Option<u64>,
        /// List the nonzero coefficients.
        #[arg(long)]
        terms: bool,
    },
    /// CRT witness for a symmetric nondegenerate function.
    Witness {
        #[command(flatten)]
        table: TableArgs,
        #[arg(short = 'm', long = "modulus")]
        m: u64,
    },
    /// Exhaustive and sampled verifiers.
    #[command(subcommand)]
    Verify(Verify),
    /// Randomized experiments.
    #[command(subcommand)]
    Experiment(Experiment),
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// Every nondegenerate function on n variables has a nondegenerate single-variable restriction.
    Nojunta {
        #[arg(long)]
        n: usize,
        /// Only this slice `W/T` of the candidates (0-based worker W of T).
        #[arg(long)]
        partition: Option<String>,
    },
    /// `m * prod d_i > n` with CRT witnesses, for one table or every symmetric function of `--n` variables.
    SymBound {
        #[command(flatten)]
        table: TableArgs,
        /// Moduli; repeat for several.
        #[arg(short = 'm', long = "modulus", required = true)]
        m: Vec<u64>,
        /// Smallest n of the scan range (defaults to `--n`).
        #[arg(long)]
        n_from: Option<usize>,
    },
    /// Search for a symmetric no-junta subfunction and check the bound on the full function.
    NonsymBound {
        #[command(flatten)]
        table: TableArgs,
        #[arg(short = 'm', long = "modulus")]
        m: u64,
        /// Random functions to draw when no table is given (needs `--seed` and `--n`).
        #[arg(long)]
        count: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Restrictions examined before giving up.
        #[arg(long, default_value_t = nojunta::bounds::nonsym::DEFAULT_SEARCH_CAP)]
        cap: u64,
        /// Draw restrictions uniformly instead of scanning in order (needs `--seed`).
        #[arg(long)]
        sampled: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum Experiment {
    /// Exact counts of symmetric no-junta subfunctions of random functions against their expectation.
    SecondMoment {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
}

/// A truth table from a JSON file `{"n": .., "hex": ..}` or inline.
#[derive(Debug, Clone, Args, Serialize)]
pub struct TableArgs {
    /// Table file.
    pub path: Option<PathBuf>,
    /// Inline truth table in hex (most significant point first).
    #[arg(long, requires = "n", conflicts_with = "path")]
    pub hex: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Apply a restriction such as `1=1,6=0` before analysis.
    #[arg(long)]
    pub restrict: Option<String>,
}

impl TableArgs {
    pub fn given(&self) -> bool {
        self.path.is_some() || self.hex.is_some()
    }

    pub fn describe(&self) -> Option<String> {
        match (&self.path, &self.hex) {
            (Some(p), _) => Some(p.display().to_string()),
            (None, Some(h)) => Some(format!("hex:{h}")),
            _ => None,
        }
    }
}
