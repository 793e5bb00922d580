use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tropmat::{parse_rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Bases,
    Circuits,
    Cocircuits,
    Optima,
}

/// Minimum-weight matroid bases with exact postoptimality analysis.
#[derive(Debug, Parser)]
#[command(name = "tropmat", version)]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Cross-check results by independent recomputation; exit 1 on mismatch
    #[arg(long, global = true)]
    pub verify: bool,

    /// Ground-set size limit for exhaustive enumeration
    #[arg(long, global = true, value_name = "N",
          value_parser = clap::value_parser!(u64).range(1..=24))]
    pub cap: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Instance file (JSON)
    pub file: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimum-weight basis and its value
    Solve(Input),
    /// Per-element min-max weight, bottleneck, tolerance, persistency and
    /// contraction/deletion values
    Analyze(Input),
    /// Optimal value after reweighting one element
    Postopt {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "ID")]
        element: String,
        #[arg(long, value_name = "Q", value_parser = rational_arg, allow_hyphen_values = true)]
        new_weight: Rational,
    },
    /// Whether an optimal basis survives the given reweighting
    Sensitivity {
        #[command(flatten)]
        input: Input,
        /// Optimal basis to test (default: the greedy optimum)
        #[arg(long, value_delimiter = ',', value_name = "ID,...")]
        basis: Option<Vec<String>>,
        #[arg(long, value_delimiter = ',', value_name = "ID=Q,...", required = true,
              value_parser = change_arg, allow_hyphen_values = true)]
        changes: Vec<(String, Rational)>,
    },
    /// Smallest-exchange reweighting that defeats an optimal basis
    Perturb {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', value_name = "ID,...")]
        basis: Option<Vec<String>>,
        #[arg(long, value_name = "Q", value_parser = rational_arg)]
        epsilon: Rational,
    },
    /// Exhaustive enumeration
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(value_enum)]
        family: Family,
    },
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn change_arg(s: &str) -> Result<(String, Rational), String> {
    let (id, q) = s
        .split_once('=')
        .ok_or_else(|| format!("expected ID=Q, got `{s}`"))?;
    if id.is_empty() {
        return Err(format!("missing element id in `{s}`"));
    }
    Ok((id.to_string(), rational_arg(q)?))
}
