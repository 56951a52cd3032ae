//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hilb_core::principal::DEFAULT_HEIGHT;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "hilb",
    version,
    about = "Exact, seeded certificates for the symmetric chart of the Hilbert scheme of d+1 points in d-space"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Options every subcommand accepts. The JSON artifact goes to `--out`; the
/// text table goes to stdout and next to it with a `.txt` extension.
#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn dimension(s: &str) -> Result<u8, String> {
    let d: u8 = s.parse().map_err(|e| format!("{e}"))?;
    if (2..=12).contains(&d) {
        Ok(d)
    } else {
        Err(format!("d must lie in 2..=12, got {d}"))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the generators of the chart ideal at a reduction stage.
    Generators {
        #[arg(long, value_parser = dimension)]
        d: u8,
        #[arg(long, default_value = "raw", value_parser = ["raw", "eliminated", "q"])]
        stage: String,
        #[command(flatten)]
        common: Common,
    },
    /// Representation dimensions, symmetric squares and the dimension ledger.
    Schur(SchurArgs),
    /// Check the exact relations among the generators.
    Identities {
        #[arg(long, value_parser = dimension)]
        d: u8,
        #[command(flatten)]
        common: Common,
    },
    /// Sample spanning configurations and their coordinates.
    Sample {
        #[arg(long, value_parser = dimension)]
        d: u8,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_HEIGHT)]
        height: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Test whether a polynomial vanishes on sampled points of the principal
    /// component; exits 1 on a counterexample.
    Membership {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, value_parser = dimension)]
        d: u8,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_HEIGHT)]
        height: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Certified Jacobian rank at sampled points.
    Jacobian {
        #[arg(long, value_parser = dimension)]
        d: u8,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// A point of the rational curve through the base configuration, or its
    /// limit when the parameter is an anchor.
    Curve {
        #[arg(long, value_parser = dimension)]
        d: u8,
        /// Comma-separated projective anchors `a:b`, one per coordinate.
        #[arg(long, value_delimiter = ',', required = true)]
        anchors: Vec<String>,
        #[arg(long)]
        at: String,
        #[command(flatten)]
        common: Common,
    },
    /// Extract and verify the 90×115 factorization matrix, or export it.
    #[command(name = "m-matrix")]
    MMatrix {
        #[arg(long, required_unless_present = "export")]
        verify: bool,
        #[arg(long)]
        export: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Find a nonsingular maximal minor, or certify one.
    Minor(MinorArgs),
    /// Run every acceptance check in order and print a summary.
    #[command(name = "reproduce-all")]
    ReproduceAll {
        /// Comma-separated criterion numbers; all when omitted.
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<u8>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
#[group(id = "schur-mode", required = true, multiple = false, args = ["dim", "sym2", "ledger"])]
pub struct SchurArgs {
    /// Dimension of a Schur functor: partition (comma-separated) and d.
    #[arg(long, num_args = 2, value_names = ["LAMBDA", "D"])]
    pub dim: Option<Vec<String>>,
    /// Decompose the symmetric square of a Schur functor by characters.
    #[arg(long, num_args = 2, value_names = ["LAMBDA", "D"])]
    pub sym2: Option<Vec<String>>,
    /// Dimension ledger at d.
    #[arg(long, value_name = "D")]
    pub ledger: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
#[group(id = "minor-mode", required = true, multiple = false, args = ["find", "certify"])]
pub struct MinorArgs {
    #[arg(long)]
    pub find: bool,
    #[arg(long, requires = "cols")]
    pub certify: bool,
    /// Columns as a JSON array, or the artifact written by `--find`.
    #[arg(long)]
    pub cols: Option<PathBuf>,
    /// Points of the principal component at which the minor must vanish.
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    /// In-set assignments at which the minor must not vanish.
    #[arg(long, default_value_t = 5)]
    pub in_set: usize,
    #[command(flatten)]
    pub common: Common,
}
