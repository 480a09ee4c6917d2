use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::CONFIG_ENV;

#[derive(Debug, Parser)]
#[command(name = "rbqsym", version, about = "Products, basis changes and zeta-value identities for left weak composition quasi-symmetric functions")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Absolute tolerance for numeric checks
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Evaluation point for q-analogs, in (0, 1)
    #[arg(long, global = true)]
    pub q: Option<f64>,
    /// Number of variables of the truncated series
    #[arg(short = 'N', long = "vars", global = true)]
    pub vars: Option<u32>,
    /// Total-degree truncation
    #[arg(short = 'D', long = "deg", global = true)]
    pub deg: Option<u32>,
    /// Maximum number of zeros in enumerated indices
    #[arg(long, global = true)]
    pub zero_budget: Option<u32>,
    /// Emit JSON
    #[arg(long, global = true)]
    pub json: bool,
    /// Maximum number of generated terms
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Largest summation cutoff for nested sums
    #[arg(long, global = true)]
    pub max_cutoff: Option<u64>,
    /// TOML config file
    #[arg(long, global = true, env = CONFIG_ENV)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Product of two basis elements: quasi-shuffle on LWCs, or ⋄ on M̄ with --mbar
    Product {
        #[arg(long)]
        mbar: bool,
        a: String,
        b: String,
    },
    /// Expand an LWC between the F and M bases
    Basis { direction: Dir, alpha: String },
    /// Transition matrix on all LWCs of one size
    Matrix {
        direction: Dir,
        #[arg(long)]
        size: u32,
    },
    /// Truncated power series of a basis element
    Series { basis: SeriesBasis, alpha: String },
    /// Check an identity; exit 0 iff it holds
    Verify(VerifyArgs),
    /// Numeric value of a zeta symbol
    Eval { kind: EvalKind, symbol: String },
    /// Both sides of Waring's formula in --vars variables to --deg
    Waring,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Dir {
    F2m,
    M2f,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SeriesBasis {
    M,
    F,
    Mbar,
    /// P-partition generating function
    Gamma,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EvalKind {
    Mzv,
    Qmzv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    RbIdentity,
    Spitzer,
    Stuffle,
    Shuffle,
    DoubleShuffle,
    Euler,
    Stirling,
    Duality,
    Homomorphism,
    Waring,
    OracleSeries,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub kind: VerifyKind,
    #[arg(short = 'a')]
    pub a: Option<u32>,
    #[arg(short = 'b')]
    pub b: Option<u32>,
    #[arg(short = 'm')]
    pub m: Option<u32>,
    #[arg(short = 'n')]
    pub n: Option<u32>,
    #[arg(short = 'k')]
    pub k: Option<u32>,
    /// Comma-separated tuple
    #[arg(long)]
    pub s: Option<String>,
    /// Comma-separated tuple
    #[arg(long)]
    pub t: Option<String>,
    /// First operand (word, LWC or M̄ element)
    #[arg(short = 'u')]
    pub u: Option<String>,
    /// Second operand
    #[arg(short = 'v')]
    pub v: Option<String>,
    /// Largest total size for exhaustive checks
    #[arg(long, default_value_t = 5)]
    pub max_size: u32,
    /// Add this rational to the first left-hand coefficient
    #[arg(long, allow_hyphen_values = true)]
    pub perturb: Option<String>,
}
