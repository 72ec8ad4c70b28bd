use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Shapley values of matching games.
#[derive(Debug, Parser)]
#[command(name = "matchshap", version)]
pub struct Cli {
    /// Worker threads for parallel sections; results do not depend on it.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,

    /// Emit the full run report as JSON instead of TSV.
    #[arg(long, global = true)]
    pub json: bool,

    /// Include wall-clock time in the JSON report and on standard error.
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact Shapley values as reduced fractions.
    Exact(ExactArgs),
    /// Sampled Shapley estimates with a multiplicative error guarantee.
    Approx(ApproxArgs),
    /// Count vertex subsets whose induced subgraph has a perfect matching.
    CountMatchable(CountArgs),
    /// Recover matchable-subset counts from Shapley values and compare.
    VerifyReduction(InputArgs),
    /// Run every exact method on one graph, timing each on standard error.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Graph file, or `-` for standard input.
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Report a single vertex.
    #[arg(long)]
    pub player: Option<usize>,

    /// auto, bruteforce, degree2, modular or components.
    #[arg(long, default_value = "auto")]
    pub method: String,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Relative error bound, a positive rational such as `1/2` or `0.1`.
    #[arg(long)]
    pub eps: String,

    /// Failure probability in (0, 1).
    #[arg(long, default_value = "1/4")]
    pub delta: String,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Report a single vertex.
    #[arg(long)]
    pub player: Option<usize>,

    /// Estimate raw values `n! φ_i` instead of `φ_i`.
    #[arg(long)]
    pub raw: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "which")]
pub struct CountSelection {
    /// Subset size.
    #[arg(short = 'k')]
    pub k: Option<usize>,

    /// Print the whole vector for k = 0..n.
    #[arg(long)]
    pub all: bool,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[command(flatten)]
    pub selection: CountSelection,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Also time the sampler at this error bound.
    #[arg(long)]
    pub eps: Option<String>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
