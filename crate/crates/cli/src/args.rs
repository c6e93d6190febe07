//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "rivalcast",
    version,
    about = "Benefit-aware influence maximization under a rival cascade"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Load a dataset, draw node weights, and persist RR-set collections
    Sample(SampleArgs),
    /// Run solvers and baselines over a persisted collection
    Solve(SolveArgs),
    /// Evaluate a fixed seed-set pair exactly or by Monte Carlo
    Evaluate(EvaluateArgs),
    /// Exhaustively find the best positive seed set on a tiny instance
    Bruteforce(BruteforceArgs),
    /// Run the oracle-backed verification suite and report pass/fail
    Verify(VerifyArgs),
    /// Time solver runs across RR-set counts
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    /// Edge-list file: `src dst [pp [pr]]` per line
    #[arg(long)]
    pub dataset: PathBuf,
    /// Duplicate every input edge in both directions
    #[arg(long)]
    pub undirected: bool,
    /// `indeg` | `explicit` | `const:<p>`
    #[arg(long, default_value = "indeg")]
    pub prob_rule: String,
    /// Number of RR-sets per estimator (lambda = mu = theta)
    #[arg(long)]
    pub theta: usize,
    /// Master seed; all streams are derived from it by name
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Rival seed rule: `top:<r>` | `random:<r>` | `ids:<a,b,...>` (original ids)
    #[arg(long, default_value = "top:1")]
    pub rival: String,
    /// Load node weights from a `node p q` file instead of sampling them
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// Output directory for the snapshots and manifest
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Directory written by `sample`
    #[arg(
        long,
        required_unless_present = "manifest",
        conflicts_with = "manifest"
    )]
    pub collection: Option<PathBuf>,
    /// Re-run a previous solve bit-exactly from its manifest
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// Budgets, e.g. `--k 10,20,30`
    #[arg(long, value_delimiter = ',', default_value = "5,10,15,20,25,30")]
    pub k: Vec<usize>,
    /// Any of: modmod1, modmod2, greedy, infmax, maxdegree, random
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "modmod1,modmod2,greedy,infmax,maxdegree,random"
    )]
    pub method: Vec<String>,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    /// Permutation strategy for the solver: alpha1..alpha4
    #[arg(long, default_value = "alpha2")]
    pub alpha: String,
    /// Solve-stage master seed; defaults to the sample seed
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory for results.csv, reports/, and the solve manifest
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub dataset: PathBuf,
    #[arg(long)]
    pub undirected: bool,
    #[arg(long, default_value = "indeg")]
    pub prob_rule: String,
    /// Weights file; when absent, weights are drawn from the seed
    #[arg(long)]
    pub weights: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Positive seeds as original ids, e.g. `--sp 1,2,3`
    #[arg(long, value_delimiter = ',')]
    pub sp: Vec<u64>,
    /// Rival seeds as original ids; empty when omitted
    #[arg(long, value_delimiter = ',')]
    pub sr: Vec<u64>,
    /// `exact` | `mc:<samples>`
    #[arg(long, default_value = "exact")]
    pub mode: String,
}

#[derive(Args, Debug)]
pub struct BruteforceArgs {
    #[arg(long)]
    pub dataset: PathBuf,
    #[arg(long)]
    pub undirected: bool,
    #[arg(long, default_value = "indeg")]
    pub prob_rule: String,
    #[arg(long)]
    pub weights: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "top:1")]
    pub rival: String,
    #[arg(long)]
    pub k: usize,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// RR-sets per estimator for the checks
    #[arg(long, default_value_t = 5000)]
    pub theta: usize,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    /// Trials per statistical property
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Negative control: bias the estimator and expect the suite to fail
    #[arg(long, hide = true)]
    pub corrupt_estimator: bool,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Edge-list file; a synthetic 200-node graph is used when omitted
    #[arg(long)]
    pub dataset: Option<PathBuf>,
    #[arg(long)]
    pub undirected: bool,
    #[arg(long, default_value = "indeg")]
    pub prob_rule: String,
    /// RR-set counts to sweep, e.g. `--theta 5000,10000,20000`
    #[arg(long, value_delimiter = ',')]
    pub theta: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    pub k: usize,
    #[arg(long, value_delimiter = ',', default_value = "modmod1,modmod2")]
    pub method: Vec<String>,
    /// Repetitions per cell; the median wall time is reported
    #[arg(long, default_value_t = 5)]
    pub runs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "top:1")]
    pub rival: String,
    #[arg(long)]
    pub out: PathBuf,
}
