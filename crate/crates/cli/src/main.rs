//! `modk`: decide, color, evaluate κ, run identity checks and compare state
//! sizes from the command line.
//!
//! Every command writes one JSON report to stdout and a short summary to
//! stderr. Exit codes: 0 success / Yes, 1 No / failure, 2 input error.

mod commands;
mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "modk", version, about = "k-coloring via signed w-mod-k subgraph counts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide k-colorability under a promise of at most s colorings.
    Decide(DecideArgs),
    /// Extract a proper k-coloring by self-reduction.
    Color(ColorArgs),
    /// Evaluate κ_{k,w}(A) for one residue vector.
    Kappa(KappaArgs),
    /// Run an identity suite against the brute-force oracles.
    Check(CheckArgs),
    /// Compare DP state-table sizes against the explicit color DP.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderKind {
    Identity,
    Bfs,
}

#[derive(Debug, Args)]
pub struct DecompArgs {
    /// Path decomposition file; a heuristic one is built when omitted.
    #[arg(long)]
    pd: Option<String>,
    /// Vertex order for the heuristic decomposition.
    #[arg(long, value_enum, default_value = "identity")]
    order: OrderKind,
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    /// DIMACS .col graph file.
    #[arg(long)]
    graph: String,
    #[command(flatten)]
    decomp: DecompArgs,
    #[arg(long)]
    k: u32,
    /// Promised upper bound on the number of proper k-colorings.
    #[arg(long)]
    s: u64,
    /// Repetition multiplier; p * s trials are drawn.
    #[arg(long, default_value_t = 2)]
    p: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
pub struct ColorArgs {
    #[arg(long)]
    graph: String,
    #[command(flatten)]
    decomp: DecompArgs,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    s: u64,
    /// Repetition multiplier for every decision; defaults to 2nk.
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
pub struct KappaArgs {
    #[arg(long)]
    graph: String,
    #[command(flatten)]
    decomp: DecompArgs,
    /// Orientation file (`a u v` lines); low-to-high ids when omitted.
    #[arg(long)]
    orientation: Option<String>,
    #[arg(long)]
    k: u32,
    /// Comma-separated residues, one per vertex.
    #[arg(long, allow_hyphen_values = true)]
    w: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// κ of the doubled orientation equals the sum of squared κ over all w.
    #[value(alias = "lemma6")]
    Squares,
    /// Mean-square and mean-absolute character-sum relations.
    #[value(alias = "lemma78")]
    Bounds,
    /// Character sum against exact κ.
    #[value(alias = "eq1")]
    Charsum,
    Oracle,
    Triangles,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Number of disjoint triangles for the triangles suite.
    #[arg(long, default_value_t = 2)]
    t: usize,
    /// Extra instance to include.
    #[arg(long)]
    graph: Option<String>,
    /// Modulus for the extra instance (built-in families use 2 and 3).
    #[arg(long, default_value_t = 3)]
    k: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random instances for the oracle suite.
    #[arg(long, default_value_t = 50)]
    count: usize,
    /// Largest vertex count for random oracle instances.
    #[arg(long, default_value_t = 7)]
    max_n: usize,
    /// Largest arc count for brute-force enumeration.
    #[arg(long, default_value_t = 25)]
    max_arcs: usize,
    /// Largest k^n for character sums and exhaustive w loops.
    #[arg(long, default_value_t = 1_000_000)]
    max_charsum: u128,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, conflicts_with = "family")]
    graph: Option<String>,
    /// Built-in family: triangles:T, path:N, cycle:N, complete:N, empty:N, grid:RxC.
    #[arg(long)]
    family: Option<String>,
    #[command(flatten)]
    decomp: DecompArgs,
    #[arg(long)]
    k: u32,
    /// κ-DP runs per sampling scheme.
    #[arg(long, default_value_t = 16)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Decide(a) => commands::decide(&a),
        Command::Color(a) => commands::color(&a),
        Command::Kappa(a) => commands::kappa(&a),
        Command::Check(a) => commands::check(&a),
        Command::Bench(a) => commands::bench(&a),
    };
    match result {
        Ok(out) => {
            let json = serde_json::to_string_pretty(&out.report).expect("report serializes");
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout().lock(), "{json}");
            eprintln!("{}", out.summary);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
