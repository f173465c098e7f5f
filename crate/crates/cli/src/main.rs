//! `minorforge`: generate graphs, analyze them, build dense minors, and run
//! the Monte Carlo suites and the density optimizer.

mod commands;
mod error;
mod record;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use minorforge::pipeline::{LambdaPolicy, Mode};

use crate::record::{emit, Format};

#[derive(Debug, Parser)]
#[command(name = "minorforge", version, about)]
struct Cli {
    /// Base seed; every trial draws from its own stream of it.
    #[arg(long, global = true, env = "MINORFORGE_SEED", default_value_t = 0)]
    seed: u64,
    /// Number of trials (suite-specific default when omitted).
    #[arg(long, global = true)]
    trials: Option<u64>,
    /// `n23`, `clamped`, or a positive rational such as `27` or `53/2`.
    #[arg(long, global = true, default_value = "n23")]
    lambda: LambdaPolicy,
    #[arg(long, global = true, default_value = "strict")]
    mode: Mode,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for trials; 0 picks automatically, 1 is sequential.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Node budget of the maximum clique search; 0 means unbounded.
    #[arg(long, global = true, default_value_t = minorforge::pipeline::DEFAULT_CLIQUE_BUDGET)]
    clique_budget: u64,
    /// Add wall-clock time to the output (breaks byte-for-byte replay).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Tfp,
    C5blowup,
    TwoClique,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum, conflicts_with = "named", required_unless_present = "named")]
    family: Option<Family>,
    /// Vertex count for `tfp`.
    #[arg(long)]
    n: Option<usize>,
    /// Blow-up factor for `c5blowup`.
    #[arg(long)]
    t: Option<usize>,
    /// Clique sizes for `two-clique`.
    #[arg(long)]
    left: Option<usize>,
    #[arg(long)]
    right: Option<usize>,
    /// A named graph such as `five_wheel`, `petersen`, `k6`.
    #[arg(long)]
    named: Option<String>,
    /// Write the graph here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Graph file.
    input: PathBuf,
}

#[derive(Debug, Args)]
struct BuildArgs {
    input: PathBuf,
    /// Directory for `h.graph`, `branch.map` and `run.jsonl` of trial 0.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Pairings drawn before the sampler gives up.
    #[arg(long, default_value_t = minorforge::pipeline::DEFAULT_REJECTION_TRIES)]
    max_tries: u64,
}

#[derive(Debug, Args)]
struct McArgs {
    #[arg(long)]
    suite: String,
    /// Ground set size for the pairing suites.
    #[arg(long)]
    x: Option<usize>,
    /// Graph file for `expectation-bound`.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GammaArgs {
    #[arg(long, default_value_t = minorforge::bounds::DEFAULT_GAMMA_TOLERANCE)]
    tolerance: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a generated graph.
    Gen(GenArgs),
    /// Structural report for a graph file.
    Analyze(InputArgs),
    /// Build minors on half the vertices and certify their missing edges.
    BuildMinor(BuildArgs),
    /// Run a Monte Carlo suite.
    Mc(McArgs),
    /// Maximize the asymptotic missing-edge fraction.
    Gamma(GammaArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match commands::run(&cli) {
        Ok(mut records) => {
            if cli.timing {
                if let Some(last) = records.last_mut() {
                    last.set("wall_ms", start.elapsed().as_secs_f64() * 1e3);
                }
            }
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            if emit(&records, cli.format, &mut lock).and_then(|_| lock.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
