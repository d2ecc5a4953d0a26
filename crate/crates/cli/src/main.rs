//! `votelab`: scoring, sampling, reductions and experiments from the shell.
//!
//! Exit codes: 0 ok, 1 bad input, 2 budget exceeded, 3 construction failed,
//! 4 an experiment verdict failed.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use votelab::rules::Aggregator;

pub const EXIT_INPUT: u8 = 1;
pub const EXIT_BUDGET: u8 = 2;
pub const EXIT_CONSTRUCTION: u8 = 3;
pub const EXIT_VERDICT: u8 = 4;

/// Overrides the default search-state budget when `--budget` is absent.
pub const BUDGET_ENV: &str = "VOTELAB_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "votelab", version, about = "Exact and certified winner determination under semi-random models")]
struct Cli {
    /// Maximum search states for exact solvers (default: $VOTELAB_BUDGET or 5000000).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Print a fixed-width table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Score a profile under one rule.
    Score(ScoreArgs),
    /// Shorthand for `score greedy-dodgson`.
    GreedyDodgson(RuleArgs),
    /// Sample a profile from a preference model and a parameter profile.
    Sample(SampleArgs),
    /// Build reduction artifacts.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Run a Monte-Carlo verification experiment.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Rule {
    Dodgson,
    Young,
    Kemeny,
    Cc,
    Monroe,
    GreedyDodgson,
}

#[derive(Args, Debug)]
struct ScoreArgs {
    rule: Rule,
    #[command(flatten)]
    args: RuleArgs,
}

#[derive(Args, Debug)]
struct RuleArgs {
    /// Profile file (header `m n`, one ranking per line).
    #[arg(long)]
    profile: PathBuf,
    /// Alternative to score; all alternatives when absent.
    #[arg(long)]
    alt: Option<usize>,
    /// Decision threshold: score at most t for Dodgson and Kemeny, at least t for Young and committees.
    #[arg(long, allow_negative_numbers = true)]
    threshold: Option<i64>,
    /// Committee size.
    #[arg(long)]
    k: Option<usize>,
    /// Score this committee (comma-separated) instead of searching.
    #[arg(long, value_delimiter = ',')]
    committee: Option<Vec<usize>>,
    #[arg(long, default_value = "sum", value_parser = parse_aggregator)]
    aggregator: Aggregator,
}

fn parse_aggregator(s: &str) -> Result<Aggregator, String> {
    s.parse().map_err(|e: votelab::Error| e.to_string())
}

#[derive(Args, Debug)]
struct SampleArgs {
    /// Model spec as inline JSON or a path to a JSON file.
    #[arg(long)]
    model: String,
    /// Parameter profile; weighted files need integer weights.
    #[arg(long)]
    parameters: PathBuf,
    /// Random seed; a fresh one is drawn and recorded when absent.
    #[arg(long)]
    seed: Option<u64>,
    /// Output profile; the seed goes to `<out>.seed.json`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand, Debug)]
enum ReduceCommand {
    /// X3C instance to Dodgson profile, with a layout sidecar.
    X3cDodgson {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Profile whose majority graph is twice the given digraph.
    Mcgarvey {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide "feedback arc set of size at most t?" through one Kemeny query.
    EfasCheck {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        threshold: i64,
        /// Also compute the answer by brute force.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides the config's `output`.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<votelab::Error>()) {
        Some(err) if err.is_budget() => EXIT_BUDGET,
        Some(err) if err.is_construction() => EXIT_CONSTRUCTION,
        _ => EXIT_INPUT,
    }
}
