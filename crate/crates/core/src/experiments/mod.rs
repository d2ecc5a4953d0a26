//! Seeded Monte-Carlo checks of the semi-random bounds.
//!
//! Every run is a pure function of its [`ExperimentConfig`]: trial `t` of
//! instance `i` draws from its own ChaCha stream, trials run in parallel and
//! are collected in order, so reports are byte-identical across reruns and
//! thread counts.

mod config;
mod reduction;
mod report;
mod semirandom;
mod stats;

use std::time::Instant;

pub use config::{Adversary, Claim, DeciderKind, ExperimentConfig};
pub use reduction::{run_algorithm1_corp, run_claim2_topk, standard_instances, synthetic_model};
pub use report::{Outcomes, TrialReport};
pub use semirandom::{run_claim1_concentration, run_definitely_rate};
pub use stats::{std_error, Bound, Check, Direction, Frequency, Verdict, SLACK_SE};

use crate::budget::Budget;
use crate::error::Result;

/// Validates `cfg`, runs the selected claim and stamps the wall-clock time.
pub fn run_experiment(cfg: &ExperimentConfig, budget: &Budget) -> Result<TrialReport> {
    cfg.validate()?;
    let start = Instant::now();
    let mut report = match cfg.claim {
        Claim::Theorem4 => run_definitely_rate(cfg)?,
        Claim::Claim1 => run_claim1_concentration(cfg)?,
        Claim::Claim2 => run_claim2_topk(cfg)?,
        Claim::Algorithm1 => run_algorithm1_corp(cfg, budget)?,
    };
    report.wall_clock = start.elapsed();
    Ok(report)
}
