//! Binomial frequencies and one-sided checks with a 3-standard-error slack.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Slack, in standard errors, granted to every empirical check.
pub const SLACK_SE: f64 = 3.0;

/// `sqrt(p̂(1 − p̂)/T)`.
pub fn std_error(count: u64, trials: u64) -> f64 {
    let p = count as f64 / trials as f64;
    (p * (1.0 - p) / trials as f64).sqrt()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Frequency {
    pub name: String,
    pub count: u64,
    pub trials: u64,
    pub value: f64,
    pub std_error: f64,
}

impl Frequency {
    pub fn new(name: impl Into<String>, count: u64, trials: u64) -> Self {
        assert!(trials > 0 && count <= trials);
        Frequency {
            name: name.into(),
            count,
            trials,
            value: count as f64 / trials as f64,
            std_error: std_error(count, trials),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The bound carries no information (e.g. it is not positive).
    Vacuous,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    AtLeast,
    AtMost,
    Exactly,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub direction: Direction,
    pub observed: f64,
    pub threshold: f64,
    /// Slack actually applied; zero for exact checks.
    pub slack: f64,
    pub verdict: Verdict,
}

impl Check {
    /// `observed ≥ threshold − 3·se`.
    pub fn at_least(name: impl Into<String>, f: &Frequency, threshold: f64) -> Self {
        let slack = SLACK_SE * f.std_error;
        let verdict = pass_if(f.value >= threshold - slack);
        Check { name: name.into(), direction: Direction::AtLeast, observed: f.value, threshold, slack, verdict }
    }

    /// `observed ≤ threshold + 3·se`.
    pub fn at_most(name: impl Into<String>, f: &Frequency, threshold: f64) -> Self {
        let slack = SLACK_SE * f.std_error;
        let verdict = pass_if(f.value <= threshold + slack);
        Check { name: name.into(), direction: Direction::AtMost, observed: f.value, threshold, slack, verdict }
    }

    /// Count equality, no slack.
    pub fn exactly(name: impl Into<String>, f: &Frequency, expected_count: u64) -> Self {
        Check {
            name: name.into(),
            direction: Direction::Exactly,
            observed: f.value,
            threshold: expected_count as f64 / f.trials as f64,
            slack: 0.0,
            verdict: pass_if(f.count == expected_count),
        }
    }

    pub fn vacuous(mut self) -> Self {
        self.verdict = Verdict::Vacuous;
        self
    }
}

fn pass_if(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// A bound formula with its exact inputs and the evaluated value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bound {
    pub name: String,
    pub formula: String,
    /// Exact rational inputs, as canonical strings.
    pub inputs: BTreeMap<String, String>,
    pub value: f64,
}
