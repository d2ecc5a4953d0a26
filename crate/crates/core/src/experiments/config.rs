//! Experiment configuration as read from JSON.

use std::path::PathBuf;

use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::models::ModelSpec;
use crate::rational::{self, Rational};
use crate::reductions::X3CInstance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Claim {
    /// Certified rate of the greedy Dodgson algorithm.
    Theorem4,
    /// Tail probabilities of the two pairwise count events.
    Claim1,
    /// Top-slice preservation of padded reduction profiles.
    Claim2,
    /// One-sided error of the randomized X3C algorithm.
    Algorithm1,
}

impl Claim {
    pub fn name(self) -> &'static str {
        match self {
            Claim::Theorem4 => "theorem4",
            Claim::Claim1 => "claim1",
            Claim::Claim2 => "claim2",
            Claim::Algorithm1 => "algorithm1",
        }
    }

    fn is_semirandom(self) -> bool {
        matches!(self, Claim::Theorem4 | Claim::Claim1)
    }
}

/// How agent parameters are chosen in the semi-random runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Adversary {
    /// Every agent shares the identity ranking; the queried alternative is
    /// its bottom.
    #[default]
    SharedBottom,
    /// Fresh uniformly random parameters for every agent in every trial.
    Random,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeciderKind {
    #[default]
    Exact,
    Greedy,
}

fn default_padding() -> usize {
    2
}

/// One experiment. `m`, `n` and an α-IC `model` are required for `theorem4`
/// and `claim1`; the reduction claims take their sizes from `instances`
/// (a built-in sweep when absent) plus `padding` dummy alternatives. Without
/// a `model` the reduction claims use α-IC with α = 1/(2·m1·n) per instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub claim: Claim,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelSpec>,
    pub trials: u64,
    pub seed: u64,
    #[serde(default)]
    pub adversary: Adversary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instances: Option<Vec<X3CInstance>>,
    #[serde(default = "default_padding")]
    pub padding: usize,
    #[serde(default)]
    pub decider: DeciderKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.claim.is_semirandom() {
            self.semirandom_setup()?;
            if self.instances.is_some() {
                return Err(Error::InvalidConfig(format!("{} takes no instances", self.claim.name())));
            }
        } else {
            if self.m.is_some() || self.n.is_some() {
                return Err(Error::InvalidConfig(format!(
                    "{} takes m and n from the instances; use padding",
                    self.claim.name()
                )));
            }
            if self.instances.as_ref().is_some_and(|v| v.is_empty()) {
                return Err(Error::InvalidConfig("instances must not be empty".into()));
            }
        }
        Ok(())
    }

    /// `(m, n, α)` for the semi-random claims, checking α ≥ 1 − 1/m.
    pub(crate) fn semirandom_setup(&self) -> Result<(usize, usize, Rational)> {
        let name = self.claim.name();
        let m = self.m.ok_or_else(|| Error::InvalidConfig(format!("{name} needs m")))?;
        let n = self.n.ok_or_else(|| Error::InvalidConfig(format!("{name} needs n")))?;
        if m < 3 {
            return Err(Error::InvalidConfig(format!("m = {m} is below 3")));
        }
        if n == 0 {
            return Err(Error::InvalidConfig("n must be at least 1".into()));
        }
        let alpha = match &self.model {
            Some(ModelSpec::AlphaIc { alpha }) => alpha.clone(),
            _ => return Err(Error::InvalidConfig(format!("{name} needs an alpha_ic model"))),
        };
        let floor = Rational::one() - Rational::new(1.into(), (m as i64).into());
        if alpha < floor || alpha > Rational::one() {
            return Err(Error::InvalidConfig(format!(
                "invalid regime: alpha = {} outside [1 - 1/m, 1] = [{}, 1]",
                rational::format(&alpha),
                rational::format(&floor)
            )));
        }
        Ok((m, n, alpha))
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        Sha256::digest(json.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Independent stream for one trial; identical across thread counts.
pub(crate) fn trial_rng(seed: u64, instance: usize, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((instance as u64) << 40 | trial);
    rng
}
