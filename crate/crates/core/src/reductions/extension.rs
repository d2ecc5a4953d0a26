//! Extension points for reductions whose concrete constructions live
//! elsewhere: X3C → Young score and X3C → committee scores.
//!
//! Only the contracts are fixed here. A supplied construction is checked
//! against the brute-force X3C oracle and against bottom padding.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ranking::{Alternative, Profile};
use crate::reductions::x3c::{x3c_bruteforce, X3CInstance};
use crate::rules::{committee_decision, committee_score, young_score_exact, Aggregator, CommitteeRule, Dpsf};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YoungReductionOutput {
    pub profile: Profile,
    pub critical: Alternative,
    /// The instance is YES iff the Young score of `critical` is at least this.
    pub threshold: u64,
}

pub trait YoungConstruction {
    fn build(&self, inst: &X3CInstance) -> Result<YoungReductionOutput>;
}

/// X3C → Young score, using `construction` when one is supplied.
pub fn x3c_to_young(inst: &X3CInstance, construction: Option<&dyn YoungConstruction>) -> Result<YoungReductionOutput> {
    construction
        .ok_or(Error::NotImplemented("no X3C to Young construction supplied"))?
        .build(inst)
}

/// Checks `YES ⟺ young(c) ≥ threshold` and that padding the output by
/// 1..=3 bottom alternatives leaves the score unchanged.
pub fn check_young_contract(inst: &X3CInstance, out: &YoungReductionOutput, budget: &Budget) -> Result<()> {
    let score = young_score_exact(&out.profile, out.critical, budget)?;
    let yes = x3c_bruteforce(inst, budget)?;
    if yes != (score >= out.threshold) {
        return Err(Error::Construction(format!(
            "Young score {score} of the critical alternative disagrees with the X3C answer {yes}"
        )));
    }
    for extra in 1..=3 {
        let padded = young_score_exact(&out.profile.app_last(extra, None)?, out.critical, budget)?;
        if padded != score {
            return Err(Error::Construction(format!(
                "Young score changes from {score} to {padded} after padding by {extra}"
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommitteeReductionOutput {
    pub profile: Profile,
    pub k: usize,
    /// The instance is YES iff some `k`-committee scores at least this.
    pub threshold: i64,
    pub rule: CommitteeRule,
    pub alpha: Dpsf,
    pub aggregator: Aggregator,
}

pub trait CommitteeConstruction {
    fn build(&self, inst: &X3CInstance) -> Result<CommitteeReductionOutput>;
}

pub fn x3c_to_committee(
    inst: &X3CInstance,
    construction: Option<&dyn CommitteeConstruction>,
) -> Result<CommitteeReductionOutput> {
    construction
        .ok_or(Error::NotImplemented("no X3C to committee construction supplied"))?
        .build(inst)
}

/// Checks the decision equivalence and that every committee over the original
/// alternatives keeps its score after padding by 1..=3 bottom alternatives.
pub fn check_committee_contract(inst: &X3CInstance, out: &CommitteeReductionOutput, budget: &Budget) -> Result<()> {
    let decided = committee_decision(&out.profile, out.k, out.threshold, out.rule, &out.alpha, out.aggregator, budget)?;
    let yes = x3c_bruteforce(inst, budget)?;
    if yes != decided {
        return Err(Error::Construction(format!(
            "committee decision {decided} disagrees with the X3C answer {yes}"
        )));
    }
    let m = out.profile.m();
    for extra in 1..=3 {
        let padded = out.profile.app_last(extra, None)?;
        for members in itertools::Itertools::combinations(0..m, out.k) {
            let c = crate::rules::Committee::new(members)?;
            let before = committee_score(&out.profile, &c, out.rule, &out.alpha, out.aggregator)?;
            let after = committee_score(&padded, &c, out.rule, &out.alpha, out.aggregator)?;
            if before != after {
                return Err(Error::Construction(format!(
                    "committee {:?} scores {before} before and {after} after padding",
                    c.members()
                )));
            }
        }
    }
    Ok(())
}
