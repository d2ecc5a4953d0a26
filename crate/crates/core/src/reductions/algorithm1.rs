//! Padded semi-random parameter profiles and the randomized X3C algorithm
//! built on a Dodgson decider.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::greedy::Decision;
use crate::models::{ModelSpec, ParameterProfile, PreferenceModel};
use crate::ranking::{Alternative, Profile};
use crate::reductions::dodgson::{x3c_to_dodgson, DodgsonReductionOutput};
use crate::reductions::x3c::X3CInstance;
use crate::rules::dodgson_score_exact;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
}

/// Appends `m_total − m1` dummy alternatives below every reduction ranking and
/// uses the results as parameters of `spec` over `m_total` alternatives.
///
/// Partial randomization must keep at least the `m1` reduction alternatives
/// fixed. α-IC is accepted as a model whose per-agent preservation
/// probability is `(1−α) + α·(m_total−m1)!/m_total!`.
pub fn build_padded_parameter_profile(
    out: &DodgsonReductionOutput,
    spec: &ModelSpec,
    m_total: usize,
) -> Result<ParameterProfile> {
    let m1 = out.profile.m();
    if m_total < m1 {
        return Err(Error::out_of_range("m_total", m_total, format!("at least m1 = {m1}")));
    }
    if let ModelSpec::PartialAlt { k } = spec {
        if *k < m1 {
            return Err(Error::out_of_range("K", *k, format!("at least m1 = {m1}")));
        }
    }
    let model = spec.bind(m_total)?;
    let padded = if m_total == m1 {
        out.profile.clone()
    } else {
        out.profile.app_last(m_total - m1, None)?
    };
    ParameterProfile::unit(model, padded.into_rankings())
}

/// Decides "is the Dodgson score of `a` in `p` at most `t`?".
pub type DodgsonDecider<'a> = dyn Fn(&Profile, Alternative, u64) -> Result<Decision> + Sync + 'a;

/// Exact decider backed by [`dodgson_score_exact`].
pub fn exact_dodgson_decider(budget: Budget) -> impl Fn(&Profile, Alternative, u64) -> Result<Decision> + Sync {
    move |p, a, t| {
        let score = dodgson_score_exact(p, a, &budget)?;
        Ok(if score <= t { Decision::Yes } else { Decision::No })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Algorithm1Outcome {
    pub answer: Answer,
    /// Whether the sampled profile kept the reduction profile on top.
    pub top_preserved: bool,
    /// The decider's answer, when it was consulted.
    pub decider: Option<Decision>,
}

/// One instance prepared for repeated runs of the randomized algorithm.
#[derive(Clone, Debug)]
pub struct Algorithm1 {
    reduction: DodgsonReductionOutput,
    parameters: ParameterProfile,
}

impl Algorithm1 {
    pub fn new(inst: &X3CInstance, spec: &ModelSpec, m_total: usize) -> Result<Self> {
        let reduction = x3c_to_dodgson(inst)?;
        let parameters = build_padded_parameter_profile(&reduction, spec, m_total)?;
        Ok(Algorithm1 { reduction, parameters })
    }

    pub fn reduction(&self) -> &DodgsonReductionOutput {
        &self.reduction
    }

    pub fn parameters(&self) -> &ParameterProfile {
        &self.parameters
    }

    pub fn model(&self) -> &PreferenceModel {
        self.parameters.model()
    }

    /// Samples `P′`; answers Yes if its top slice differs from the reduction
    /// profile, otherwise asks the decider about `(P′, c, 4q/3)`. A decider
    /// failure counts as Yes, so No is only ever returned with a certificate.
    pub fn run<R: Rng + ?Sized>(&self, decider: &DodgsonDecider<'_>, rng: &mut R) -> Result<Algorithm1Outcome> {
        let sampled = self.parameters.sample_profile(rng)?;
        if !sampled.top_matches(&self.reduction.profile)? {
            return Ok(Algorithm1Outcome {
                answer: Answer::Yes,
                top_preserved: false,
                decider: None,
            });
        }
        let d = decider(&sampled, self.reduction.critical, self.reduction.threshold)?;
        let answer = match d {
            Decision::No => Answer::No,
            Decision::Yes | Decision::Failure => Answer::Yes,
        };
        Ok(Algorithm1Outcome {
            answer,
            top_preserved: true,
            decider: Some(d),
        })
    }
}

/// Builds, samples and decides once.
pub fn algorithm1_x3c<R: Rng + ?Sized>(
    inst: &X3CInstance,
    decider: &DodgsonDecider<'_>,
    spec: &ModelSpec,
    m_total: usize,
    rng: &mut R,
) -> Result<Algorithm1Outcome> {
    Algorithm1::new(inst, spec, m_total)?.run(decider, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use rand::SeedableRng;

    fn yes() -> X3CInstance {
        X3CInstance::new(6, vec![[0, 1, 2], [2, 3, 4], [3, 4, 5]]).unwrap()
    }

    fn no() -> X3CInstance {
        X3CInstance::new(6, vec![[0, 1, 2], [2, 3, 4], [1, 4, 5]]).unwrap()
    }

    #[test]
    fn padding_validation() {
        let out = x3c_to_dodgson(&yes()).unwrap();
        let m1 = out.profile.m();
        assert!(build_padded_parameter_profile(&out, &ModelSpec::PartialAlt { k: m1 - 1 }, m1 + 3).is_err());
        assert!(build_padded_parameter_profile(&out, &ModelSpec::PartialAlt { k: m1 }, m1 - 1).is_err());
        let pp = build_padded_parameter_profile(&out, &ModelSpec::PartialAlt { k: m1 }, m1 + 3).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let sampled = pp.sample_profile(&mut rng).unwrap();
            assert_eq!(sampled.m(), m1 + 3);
            assert!(sampled.top_matches(&out.profile).unwrap());
        }
    }

    #[test]
    fn deterministic_model_answers_exactly() {
        let decider = exact_dodgson_decider(Budget::default());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for (inst, expected) in [(yes(), Answer::Yes), (no(), Answer::No)] {
            let m1 = 2 * inst.q() + inst.s() + 1;
            let spec = ModelSpec::PartialAlt { k: m1 };
            let out = algorithm1_x3c(&inst, &decider, &spec, m1 + 2, &mut rng).unwrap();
            assert_eq!(out.answer, expected);
            assert!(out.top_preserved);
        }
    }

    #[test]
    fn yes_decider_never_says_no() {
        let always_yes = |_: &Profile, _: Alternative, _: u64| Ok(Decision::Yes);
        let failing = |_: &Profile, _: Alternative, _: u64| Ok(Decision::Failure);
        let spec = ModelSpec::AlphaIc { alpha: ratio(1, 2) };
        let alg = Algorithm1::new(&no(), &spec, 16).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            assert_eq!(alg.run(&always_yes, &mut rng).unwrap().answer, Answer::Yes);
            assert_eq!(alg.run(&failing, &mut rng).unwrap().answer, Answer::Yes);
        }
    }
}
