//! Polynomial-time Dodgson scoring that certifies its own answer when every
//! missing vote can be bought with a single adjacent swap.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::majority::SupportMatrix;
use crate::ranking::{Alternative, Profile};
use crate::rules::check_rule_input;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Certainty {
    Definitely,
    Maybe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyResult {
    /// The exact score when `Definitely`, otherwise a lower bound.
    pub score: u64,
    pub certainty: Certainty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Yes,
    No,
    Failure,
}

/// Voters ranking `b` directly above `a`.
pub fn immediately_above_count(p: &Profile, a: Alternative, b: Alternative) -> Result<u64> {
    p.check_alternative(a)?;
    p.check_alternative(b)?;
    if a == b {
        return Err(Error::SameAlternative(a));
    }
    Ok(adjacency(p, a)[b])
}

/// `counts[b]` = voters with `b` directly above `a`.
fn adjacency(p: &Profile, a: Alternative) -> Vec<u64> {
    let mut counts = vec![0u64; p.m()];
    for r in p.rankings() {
        let pos = r.rank_of(a);
        if pos > 0 {
            counts[r.order()[pos - 1]] += 1;
        }
    }
    counts
}

/// Sum of deficits of `a`, certified exact when for every rival `b` at least
/// `deficit(a, b)` voters rank `b` immediately above `a`: swapping those pairs
/// buys each missing vote with one swap, and no vote can be cheaper.
pub fn greedy_dodgson(p: &Profile, a: Alternative) -> Result<GreedyResult> {
    check_rule_input(p, a)?;
    let support = SupportMatrix::of(p);
    let above = adjacency(p, a);
    let mut score = 0;
    let mut certain = true;
    for b in (0..p.m()).filter(|&b| b != a) {
        let d = support.deficit(a, b);
        score += d;
        certain &= above[b] >= d;
    }
    let certainty = if certain { Certainty::Definitely } else { Certainty::Maybe };
    Ok(GreedyResult { score, certainty })
}

/// Answers "is the Dodgson score of `a` at most `t`?" or declares failure.
/// `Yes` and `No` are always correct.
pub fn semirandom_dodgson_decision(p: &Profile, a: Alternative, t: i64) -> Result<Decision> {
    let g = greedy_dodgson(p, a)?;
    Ok(match g.certainty {
        Certainty::Maybe => Decision::Failure,
        Certainty::Definitely if t >= 0 && g.score <= t as u64 => Decision::Yes,
        Certainty::Definitely => Decision::No,
    })
}
