//! Feedback arc sets of Eulerian digraphs through Kemeny scores.
//!
//! A profile whose majority graph is `λ·G` has, for every ranking `R`,
//! `KT(P, R) = |P|/2 · C(m,2) − λ|E|/2 + λ·f(G, R)` where `f` counts backward
//! arcs. Deciding a Kemeny threshold on such a profile therefore decides
//! whether `G` can be made acyclic by deleting `t` arcs.

use itertools::Itertools;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::majority::{weighted_wmg, wmg, Wmg};
use crate::ranking::{Profile, Ranking, WeightedProfile};
use crate::rational::{self, Rational};
use crate::reductions::algorithm1::Answer;
use crate::rules::kemeny_decision;

/// Margin each arc receives in [`mcgarvey_profile`].
pub const MCGARVEY_MULTIPLIER: i64 = 2;

/// A profile whose majority graph is `2·G`: for each arc `u→v` the pair
/// `u ≻ v ≻ rest ascending` and `rest descending ≻ u ≻ v`. An arcless graph
/// gives one ascending/descending pair with all margins zero.
pub fn mcgarvey_profile(g: &Digraph) -> Result<Profile> {
    g.margins()?;
    let m = g.m();
    let mut orders = Vec::new();
    for (u, v) in g.arcs() {
        let rest: Vec<usize> = (0..m).filter(|&x| x != u && x != v).collect();
        let mut up = vec![u, v];
        up.extend(&rest);
        let mut down: Vec<usize> = rest.iter().rev().copied().collect();
        down.extend([u, v]);
        orders.push(up);
        orders.push(down);
    }
    if orders.is_empty() {
        orders.push((0..m).collect());
        orders.push((0..m).rev().collect());
    }
    Profile::from_orders(orders)
}

/// The `λ` with `WMG(p) = λ · margins(g)`; `None` for an arcless graph with a
/// zero majority graph (any `λ` works).
fn proportionality(p: &Wmg<Rational>, g: &Digraph) -> Result<Option<Rational>> {
    let target = g.margins()?.to_rational();
    let lambda = g.arcs().next().map(|(u, v)| p.margin(u, v).clone());
    let scale = lambda.clone().unwrap_or_else(Rational::zero);
    let m = g.m();
    for a in 0..m {
        for b in 0..m {
            if *p.margin(a, b) != target.margin(a, b) * &scale {
                return Err(Error::InvalidGraph(format!(
                    "profile majority graph is not proportional to the graph at ({a}, {b})"
                )));
            }
        }
    }
    Ok(lambda)
}

/// Closed-form `KT(p, r)` for a profile whose majority graph is proportional to `g`.
pub fn kt_formula(p: &WeightedProfile, g: &Digraph, r: &Ranking) -> Result<Rational> {
    crate::ranking::check_same_m(p.m(), g.m())?;
    let lambda = proportionality(&weighted_wmg(p), g)?.unwrap_or_else(Rational::zero);
    let m = g.m() as i64;
    let pairs = rational::int(m * (m - 1) / 2);
    let arcs = rational::int(g.arc_count() as i64);
    let f = rational::int(g.backward_arcs(r)? as i64);
    Ok(p.total_weight() / rational::int(2) * pairs - &lambda * arcs / rational::int(2) + lambda * f)
}

/// Minimum number of backward arcs over all `m!` orders.
pub fn min_feedback_arcs(g: &Digraph, budget: &Budget) -> Result<usize> {
    budget.check("enumerated alternatives", g.m() as u128, budget.enumeration_max_m as u128)?;
    Ok((0..g.m())
        .permutations(g.m())
        .map(|o| g.backward_arcs(&Ranking::new(o).expect("permutation")).expect("same m"))
        .min()
        .unwrap_or(0))
}

/// Can `g` be made acyclic by deleting at most `t` arcs?
pub fn efas_bruteforce(g: &Digraph, t: i64, budget: &Budget) -> Result<bool> {
    Ok(t >= 0 && min_feedback_arcs(g, budget)? as i64 <= t)
}

/// Thresholds of the Kemeny query: the decider is asked about
/// `⌊base + t·scale + slack⌋`, after a guard that answers Yes whenever
/// `‖WMG(P′) − scale·G‖₁ > guard_radius`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EfasThresholds {
    #[serde(with = "rational::serde_str")]
    pub base: Rational,
    #[serde(with = "rational::serde_str")]
    pub scale: Rational,
    #[serde(with = "rational::serde_str")]
    pub slack: Rational,
    #[serde(with = "rational::serde_str")]
    pub guard_radius: Rational,
}

impl EfasThresholds {
    /// Exact thresholds for a profile whose majority graph is proportional to `g`:
    /// `base = |P|/2·C(m,2) − λ|E|/2`, `scale = λ`, no slack, zero guard radius.
    pub fn exact(p: &Profile, g: &Digraph) -> Result<Self> {
        crate::ranking::check_same_m(p.m(), g.m())?;
        let lambda = proportionality(&wmg(p).to_rational(), g)?.unwrap_or_else(Rational::zero);
        let m = g.m() as i64;
        let base = rational::int(p.n() as i64 * m * (m - 1) / 2) / rational::int(2)
            - &lambda * rational::int(g.arc_count() as i64) / rational::int(2);
        Ok(EfasThresholds {
            base,
            scale: lambda,
            slack: Rational::zero(),
            guard_radius: Rational::zero(),
        })
    }

    pub fn kemeny_threshold(&self, t: i64) -> Rational {
        (&self.base + rational::int(t) * &self.scale + &self.slack).floor()
    }
}

/// Kemeny decision oracle: "is some alternative's Kemeny score at most `t`?".
pub type KemenyDecider<'a> = dyn Fn(&Profile, i64) -> Result<bool> + 'a;

/// Builds the profile `P′` handed to the Kemeny decider.
pub type ProfileBuilder<'a> = dyn Fn(&Digraph) -> Result<Profile> + 'a;

pub fn exact_kemeny_decider(budget: Budget) -> impl Fn(&Profile, i64) -> Result<bool> {
    move |p, t| kemeny_decision(p, t, &budget)
}

/// Decides EFAS through one Kemeny query.
pub fn algorithm2_efas(
    g: &Digraph,
    t: i64,
    decider: &KemenyDecider<'_>,
    builder: &ProfileBuilder<'_>,
    thresholds: &EfasThresholds,
    strict: bool,
) -> Result<Answer> {
    if strict && !g.is_eulerian() {
        return Err(Error::InvalidGraph("graph is not Eulerian".into()));
    }
    let p = builder(g)?;
    crate::ranking::check_same_m(g.m(), p.m())?;
    let target = g.margins()?.to_rational().map(|v| v * &thresholds.scale);
    // Each unordered pair counts once.
    let deviation = wmg(&p).to_rational().l1_distance(&target)? / rational::int(2);
    if deviation > thresholds.guard_radius {
        return Ok(Answer::Yes);
    }
    let threshold = thresholds.kemeny_threshold(t);
    if threshold.is_negative() {
        return Ok(Answer::No);
    }
    let limit = threshold
        .to_integer()
        .try_into()
        .map_err(|_| Error::out_of_range("kemeny threshold", i64::MAX, "fits in 64 bits"))?;
    Ok(if decider(&p, limit)? { Answer::Yes } else { Answer::No })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn two_triangles() -> Digraph {
        // 0→1→2→0 and 0→3→4→0 share vertex 0
        Digraph::new(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap()
    }

    fn run_exact(g: &Digraph, t: i64) -> Answer {
        let p = mcgarvey_profile(g).unwrap();
        let th = EfasThresholds::exact(&p, g).unwrap();
        let decider = exact_kemeny_decider(Budget::default());
        algorithm2_efas(g, t, &decider, &|g: &Digraph| mcgarvey_profile(g), &th, true).unwrap()
    }

    #[test]
    fn mcgarvey_realizes_graph() {
        let empty = mcgarvey_profile(&Digraph::empty(4)).unwrap();
        assert_eq!(wmg(&empty), Wmg::zeros(4));
        let arc = Digraph::new(3, [(0, 1)]).unwrap();
        let w = wmg(&mcgarvey_profile(&arc).unwrap());
        assert_eq!((*w.margin(0, 1), *w.margin(0, 2), *w.margin(1, 2)), (2, 0, 0));
        let cyc = Digraph::cycle(3);
        assert_eq!(wmg(&mcgarvey_profile(&cyc).unwrap()), cyc.margins().unwrap().map(|v| v * 2));
        assert!(mcgarvey_profile(&Digraph::new(3, [(0, 1), (1, 0)]).unwrap()).is_err());
    }

    #[test]
    fn formula_matches_direct_distance() {
        let empty = Digraph::empty(4);
        let p = WeightedProfile::from(&mcgarvey_profile(&empty).unwrap());
        assert_eq!(kt_formula(&p, &empty, &Ranking::identity(4)).unwrap(), int(2) / int(2) * int(6));

        for g in [Digraph::cycle(3), Digraph::new(4, [(0, 1), (1, 2), (0, 3)]).unwrap()] {
            let p = WeightedProfile::from(&mcgarvey_profile(&g).unwrap());
            for o in (0..g.m()).permutations(g.m()) {
                let r = Ranking::new(o).unwrap();
                assert_eq!(kt_formula(&p, &g, &r).unwrap(), p.kt_distance(&r).unwrap());
            }
        }
        // fractional weights: halve every ranking
        let g = Digraph::cycle(3);
        let half = WeightedProfile::new(
            mcgarvey_profile(&g).unwrap().into_rankings().into_iter().map(|r| (r, ratio(1, 2))).collect(),
        )
        .unwrap();
        let r = Ranking::identity(3);
        assert_eq!(kt_formula(&half, &g, &r).unwrap(), half.kt_distance(&r).unwrap());

        let skewed = WeightedProfile::from(&Profile::from_orders([vec![0, 1, 2]]).unwrap());
        assert!(kt_formula(&skewed, &Digraph::cycle(3), &r).is_err());
    }

    #[test]
    fn algorithm2_examples() {
        assert_eq!(run_exact(&Digraph::cycle(3), 1), Answer::Yes);
        assert_eq!(run_exact(&Digraph::cycle(3), 0), Answer::No);
        assert_eq!(run_exact(&two_triangles(), 1), Answer::No);
        assert_eq!(run_exact(&two_triangles(), 2), Answer::Yes);
        let b = Budget::default();
        assert!(!efas_bruteforce(&two_triangles(), 1, &b).unwrap());
        assert!(efas_bruteforce(&two_triangles(), 2, &b).unwrap());
    }

    #[test]
    fn bruteforce_examples() {
        let b = Budget::default();
        let dag = Digraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(efas_bruteforce(&dag, 0, &b).unwrap());
        assert!(!efas_bruteforce(&Digraph::cycle(3), 0, &b).unwrap());
        assert!(efas_bruteforce(&Digraph::cycle(3), 1, &b).unwrap());
        assert!(!efas_bruteforce(&dag, -1, &b).unwrap());
    }

    #[test]
    fn guard_and_strictness() {
        let g = Digraph::cycle(3);
        let decider = |_: &Profile, _: i64| Ok(false);
        let th = EfasThresholds::exact(&mcgarvey_profile(&g).unwrap(), &g).unwrap();
        // A builder returning a profile far from 2·G trips the guard.
        let off = |_: &Digraph| Profile::from_orders(vec![vec![0, 1, 2]; 5]);
        assert_eq!(algorithm2_efas(&g, 0, &decider, &off, &th, true).unwrap(), Answer::Yes);
        let not_euler = Digraph::new(3, [(0, 1)]).unwrap();
        let build = |g: &Digraph| mcgarvey_profile(g);
        assert!(algorithm2_efas(&not_euler, 0, &decider, &build, &th, true).is_err());
        assert_eq!(th.kemeny_threshold(1), int(3) * int(3) - int(3) + int(2));
    }
}
