//! Chamberlin-Courant and Monroe committee scores under a decreasing
//! positional scoring function.

use std::collections::BTreeSet;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ranking::{Alternative, Profile};
use crate::rules::flow::MinCostFlow;

/// Decreasing positional scoring function: satisfaction of a voter assigned
/// to its `i`-th ranked alternative (1-based). Scores never depend on `m`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dpsf {
    /// `α(i) = −i`.
    #[default]
    NegatedPosition,
    /// `α(i) = table[i−1]`, strictly decreasing.
    Table(Vec<i64>),
}

impl Dpsf {
    pub fn table(scores: Vec<i64>) -> Result<Self> {
        if scores.is_empty() {
            return Err(Error::InvalidConfig("scoring table is empty".into()));
        }
        if scores.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidConfig("scoring table must be strictly decreasing".into()));
        }
        Ok(Dpsf::Table(scores))
    }

    pub fn score(&self, position: usize) -> Result<i64> {
        match self {
            Dpsf::NegatedPosition => Ok(-(position as i64)),
            Dpsf::Table(t) => t
                .get(position.wrapping_sub(1))
                .copied()
                .ok_or_else(|| Error::out_of_range("scoring position", position, format!("1..={}", t.len()))),
        }
    }

    fn check_covers(&self, m: usize) -> Result<()> {
        self.score(m).map(|_| ())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregator {
    Sum,
    Min,
}

impl FromStr for Aggregator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(Aggregator::Sum),
            "min" => Ok(Aggregator::Min),
            _ => Err(Error::InvalidConfig(format!("unknown aggregator {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CommitteeRule {
    ChamberlinCourant,
    Monroe,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Alternative>", into = "Vec<Alternative>")]
pub struct Committee(Vec<Alternative>);

impl Committee {
    /// Sorts the members; rejects empty committees and repeated members.
    pub fn new(members: Vec<Alternative>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidConfig("committee is empty".into()));
        }
        let set: BTreeSet<_> = members.iter().copied().collect();
        if set.len() != members.len() {
            return Err(Error::InvalidConfig("committee members repeat".into()));
        }
        Ok(Committee(set.into_iter().collect()))
    }

    pub fn members(&self) -> &[Alternative] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    fn check(&self, p: &Profile) -> Result<()> {
        self.0.iter().try_for_each(|&c| p.check_alternative(c))
    }
}

impl TryFrom<Vec<Alternative>> for Committee {
    type Error = Error;

    fn try_from(v: Vec<Alternative>) -> Result<Self> {
        Committee::new(v)
    }
}

impl From<Committee> for Vec<Alternative> {
    fn from(c: Committee) -> Self {
        c.0
    }
}

/// `sat[i][j]`: satisfaction of voter `i` with the `j`-th committee member.
fn satisfaction(p: &Profile, c: &Committee, alpha: &Dpsf) -> Result<Vec<Vec<i64>>> {
    c.check(p)?;
    alpha.check_covers(p.m())?;
    p.rankings()
        .iter()
        .map(|r| c.members().iter().map(|&x| alpha.score(r.rank_of(x) + 1)).collect())
        .collect()
}

/// Each voter is represented by its favourite committee member.
pub fn cc_score(p: &Profile, c: &Committee, alpha: &Dpsf, aggregator: Aggregator) -> Result<i64> {
    let best = satisfaction(p, c, alpha)?
        .into_iter()
        .map(|row| row.into_iter().max().expect("committee is nonempty"));
    Ok(match aggregator {
        Aggregator::Sum => best.sum(),
        Aggregator::Min => best.min().expect("profile is nonempty"),
    })
}

/// Best assignment in which every member represents between `⌊n/k⌋` and
/// `⌈n/k⌉` voters.
pub fn monroe_score(p: &Profile, c: &Committee, alpha: &Dpsf, aggregator: Aggregator) -> Result<i64> {
    let sat = satisfaction(p, c, alpha)?;
    match aggregator {
        Aggregator::Sum => {
            let big = sat.iter().flatten().map(|s| s.abs()).max().unwrap_or(0) * p.n() as i64 * 2 + 1;
            let (_, cost) =
                monroe_flow(&sat, c.k(), Some(big), |_| true).expect("Monroe capacities are always satisfiable");
            let lo = (p.n() / c.k()) as i64;
            Ok(-(cost + big * lo * c.k() as i64))
        }
        Aggregator::Min => {
            let mut levels: Vec<i64> = sat.iter().flatten().copied().collect();
            levels.sort_unstable();
            levels.dedup();
            // Largest level such that an assignment using only pairs at or above it exists.
            let (mut lo, mut hi) = (0, levels.len() - 1);
            while lo < hi {
                let mid = (lo + hi + 1) / 2;
                if monroe_flow(&sat, c.k(), None, |s| s >= levels[mid]).is_some() {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            Ok(levels[lo])
        }
    }
}

/// Capacity-respecting assignment over the allowed pairs, maximizing total
/// satisfaction when `big` is given (otherwise any feasible one). Floor
/// capacities are enforced by a `−big` bonus per unit; returns `None` when no
/// assignment saturates them. The returned cost includes the bonus.
fn monroe_flow(sat: &[Vec<i64>], k: usize, big: Option<i64>, allowed: impl Fn(i64) -> bool) -> Option<(i64, i64)> {
    let n = sat.len();
    let (lo, hi) = ((n / k) as i64, n.div_ceil(k) as i64);
    let (source, sink) = (n + k, n + k + 1);
    let mut f = MinCostFlow::new(n + k + 2);
    for (i, row) in sat.iter().enumerate() {
        f.add_arc(source, i, 1, 0);
        for (j, &s) in row.iter().enumerate() {
            if allowed(s) {
                f.add_arc(i, n + j, 1, if big.is_some() { -s } else { 0 });
            }
        }
    }
    let floors: Vec<usize> = (0..k).map(|j| f.add_arc(n + j, sink, lo, -big.unwrap_or(1))).collect();
    for j in 0..k {
        f.add_arc(n + j, sink, hi - lo, 0);
    }
    let (flow, cost) = f.run(source, sink, n as i64);
    let saturated = floors.iter().all(|&a| f.flow_on(a) == lo);
    (flow == n as i64 && saturated).then_some((flow, cost))
}

pub fn committee_score(
    p: &Profile,
    c: &Committee,
    rule: CommitteeRule,
    alpha: &Dpsf,
    aggregator: Aggregator,
) -> Result<i64> {
    match rule {
        CommitteeRule::ChamberlinCourant => cc_score(p, c, alpha, aggregator),
        CommitteeRule::Monroe => monroe_score(p, c, alpha, aggregator),
    }
}

/// Best committee of size `k` (first in lexicographic order among ties) and
/// its score, by enumerating all `C(m, k)` committees.
pub fn best_committee(
    p: &Profile,
    k: usize,
    rule: CommitteeRule,
    alpha: &Dpsf,
    aggregator: Aggregator,
    budget: &Budget,
) -> Result<(Committee, i64)> {
    let m = p.m();
    if k == 0 || k > m {
        return Err(Error::out_of_range("committee size", k, format!("1..={m}")));
    }
    let count = (0..k).fold(1u128, |acc, i| acc * (m - i) as u128 / (i as u128 + 1));
    budget.check("committees", count, budget.max_states as u128)?;
    let mut best: Option<(Committee, i64)> = None;
    for members in (0..m).combinations(k) {
        let c = Committee::new(members)?;
        let s = committee_score(p, &c, rule, alpha, aggregator)?;
        if best.as_ref().map_or(true, |(_, b)| s > *b) {
            best = Some((c, s));
        }
    }
    Ok(best.expect("at least one committee"))
}

/// Whether some `k`-committee reaches score at least `t`.
pub fn committee_decision(
    p: &Profile,
    k: usize,
    t: i64,
    rule: CommitteeRule,
    alpha: &Dpsf,
    aggregator: Aggregator,
    budget: &Budget,
) -> Result<bool> {
    Ok(best_committee(p, k, rule, alpha, aggregator, budget)?.1 >= t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{seq::SliceRandom, Rng, SeedableRng};

    fn profile(orders: &[&[usize]]) -> Profile {
        Profile::from_orders(orders.iter().map(|o| o.to_vec())).unwrap()
    }

    fn random_profile(rng: &mut impl Rng, m: usize, n: usize) -> Profile {
        Profile::from_orders((0..n).map(|_| {
            let mut o: Vec<usize> = (0..m).collect();
            o.shuffle(rng);
            o
        }))
        .unwrap()
    }

    /// Exhaustive oracle over all `k^n` assignments, optionally with Monroe capacities.
    fn brute(p: &Profile, c: &Committee, alpha: &Dpsf, agg: Aggregator, monroe: bool) -> i64 {
        let sat = satisfaction(p, c, alpha).unwrap();
        let (n, k) = (p.n(), c.k());
        let mut best = i64::MIN;
        for assign in (0..n).map(|_| 0..k).multi_cartesian_product() {
            if monroe {
                let mut load = vec![0usize; k];
                assign.iter().for_each(|&j| load[j] += 1);
                if load.iter().any(|&l| l < n / k || l > n.div_ceil(k)) {
                    continue;
                }
            }
            let vals = assign.iter().enumerate().map(|(i, &j)| sat[i][j]);
            let v = match agg {
                Aggregator::Sum => vals.sum(),
                Aggregator::Min => vals.min().unwrap(),
            };
            best = best.max(v);
        }
        best
    }

    #[test]
    fn cc_examples() {
        let p = profile(&[&[0, 1, 2], &[2, 1, 0], &[1, 0, 2]]);
        let alpha = Dpsf::default();
        let all = Committee::new(vec![0, 1, 2]).unwrap();
        assert_eq!(cc_score(&p, &all, &alpha, Aggregator::Sum).unwrap(), -3);
        let single = Committee::new(vec![1]).unwrap();
        assert_eq!(cc_score(&p, &single, &alpha, Aggregator::Sum).unwrap(), -2 - 2 - 1);
        assert_eq!(cc_score(&p, &single, &alpha, Aggregator::Min).unwrap(), -2);
    }

    #[test]
    fn monroe_examples() {
        let alpha = Dpsf::default();
        let p = profile(&[&[0, 1, 2], &[2, 1, 0], &[1, 0, 2]]);
        let single = Committee::new(vec![1]).unwrap();
        for agg in [Aggregator::Sum, Aggregator::Min] {
            assert_eq!(
                monroe_score(&p, &single, &alpha, agg).unwrap(),
                cc_score(&p, &single, &alpha, agg).unwrap()
            );
        }
        // Four identical voters, committee = their top two: two get position 1, two get 2.
        let same = profile(&[&[0, 1, 2, 3][..]; 4]);
        let top2 = Committee::new(vec![0, 1]).unwrap();
        assert_eq!(monroe_score(&same, &top2, &alpha, Aggregator::Sum).unwrap(), -6);
        assert_eq!(monroe_score(&same, &top2, &alpha, Aggregator::Min).unwrap(), -2);
    }

    #[test]
    fn floor_capacities_are_enforced() {
        // n = 4, k = 3: each member needs at least one voter even though
        // everyone prefers member 0.
        let p = profile(&[&[0, 1, 2, 3][..]; 4]);
        let c = Committee::new(vec![0, 1, 2]).unwrap();
        let alpha = Dpsf::default();
        assert_eq!(monroe_score(&p, &c, &alpha, Aggregator::Sum).unwrap(), -1 - 1 - 2 - 3);
        assert_eq!(brute(&p, &c, &alpha, Aggregator::Sum, true), -7);
    }

    #[test]
    fn brute_force_agreement() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let tables = [Dpsf::default(), Dpsf::table(vec![10, 4, 3, 0, -5]).unwrap()];
        for _ in 0..150 {
            let m = rng.gen_range(3..=5);
            let n = rng.gen_range(1..=6);
            let p = random_profile(&mut rng, m, n);
            let k = rng.gen_range(1..=3.min(m));
            let mut members: Vec<usize> = (0..m).collect();
            members.shuffle(&mut rng);
            let c = Committee::new(members[..k].to_vec()).unwrap();
            for alpha in &tables {
                for agg in [Aggregator::Sum, Aggregator::Min] {
                    let cc = cc_score(&p, &c, alpha, agg).unwrap();
                    let mon = monroe_score(&p, &c, alpha, agg).unwrap();
                    assert_eq!(cc, brute(&p, &c, alpha, agg, false));
                    assert_eq!(mon, brute(&p, &c, alpha, agg, true));
                    assert!(mon <= cc);
                }
            }
        }
    }

    #[test]
    fn decisions() {
        let p = profile(&[&[0, 1, 2], &[2, 1, 0], &[1, 0, 2]]);
        let alpha = Dpsf::default();
        let b = Budget::default();
        let cc = CommitteeRule::ChamberlinCourant;
        assert!(committee_decision(&p, 1, i64::MIN, cc, &alpha, Aggregator::Sum, &b).unwrap());
        assert!(committee_decision(&p, 3, -3, cc, &alpha, Aggregator::Sum, &b).unwrap());
        assert!(!committee_decision(&p, 3, -2, cc, &alpha, Aggregator::Sum, &b).unwrap());
        let (best, score) = best_committee(&p, 1, cc, &alpha, Aggregator::Sum, &b).unwrap();
        assert_eq!((best.members(), score), (&[1][..], -5));
        assert!(best_committee(&p, 4, cc, &alpha, Aggregator::Sum, &b).is_err());
    }

    #[test]
    fn validation() {
        assert!(Committee::new(vec![]).is_err());
        assert!(Committee::new(vec![1, 1]).is_err());
        assert!(Dpsf::table(vec![3, 3]).is_err());
        let p = profile(&[&[0, 1, 2, 3]]);
        let short = Dpsf::table(vec![2, 1]).unwrap();
        assert!(cc_score(&p, &Committee::new(vec![0]).unwrap(), &short, Aggregator::Sum).is_err());
        assert!(cc_score(&p, &Committee::new(vec![4]).unwrap(), &Dpsf::default(), Aggregator::Sum).is_err());
    }
}
