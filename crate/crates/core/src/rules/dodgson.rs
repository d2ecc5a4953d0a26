//! Exact Dodgson scores.
//!
//! The main solver only ever lifts the target alternative: raising `a` by `k`
//! positions in a vote costs `k` swaps and wins that vote against exactly the
//! `k` alternatives it passes. The search runs over per-voter lift amounts,
//! memoized on the vector of still-missing votes against each rival.
//! [`dodgson_score_bfs_oracle`] explores arbitrary adjacent swaps instead and
//! is used to validate the lift-only formulation on tiny profiles.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::majority::{condorcet_winner, SupportMatrix};
use crate::ranking::{Alternative, Profile, Ranking};

pub(crate) fn check_rule_input(p: &Profile, a: Alternative) -> Result<()> {
    if p.m() < 3 {
        return Err(Error::TooFewAlternatives(p.m()));
    }
    p.check_alternative(a)
}

/// Minimum number of adjacent swaps making `a` the Condorcet winner.
pub fn dodgson_score_exact(p: &Profile, a: Alternative, budget: &Budget) -> Result<u64> {
    check_rule_input(p, a)?;
    let support = SupportMatrix::of(p);

    // Rivals that `a` does not yet beat, with the number of votes still needed.
    let rivals: Vec<Alternative> = (0..p.m()).filter(|&b| b != a && support.deficit(a, b) > 0).collect();
    if rivals.is_empty() {
        return Ok(0);
    }
    let mut slot = vec![usize::MAX; p.m()];
    for (i, &b) in rivals.iter().enumerate() {
        slot[b] = i;
    }
    let need: Vec<u32> = rivals.iter().map(|&b| support.deficit(a, b) as u32).collect();

    // Residual vectors are packed mixed-radix into a u64.
    let mut radix = Vec::with_capacity(need.len());
    let mut space: u128 = 1;
    for &d in &need {
        radix.push(space as u64);
        space *= d as u128 + 1;
    }
    budget.check("dodgson residual space", space, u64::MAX as u128)?;

    // For each voter, the useful lift amounts and the rivals passed by each.
    let voters: Vec<Vec<(u64, Vec<usize>)>> = p
        .rankings()
        .iter()
        .filter_map(|r| lift_options(r, a, &slot))
        .collect();

    // avail[i][j]: voters from i on that rank rival j above a.
    let mut avail = vec![vec![0u32; need.len()]; voters.len() + 1];
    for i in (0..voters.len()).rev() {
        avail[i] = avail[i + 1].clone();
        if let Some((_, passed)) = voters[i].last() {
            for &j in passed {
                avail[i][j] += 1;
            }
        }
    }

    let mut search = LiftSearch {
        voters: &voters,
        avail: &avail,
        radix: &radix,
        memo: HashMap::new(),
        budget,
    };
    let cost = search.solve(0, need)?;
    debug_assert!(cost < u64::MAX, "lifting a to the top everywhere always works");
    Ok(cost)
}

/// Lift options for one voter: `(cost, rivals passed)` for every lift amount
/// whose last passed alternative is a rival still short of votes. Returns
/// `None` when no lift can help.
fn lift_options(r: &Ranking, a: Alternative, slot: &[usize]) -> Option<Vec<(u64, Vec<usize>)>> {
    let pos = r.rank_of(a);
    let mut options = Vec::new();
    let mut passed = Vec::new();
    for k in 1..=pos {
        let b = r.order()[pos - k];
        if slot[b] != usize::MAX {
            passed.push(slot[b]);
            options.push((k as u64, passed.clone()));
        }
    }
    (!options.is_empty()).then_some(options)
}

struct LiftSearch<'a> {
    voters: &'a [Vec<(u64, Vec<usize>)>],
    avail: &'a [Vec<u32>],
    radix: &'a [u64],
    memo: HashMap<(usize, u64), u64>,
    budget: &'a Budget,
}

impl LiftSearch<'_> {
    fn encode(&self, residual: &[u32]) -> u64 {
        residual.iter().zip(self.radix).map(|(&r, &x)| r as u64 * x).sum()
    }

    fn solve(&mut self, voter: usize, residual: Vec<u32>) -> Result<u64> {
        if residual.iter().all(|&r| r == 0) {
            return Ok(0);
        }
        if residual.iter().zip(&self.avail[voter]).any(|(r, av)| r > av) {
            return Ok(u64::MAX);
        }
        let key = (voter, self.encode(&residual));
        if let Some(&c) = self.memo.get(&key) {
            return Ok(c);
        }
        self.budget.check_states("dodgson lift search states", self.memo.len() as u64 + 1)?;

        let mut best = self.solve(voter + 1, residual.clone())?;
        for (cost, passed) in &self.voters[voter] {
            if *cost >= best {
                break;
            }
            let mut next = residual.clone();
            for &j in passed {
                next[j] = next[j].saturating_sub(1);
            }
            let rest = self.solve(voter + 1, next)?;
            if rest != u64::MAX {
                best = best.min(cost + rest);
            }
        }
        self.memo.insert(key, best);
        Ok(best)
    }
}

/// Shortest sequence of arbitrary adjacent swaps (any voter, any pair) after
/// which `a` is the Condorcet winner. Tiny instances only: `m ≤ 4`, `n ≤ 3`.
pub fn dodgson_score_bfs_oracle(p: &Profile, a: Alternative, budget: &Budget) -> Result<u64> {
    check_rule_input(p, a)?;
    budget.check("bfs oracle alternatives", p.m() as u128, 4)?;
    budget.check("bfs oracle voters", p.n() as u128, 3)?;

    let m = p.m();
    let start: Vec<u8> = p
        .rankings()
        .iter()
        .flat_map(|r| r.order().iter().map(|&x| x as u8))
        .collect();
    let is_goal = |state: &[u8]| {
        let prof = Profile::from_orders(state.chunks(m).map(|c| c.iter().map(|&x| x as usize).collect::<Vec<_>>()))
            .expect("swaps preserve permutations");
        condorcet_winner(&prof) == Some(a)
    };

    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0u64)]);
    while let Some((state, dist)) = queue.pop_front() {
        if is_goal(&state) {
            return Ok(dist);
        }
        for voter in 0..p.n() {
            for i in 0..m - 1 {
                let mut next = state.clone();
                next.swap(voter * m + i, voter * m + i + 1);
                if seen.insert(next.clone()) {
                    budget.check_states("bfs oracle states", seen.len() as u64)?;
                    queue.push_back((next, dist + 1));
                }
            }
        }
    }
    unreachable!("a is the Condorcet winner once it tops every vote")
}
