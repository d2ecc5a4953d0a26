//! Exact Young scores.

use std::collections::BTreeMap;

use crate::budget::Budget;
use crate::error::Result;
use crate::ranking::{Alternative, Profile};
use crate::rules::dodgson::check_rule_input;

/// Size of the largest sub-multiset of `p` in which `a` is the strict-majority
/// Condorcet winner, or 0 when no nonempty sub-multiset works.
///
/// Voters only matter through the sign vector "does this voter put `a` above
/// `b`?" over rivals `b`, so the search runs over how many voters of each sign
/// type to keep.
pub fn young_score_exact(p: &Profile, a: Alternative, budget: &Budget) -> Result<u64> {
    check_rule_input(p, a)?;
    budget.check("young voters", p.n() as u128, budget.young_max_n as u128)?;

    let rivals: Vec<Alternative> = (0..p.m()).filter(|&b| b != a).collect();
    let mut types: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    for r in p.rankings() {
        let signs = rivals.iter().map(|&b| if r.prefers(a, b) { 1 } else { -1 }).collect();
        *types.entry(signs).or_default() += 1;
    }
    // Most favourable types first so good solutions appear early.
    let mut types: Vec<(Vec<i64>, u64)> = types.into_iter().collect();
    types.sort_by_key(|(s, _)| -s.iter().sum::<i64>());

    let mut suffix_count = vec![0u64; types.len() + 1];
    let mut suffix_gain = vec![vec![0i64; rivals.len()]; types.len() + 1];
    for t in (0..types.len()).rev() {
        suffix_count[t] = suffix_count[t + 1] + types[t].1;
        suffix_gain[t] = suffix_gain[t + 1].clone();
        for (g, &s) in suffix_gain[t].iter_mut().zip(&types[t].0) {
            if s > 0 {
                *g += types[t].1 as i64;
            }
        }
    }

    let mut search = YoungSearch {
        types: &types,
        suffix_count: &suffix_count,
        suffix_gain: &suffix_gain,
        best: 0,
        visited: 0,
        budget,
    };
    let mut margins = vec![0i64; rivals.len()];
    search.run(0, 0, &mut margins)?;
    Ok(search.best)
}

struct YoungSearch<'a> {
    types: &'a [(Vec<i64>, u64)],
    suffix_count: &'a [u64],
    suffix_gain: &'a [Vec<i64>],
    best: u64,
    visited: u64,
    budget: &'a Budget,
}

impl YoungSearch<'_> {
    fn run(&mut self, t: usize, size: u64, margins: &mut [i64]) -> Result<()> {
        self.visited += 1;
        self.budget.check_states("young search nodes", self.visited)?;
        if size + self.suffix_count[t] <= self.best {
            return Ok(());
        }
        if margins.iter().zip(&self.suffix_gain[t]).any(|(&mg, &g)| mg + g <= 0) {
            return Ok(());
        }
        if t == self.types.len() {
            // Every margin is positive here, so the kept voters certify `a`.
            self.best = size;
            return Ok(());
        }
        let (signs, count) = &self.types[t];
        for x in (0..=*count).rev() {
            for (mg, &s) in margins.iter_mut().zip(signs) {
                *mg += s * x as i64;
            }
            let r = self.run(t + 1, size + x, margins);
            for (mg, &s) in margins.iter_mut().zip(signs) {
                *mg -= s * x as i64;
            }
            r?;
        }
        Ok(())
    }
}
