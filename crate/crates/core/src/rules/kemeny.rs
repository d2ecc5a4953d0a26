//! Exact Kemeny aggregation by dynamic programming over subsets.

use crate::budget::Budget;
use crate::error::Result;
use crate::majority::SupportMatrix;
use crate::ranking::{Alternative, Profile, Ranking};
use crate::rules::dodgson::check_rule_input;

/// `best[S]`: cheapest way to order the alternatives outside `S` below an
/// already placed prefix `S`.
struct KemenyTable {
    m: usize,
    support: SupportMatrix,
    best: Vec<u64>,
}

impl KemenyTable {
    fn build(p: &Profile, budget: &Budget) -> Result<Self> {
        let m = p.m();
        if m < 3 {
            return Err(crate::error::Error::TooFewAlternatives(m));
        }
        budget.check("kemeny alternatives", m as u128, budget.kemeny_max_m as u128)?;
        let support = SupportMatrix::of(p);
        let full = (1usize << m) - 1;
        let mut best = vec![0u64; 1 << m];
        for s in (0..full).rev() {
            best[s] = (0..m)
                .filter(|&x| s >> x & 1 == 0)
                .map(|x| Self::place_cost(m, &support, s, x) + best[s | 1 << x])
                .min()
                .expect("s is not full");
        }
        Ok(KemenyTable { m, support, best })
    }

    /// Disagreements caused by putting `x` directly below prefix `s`: voters
    /// preferring some still-unplaced `y` to `x`.
    fn place_cost(m: usize, support: &SupportMatrix, s: usize, x: Alternative) -> u64 {
        (0..m)
            .filter(|&y| y != x && s >> y & 1 == 0)
            .map(|y| support.count(y, x))
            .sum()
    }

    fn cost(&self, s: usize, x: Alternative) -> u64 {
        Self::place_cost(self.m, &self.support, s, x)
    }

    /// Lexicographically smallest optimal completion of prefix `s`.
    fn complete(&self, mut s: usize, order: &mut Vec<Alternative>) {
        while order.len() < self.m {
            let x = (0..self.m)
                .find(|&x| s >> x & 1 == 0 && self.cost(s, x) + self.best[s | 1 << x] == self.best[s])
                .expect("an optimal choice exists");
            order.push(x);
            s |= 1 << x;
        }
    }

    fn score_with_top(&self, a: Alternative) -> u64 {
        self.cost(0, a) + self.best[1 << a]
    }
}

/// A ranking minimizing total KT distance to `p` (lexicographically smallest
/// among optima) and that distance.
pub fn kemeny_best(p: &Profile, budget: &Budget) -> Result<(Ranking, u64)> {
    let table = KemenyTable::build(p, budget)?;
    let mut order = Vec::with_capacity(p.m());
    table.complete(0, &mut order);
    Ok((Ranking::new(order)?, table.best[0]))
}

/// Minimum total KT distance over rankings that put `a` first.
pub fn kemeny_score_of_alternative(p: &Profile, a: Alternative, budget: &Budget) -> Result<u64> {
    check_rule_input(p, a)?;
    Ok(KemenyTable::build(p, budget)?.score_with_top(a))
}

/// Kemeny scores of every alternative, from one table.
pub fn kemeny_scores(p: &Profile, budget: &Budget) -> Result<Vec<u64>> {
    let table = KemenyTable::build(p, budget)?;
    Ok((0..p.m()).map(|a| table.score_with_top(a)).collect())
}

/// Whether some alternative has Kemeny score at most `t`.
pub fn kemeny_decision(p: &Profile, t: i64, budget: &Budget) -> Result<bool> {
    let min = kemeny_scores(p, budget)?.into_iter().min().expect("m >= 3");
    Ok(t >= 0 && min <= t as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn profile(orders: &[&[usize]]) -> Profile {
        Profile::from_orders(orders.iter().map(|o| o.to_vec())).unwrap()
    }

    fn cycle() -> Profile {
        profile(&[&[0, 1, 2], &[1, 2, 0], &[2, 0, 1]])
    }

    #[test]
    fn unanimous_and_cycle() {
        let b = Budget::default();
        let p = profile(&[&[2, 0, 1][..]; 4]);
        assert_eq!(kemeny_best(&p, &b).unwrap(), (Ranking::new(vec![2, 0, 1]).unwrap(), 0));
        assert_eq!(kemeny_score_of_alternative(&p, 2, &b).unwrap(), 0);

        let (r, score) = kemeny_best(&cycle(), &b).unwrap();
        assert_eq!(score, 4);
        assert_eq!(r, Ranking::identity(3));
        assert_eq!(kemeny_scores(&cycle(), &b).unwrap(), vec![4, 4, 4]);
    }

    #[test]
    fn decision_thresholds() {
        let b = Budget::default();
        assert!(kemeny_decision(&cycle(), 4, &b).unwrap());
        assert!(!kemeny_decision(&cycle(), 3, &b).unwrap());
        assert!(!kemeny_decision(&cycle(), -1, &b).unwrap());
        assert!(kemeny_decision(&cycle(), 3 * 3, &b).unwrap());
    }

    #[test]
    fn brute_force_agreement() {
        use rand::{seq::SliceRandom, Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let m = rng.gen_range(3..=6);
            let n = rng.gen_range(1..8);
            let orders: Vec<Vec<usize>> = (0..n)
                .map(|_| {
                    let mut o: Vec<usize> = (0..m).collect();
                    o.shuffle(&mut rng);
                    o
                })
                .collect();
            let p = Profile::from_orders(orders).unwrap();
            let (brute_r, brute) = (0..m)
                .permutations(m)
                .map(|o| {
                    let r = Ranking::new(o).unwrap();
                    let d = p.kt_distance(&r).unwrap();
                    (r, d)
                })
                .min_by(|x, y| x.1.cmp(&y.1).then_with(|| x.0.order().cmp(y.0.order())))
                .unwrap();
            assert_eq!(kemeny_best(&p, &Budget::default()).unwrap(), (brute_r, brute));
        }
    }

    #[test]
    fn budget_limits_m() {
        let p = Profile::from_orders([(0..17).collect::<Vec<_>>()]).unwrap();
        assert!(kemeny_best(&p, &Budget::default()).unwrap_err().is_budget());
    }
}
