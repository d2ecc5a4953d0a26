//! X3C → Dodgson score reduction.
//!
//! Alternatives: the critical alternative `c`, two element alternatives
//! `a_i`, `b_i` per ground element, and one subset alternative `s_j` per
//! subset. The profile makes every `a_i` beat `c` by exactly one vote, so
//! `c` can be made the Condorcet winner within `4q/3` swings exactly when the
//! swing rankings of an exact cover are lifted.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::majority::wmg;
use crate::ranking::{Alternative, Profile, Ranking};
use crate::reductions::x3c::X3CInstance;

/// Index map of a reduction profile.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DodgsonLayout {
    pub m: usize,
    pub critical: Alternative,
    /// `a_i` for each ground element `i`.
    pub element_a: Vec<Alternative>,
    /// `b_i` for each ground element `i`.
    pub element_b: Vec<Alternative>,
    /// `s_j` for each subset `j`.
    pub subset: Vec<Alternative>,
    pub swing_rankings: usize,
    pub equalizing_rankings: usize,
    pub incremental_rankings: usize,
}

impl DodgsonLayout {
    fn new(q: usize, s: usize) -> Self {
        DodgsonLayout {
            m: 2 * q + s + 1,
            critical: 0,
            element_a: (1..=q).collect(),
            element_b: (q + 1..=2 * q).collect(),
            subset: (2 * q + 1..2 * q + 1 + s).collect(),
            swing_rankings: 0,
            equalizing_rankings: 0,
            incremental_rankings: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DodgsonReductionOutput {
    pub profile: Profile,
    pub critical: Alternative,
    /// `4q/3`.
    pub threshold: u64,
    pub layout: DodgsonLayout,
}

/// `head`, then `c`, then every other alternative in ascending order.
fn ranking_with_head(m: usize, c: Alternative, head: &[Alternative]) -> Ranking {
    let mut order = head.to_vec();
    order.push(c);
    order.extend((0..m).filter(|x| *x != c && !head.contains(x)));
    Ranking::new(order).expect("head, c and the rest partition the alternatives")
}

pub fn x3c_to_dodgson(inst: &X3CInstance) -> Result<DodgsonReductionOutput> {
    let (q, s) = (inst.q(), inst.s());
    let mut layout = DodgsonLayout::new(q, s);
    let (m, c) = (layout.m, layout.critical);
    let mut rankings = Vec::new();

    // Swing: E_j ≻ s_j ≻ c ≻ rest.
    for (j, set) in inst.subsets().iter().enumerate() {
        let mut head: Vec<Alternative> = set.iter().map(|&e| layout.element_a[e]).collect();
        head.push(layout.subset[j]);
        rankings.push(ranking_with_head(m, c, &head));
    }
    layout.swing_rankings = s;

    // Equalizing: N* − N_i copies of a_i ≻ b_i ≻ c ≻ rest.
    let occ = inst.occurrences();
    let n_star = occ.iter().copied().max().unwrap_or(0);
    for (i, &n_i) in occ.iter().enumerate() {
        let r = ranking_with_head(m, c, &[layout.element_a[i], layout.element_b[i]]);
        rankings.extend(std::iter::repeat(r).take(n_star - n_i));
        layout.equalizing_rankings += n_star - n_i;
    }

    // Incremental: a_1 … a_q ≻ b_1 … b_q ≻ c ≻ H, repeated until each a_i wins by one.
    let base = Profile::new(rankings.clone())?;
    let margins = wmg(&base);
    let current = *margins.margin(layout.element_a[0], c);
    if let Some(&i) = layout.element_a.iter().find(|&&a| *margins.margin(a, c) != current) {
        return Err(Error::Construction(format!("element alternative {i} has an unequal margin against c")));
    }
    let n_i = 1 - current;
    if n_i < 0 {
        return Err(Error::Construction(format!(
            "element alternatives already beat c by {current}; incremental rankings cannot lower it"
        )));
    }
    let head: Vec<Alternative> = layout.element_a.iter().chain(&layout.element_b).copied().collect();
    rankings.extend(std::iter::repeat(ranking_with_head(m, c, &head)).take(n_i as usize));
    layout.incremental_rankings = n_i as usize;

    let profile = Profile::new(rankings)?;
    let margins = wmg(&profile);
    if let Some(&a) = layout.element_a.iter().find(|&&a| *margins.margin(a, c) != 1) {
        return Err(Error::Construction(format!("alternative {a} does not beat c by exactly 1")));
    }
    Ok(DodgsonReductionOutput {
        profile,
        critical: c,
        threshold: 4 * q as u64 / 3,
        layout,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::rules::dodgson_score_exact;

    #[test]
    fn singleton_instance() {
        let out = x3c_to_dodgson(&X3CInstance::new(3, vec![[0, 1, 2]]).unwrap()).unwrap();
        assert_eq!(out.profile.m(), 8);
        assert_eq!(out.profile.n(), 1);
        assert_eq!(out.threshold, 4);
        assert_eq!(out.profile.rankings()[0].order(), &[1, 2, 3, 7, 0, 4, 5, 6]);
        assert_eq!(dodgson_score_exact(&out.profile, out.critical, &Budget::default()).unwrap(), 4);
    }

    #[test]
    fn sizes_and_margins() {
        let inst = X3CInstance::new(6, vec![[0, 1, 2], [2, 3, 4], [3, 4, 5], [0, 4, 5]]).unwrap();
        let out = x3c_to_dodgson(&inst).unwrap();
        let (q, s) = (6, 4);
        assert_eq!(out.profile.m(), 2 * q + s + 1);
        assert!(out.profile.n() <= 2 * (q + 1) * s + 1);
        // N = [2,1,2,2,3,2], N* = 3
        assert_eq!(out.layout.equalizing_rankings, 1 + 2 + 1 + 1 + 0 + 1);
        assert_eq!(out.layout.incremental_rankings, 1 + 4 * 3 - 2 * 4);
        let w = wmg(&out.profile);
        for &a in &out.layout.element_a {
            assert_eq!(*w.margin(a, out.critical), 1);
        }
    }

    #[test]
    fn yes_and_no_instances_score_on_each_side_of_threshold() {
        let b = Budget::default();
        let yes = X3CInstance::new(6, vec![[0, 1, 2], [2, 3, 4], [3, 4, 5]]).unwrap();
        let out = x3c_to_dodgson(&yes).unwrap();
        assert!(dodgson_score_exact(&out.profile, 0, &b).unwrap() <= out.threshold);
        let no = X3CInstance::new(6, vec![[0, 1, 2], [2, 3, 4], [1, 4, 5]]).unwrap();
        let out = x3c_to_dodgson(&no).unwrap();
        assert!(dodgson_score_exact(&out.profile, 0, &b).unwrap() > out.threshold);
    }
}
