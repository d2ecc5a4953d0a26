//! Exact Cover by 3-Sets instances.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawInstance", into = "RawInstance")]
pub struct X3CInstance {
    q: usize,
    subsets: Vec<[usize; 3]>,
}

#[derive(Serialize, Deserialize)]
struct RawInstance {
    q: usize,
    subsets: Vec<[usize; 3]>,
}

impl X3CInstance {
    /// Validates `q ≡ 0 (mod 3)`, distinct 3-element subsets of `0..q`, and
    /// `q/3 ≤ s ≤ q³/6`. Elements within a subset are sorted; subset order is kept.
    pub fn new(q: usize, subsets: Vec<[usize; 3]>) -> Result<Self> {
        if q == 0 || q % 3 != 0 {
            return Err(Error::InvalidInstance(format!("q = {q} is not a positive multiple of 3")));
        }
        let s = subsets.len();
        if 3 * s < q || 6 * s > q * q * q {
            return Err(Error::InvalidInstance(format!(
                "s = {s} outside [q/3, q^3/6] = [{}, {}]",
                q / 3,
                q * q * q / 6
            )));
        }
        let mut seen = BTreeSet::new();
        let mut sorted = Vec::with_capacity(s);
        for (j, set) in subsets.iter().enumerate() {
            let mut t = *set;
            t.sort_unstable();
            if t[0] == t[1] || t[1] == t[2] {
                return Err(Error::InvalidInstance(format!("subset {j} repeats an element")));
            }
            if t[2] >= q {
                return Err(Error::InvalidInstance(format!("subset {j} has element {} >= q", t[2])));
            }
            if !seen.insert(t) {
                return Err(Error::InvalidInstance(format!("subset {j} duplicates an earlier subset")));
            }
            sorted.push(t);
        }
        Ok(X3CInstance { q, subsets: sorted })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn s(&self) -> usize {
        self.subsets.len()
    }

    pub fn subsets(&self) -> &[[usize; 3]] {
        &self.subsets
    }

    /// `N_i`: how many subsets contain element `i`.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut n = vec![0; self.q];
        for set in &self.subsets {
            for &e in set {
                n[e] += 1;
            }
        }
        n
    }
}

impl TryFrom<RawInstance> for X3CInstance {
    type Error = Error;

    fn try_from(raw: RawInstance) -> Result<Self> {
        X3CInstance::new(raw.q, raw.subsets)
    }
}

impl From<X3CInstance> for RawInstance {
    fn from(inst: X3CInstance) -> Self {
        RawInstance {
            q: inst.q,
            subsets: inst.subsets,
        }
    }
}

/// Indices of subsets forming an exact cover, if one exists.
pub fn x3c_cover(inst: &X3CInstance, budget: &Budget) -> Result<Option<Vec<usize>>> {
    budget.check("x3c subsets", inst.s() as u128, budget.x3c_max_subsets as u128)?;
    let mut containing = vec![Vec::new(); inst.q];
    for (j, set) in inst.subsets.iter().enumerate() {
        for &e in set {
            containing[e].push(j);
        }
    }
    let mut covered = vec![false; inst.q];
    let mut chosen = Vec::new();
    Ok(cover_from(inst, &containing, &mut covered, &mut chosen).then_some(chosen))
}

fn cover_from(inst: &X3CInstance, containing: &[Vec<usize>], covered: &mut [bool], chosen: &mut Vec<usize>) -> bool {
    let Some(e) = covered.iter().position(|&c| !c) else {
        return true;
    };
    for &j in &containing[e] {
        let set = inst.subsets[j];
        if set.iter().any(|&x| covered[x]) {
            continue;
        }
        set.iter().for_each(|&x| covered[x] = true);
        chosen.push(j);
        if cover_from(inst, containing, covered, chosen) {
            return true;
        }
        chosen.pop();
        set.iter().for_each(|&x| covered[x] = false);
    }
    false
}

pub fn x3c_bruteforce(inst: &X3CInstance, budget: &Budget) -> Result<bool> {
    Ok(x3c_cover(inst, budget)?.is_some())
}
