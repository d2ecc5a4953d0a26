//! Rankings, permutations of alternatives, and (weighted) profiles.
//!
//! Alternatives are dense indices `0..m`. A [`Ranking`] lists them most
//! preferred first.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub type Alternative = usize;

/// A linear order over `m` alternatives.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Ranking(Vec<Alternative>);

impl Ranking {
    pub fn new(order: Vec<Alternative>) -> Result<Self> {
        check_permutation(&order).map_err(Error::InvalidRanking)?;
        Ok(Ranking(order))
    }

    /// `0 ≻ 1 ≻ … ≻ m-1`.
    pub fn identity(m: usize) -> Self {
        Ranking((0..m).collect())
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn order(&self) -> &[Alternative] {
        &self.0
    }

    /// `positions()[a]` is the 0-based rank of `a`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &a) in self.0.iter().enumerate() {
            pos[a] = i;
        }
        pos
    }

    pub fn position(&self, a: Alternative) -> Option<usize> {
        self.0.iter().position(|&x| x == a)
    }

    /// True if `a` is ranked above `b`.
    pub fn prefers(&self, a: Alternative, b: Alternative) -> bool {
        for &x in &self.0 {
            if x == a {
                return true;
            }
            if x == b {
                return false;
            }
        }
        false
    }

    pub fn reversed(&self) -> Ranking {
        Ranking(self.0.iter().rev().copied().collect())
    }

    /// Kendall tau distance: the number of pairs ordered oppositely.
    pub fn kt_distance(&self, other: &Ranking) -> Result<u64> {
        check_same_m(self.m(), other.m())?;
        let pos = other.positions();
        // Inversions of `other`'s positions read in `self`'s order.
        let seq: Vec<usize> = self.0.iter().map(|&a| pos[a]).collect();
        let mut count = 0u64;
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                if seq[i] > seq[j] {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// The `k` most preferred alternatives, in order.
    pub fn top_k(&self, k: usize) -> Result<&[Alternative]> {
        if k == 0 || k > self.m() {
            return Err(Error::out_of_range("k", k, format!("1..={}", self.m())));
        }
        Ok(&self.0[..k])
    }

    /// Relabels every alternative through `sigma`.
    pub fn permute(&self, sigma: &Permutation) -> Result<Ranking> {
        check_same_m(sigma.m(), self.m())?;
        Ok(Ranking(self.0.iter().map(|&a| sigma.apply(a)).collect()))
    }

    /// Appends `tail` (a permutation of `m..m+tail.len()`) below the current order.
    pub fn append_tail(&self, tail: &[Alternative]) -> Result<Ranking> {
        let m = self.m();
        let mut seen = vec![false; tail.len()];
        for &x in tail {
            if x < m || x >= m + tail.len() || std::mem::replace(&mut seen[x - m], true) {
                return Err(Error::InvalidRanking(format!(
                    "tail {tail:?} is not a permutation of {m}..{}",
                    m + tail.len()
                )));
            }
        }
        let mut order = self.0.clone();
        order.extend_from_slice(tail);
        Ok(Ranking(order))
    }

    /// Number of alternatives strictly above `a`.
    pub(crate) fn rank_of(&self, a: Alternative) -> usize {
        self.position(a).expect("alternative belongs to ranking")
    }
}

impl TryFrom<Vec<usize>> for Ranking {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Ranking::new(v)
    }
}

impl From<Ranking> for Vec<usize> {
    fn from(r: Ranking) -> Self {
        r.0
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        f.write_str(&parts.join(" ≻ "))
    }
}

/// A bijection on `{0, …, m-1}`; `map[a]` is the image of `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<Alternative>);

impl Permutation {
    pub fn new(map: Vec<Alternative>) -> Result<Self> {
        check_permutation(&map).map_err(Error::InvalidPermutation)?;
        Ok(Permutation(map))
    }

    pub fn identity(m: usize) -> Self {
        Permutation((0..m).collect())
    }

    /// The transposition swapping `a` and `b`.
    pub fn swap(m: usize, a: Alternative, b: Alternative) -> Result<Self> {
        if a >= m || b >= m {
            return Err(Error::InvalidPermutation(format!("swap ({a} {b}) outside 0..{m}")));
        }
        let mut map: Vec<usize> = (0..m).collect();
        map.swap(a, b);
        Ok(Permutation(map))
    }

    /// The permutation sending `from.order()[i]` to `to.order()[i]`.
    pub fn mapping(from: &Ranking, to: &Ranking) -> Result<Self> {
        check_same_m(from.m(), to.m())?;
        let mut map = vec![0; from.m()];
        for (&a, &b) in from.order().iter().zip(to.order()) {
            map[a] = b;
        }
        Ok(Permutation(map))
    }

    pub fn m(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, a: Alternative) -> Alternative {
        self.0[a]
    }

    pub fn as_slice(&self) -> &[Alternative] {
        &self.0
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &Permutation) -> Result<Permutation> {
        check_same_m(self.m(), inner.m())?;
        Ok(Permutation(inner.0.iter().map(|&a| self.0[a]).collect()))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (a, &b) in self.0.iter().enumerate() {
            inv[b] = a;
        }
        Permutation(inv)
    }
}

/// A non-empty multiset of rankings over a common `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Profile {
    m: usize,
    rankings: Vec<Ranking>,
}

impl Profile {
    pub fn new(rankings: Vec<Ranking>) -> Result<Self> {
        let first = rankings.first().ok_or(Error::EmptyProfile)?;
        let m = first.m();
        for r in &rankings {
            check_same_m(m, r.m())?;
        }
        Ok(Profile { m, rankings })
    }

    pub fn from_orders<I, V>(orders: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: Into<Vec<usize>>,
    {
        let rankings = orders
            .into_iter()
            .map(|o| Ranking::new(o.into()))
            .collect::<Result<Vec<_>>>()?;
        Profile::new(rankings)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.rankings.len()
    }

    pub fn rankings(&self) -> &[Ranking] {
        &self.rankings
    }

    pub fn into_rankings(self) -> Vec<Ranking> {
        self.rankings
    }

    pub fn check_alternative(&self, a: Alternative) -> Result<()> {
        if a >= self.m {
            return Err(Error::out_of_range("alternative", a, format!("0..{}", self.m)));
        }
        Ok(())
    }

    /// `KT(P, r) = Σ_{R ∈ P} KT(R, r)`.
    pub fn kt_distance(&self, r: &Ranking) -> Result<u64> {
        check_same_m(self.m, r.m())?;
        self.rankings.iter().map(|x| x.kt_distance(r)).sum()
    }

    /// Appends `m_prime` new alternatives `m..m+m_prime` to the bottom of every
    /// ranking. Without explicit tails each voter gets the ascending order.
    pub fn app_last(&self, m_prime: usize, tails: Option<&[Vec<Alternative>]>) -> Result<Profile> {
        if m_prime == 0 {
            return Err(Error::out_of_range("m_prime", 0, "at least 1"));
        }
        let canonical: Vec<usize> = (self.m..self.m + m_prime).collect();
        if let Some(tails) = tails {
            if tails.len() != self.n() {
                return Err(Error::InvalidRanking(format!(
                    "{} tails given for {} voters",
                    tails.len(),
                    self.n()
                )));
            }
        }
        let rankings = self
            .rankings
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let tail = tails.map_or(canonical.as_slice(), |t| t[i].as_slice());
                if tail.len() != m_prime {
                    return Err(Error::InvalidRanking(format!(
                        "tail of voter {i} has {} alternatives, expected {m_prime}",
                        tail.len()
                    )));
                }
                r.append_tail(tail)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Profile {
            m: self.m + m_prime,
            rankings,
        })
    }

    /// `Top_k` of every ranking.
    pub fn top_k(&self, k: usize) -> Result<Vec<&[Alternative]>> {
        self.rankings.iter().map(|r| r.top_k(k)).collect()
    }

    /// True if the top-`k` slice of every ranking equals the corresponding
    /// ranking of `base` (which must have `base.m() == k`).
    pub fn top_matches(&self, base: &Profile) -> Result<bool> {
        if base.n() != self.n() {
            return Ok(false);
        }
        let tops = self.top_k(base.m())?;
        Ok(tops
            .iter()
            .zip(base.rankings())
            .all(|(top, r)| *top == r.order()))
    }

    /// The profile obtained by keeping only the top `k` entries, which must be
    /// exactly the alternatives `0..k` in every ranking.
    pub fn restrict_top(&self, k: usize) -> Result<Profile> {
        let rankings = self
            .top_k(k)?
            .into_iter()
            .map(|top| Ranking::new(top.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Profile::new(rankings)
    }

    pub fn permute(&self, sigma: &Permutation) -> Result<Profile> {
        let rankings = self
            .rankings
            .iter()
            .map(|r| r.permute(sigma))
            .collect::<Result<Vec<_>>>()?;
        Ok(Profile { m: self.m, rankings })
    }

    /// Sub-profile keeping the voters selected by `keep`.
    pub fn select(&self, keep: impl Fn(usize) -> bool) -> Option<Profile> {
        let rankings: Vec<Ranking> = self
            .rankings
            .iter()
            .enumerate()
            .filter(|(i, _)| keep(*i))
            .map(|(_, r)| r.clone())
            .collect();
        Profile::new(rankings).ok()
    }
}

/// A fractional profile: rankings with nonnegative rational weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedProfile {
    m: usize,
    entries: Vec<(Ranking, Rational)>,
}

impl WeightedProfile {
    pub fn new(entries: Vec<(Ranking, Rational)>) -> Result<Self> {
        let m = entries.first().ok_or(Error::EmptyProfile)?.0.m();
        let mut total = Rational::zero();
        for (r, w) in &entries {
            check_same_m(m, r.m())?;
            if w.is_negative() {
                return Err(Error::InvalidWeight(format!("negative weight {}", rational::format(w))));
            }
            total += w;
        }
        if total.is_zero() {
            return Err(Error::InvalidWeight("total weight must be positive".into()));
        }
        Ok(WeightedProfile { m, entries })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &[(Ranking, Rational)] {
        &self.entries
    }

    /// `|P|`, the total weight.
    pub fn total_weight(&self) -> Rational {
        self.entries.iter().map(|(_, w)| w).sum()
    }

    pub fn kt_distance(&self, r: &Ranking) -> Result<Rational> {
        check_same_m(self.m, r.m())?;
        let mut total = Rational::zero();
        for (x, w) in &self.entries {
            total += w * rational::int(x.kt_distance(r)? as i64);
        }
        Ok(total)
    }
}

impl From<&Profile> for WeightedProfile {
    fn from(p: &Profile) -> Self {
        WeightedProfile {
            m: p.m(),
            entries: p
                .rankings()
                .iter()
                .map(|r| (r.clone(), rational::int(1)))
                .collect(),
        }
    }
}

pub(crate) fn check_same_m(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::Dimension { expected, found });
    }
    Ok(())
}

fn check_permutation(v: &[usize]) -> std::result::Result<(), String> {
    let mut seen = vec![false; v.len()];
    for &x in v {
        if x >= v.len() {
            return Err(format!("{v:?}: entry {x} outside 0..{}", v.len()));
        }
        if std::mem::replace(&mut seen[x], true) {
            return Err(format!("{v:?}: entry {x} repeated"));
        }
    }
    Ok(())
}
