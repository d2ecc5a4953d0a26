//! Pairwise majority structure: support counts, weighted majority graphs,
//! Condorcet winners and per-pair deficits.

use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ranking::{Alternative, Profile, WeightedProfile};
use crate::rational::{self, Rational};

/// `count(a, b)` = number of voters ranking `a` above `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportMatrix {
    m: usize,
    n: usize,
    counts: Vec<u64>,
}

impl SupportMatrix {
    pub fn of(p: &Profile) -> Self {
        let m = p.m();
        let mut counts = vec![0u64; m * m];
        for r in p.rankings() {
            let order = r.order();
            for (i, &a) in order.iter().enumerate() {
                for &b in &order[i + 1..] {
                    counts[a * m + b] += 1;
                }
            }
        }
        SupportMatrix { m, n: p.n(), counts }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self, a: Alternative, b: Alternative) -> u64 {
        self.counts[a * self.m + b]
    }

    /// Extra voters needed before `a` strictly beats `b`: `max(0, ⌊n/2⌋ + 1 − count(a,b))`.
    pub fn deficit(&self, a: Alternative, b: Alternative) -> u64 {
        (self.n as u64 / 2 + 1).saturating_sub(self.count(a, b))
    }
}

/// Weighted majority graph: antisymmetric margin matrix, `margin(a,b) = #(a≻b) − #(b≻a)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Wmg<T> {
    m: usize,
    margins: Vec<T>,
}

impl<T> Wmg<T>
where
    T: Clone + Zero + Neg<Output = T> + Add<Output = T> + Sub<Output = T> + Signed,
{
    pub fn zeros(m: usize) -> Self {
        Wmg {
            m,
            margins: vec![T::zero(); m * m],
        }
    }

    /// Builds from a closure giving `margin(a, b)` for `a < b`.
    pub fn from_upper(m: usize, mut f: impl FnMut(Alternative, Alternative) -> T) -> Self {
        let mut w = Wmg::zeros(m);
        for a in 0..m {
            for b in a + 1..m {
                w.set(a, b, f(a, b));
            }
        }
        w
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn margin(&self, a: Alternative, b: Alternative) -> &T {
        &self.margins[a * self.m + b]
    }

    /// Sets `margin(a,b) = v` and `margin(b,a) = -v`.
    pub fn set(&mut self, a: Alternative, b: Alternative, v: T) {
        self.margins[b * self.m + a] = -v.clone();
        self.margins[a * self.m + b] = v;
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Wmg<U> {
        Wmg {
            m: self.m,
            margins: self.margins.iter().map(f).collect(),
        }
    }

    /// Sum over ordered pairs `a ≠ b` of `|self(a,b) − other(a,b)|`.
    pub fn l1_distance(&self, other: &Wmg<T>) -> Result<T> {
        self.check_m(other)?;
        Ok(self
            .margins
            .iter()
            .zip(&other.margins)
            .fold(T::zero(), |acc, (x, y)| acc + (x.clone() - y.clone()).abs()))
    }

    pub fn linf_distance(&self, other: &Wmg<T>) -> Result<T>
    where
        T: PartialOrd,
    {
        self.check_m(other)?;
        let mut best = T::zero();
        for (x, y) in self.margins.iter().zip(&other.margins) {
            let d = (x.clone() - y.clone()).abs();
            if d > best {
                best = d;
            }
        }
        Ok(best)
    }

    /// True if `margin(a,b) = -margin(b,a)` everywhere and the diagonal is zero.
    pub fn is_antisymmetric(&self) -> bool {
        (0..self.m).all(|a| {
            self.margin(a, a).is_zero()
                && (0..self.m).all(|b| self.margin(a, b).clone() == -self.margin(b, a).clone())
        })
    }

    /// Largest weight of a directed triangle `a→b→c→a`.
    pub fn max_three_cycle(&self) -> Option<T>
    where
        T: PartialOrd,
    {
        let m = self.m;
        let mut best: Option<T> = None;
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    let w = self.margin(a, b).clone() + self.margin(b, c).clone() + self.margin(c, a).clone();
                    if best.as_ref().map_or(true, |x| w > *x) {
                        best = Some(w);
                    }
                }
            }
        }
        best
    }

    fn check_m(&self, other: &Wmg<T>) -> Result<()> {
        if self.m != other.m {
            return Err(Error::Dimension {
                expected: self.m,
                found: other.m,
            });
        }
        Ok(())
    }
}

impl Wmg<i64> {
    pub fn to_rational(&self) -> Wmg<Rational> {
        self.map(|&v| rational::int(v))
    }
}

pub fn wmg(p: &Profile) -> Wmg<i64> {
    let s = SupportMatrix::of(p);
    Wmg::from_upper(p.m(), |a, b| s.count(a, b) as i64 - s.count(b, a) as i64)
}

pub fn weighted_wmg(p: &WeightedProfile) -> Wmg<Rational> {
    let m = p.m();
    let mut w: Wmg<Rational> = Wmg::zeros(m);
    for (r, weight) in p.entries() {
        let order = r.order();
        for (i, &a) in order.iter().enumerate() {
            for &b in &order[i + 1..] {
                let ab = w.margin(a, b).clone() + weight.clone();
                w.set(a, b, ab);
            }
        }
    }
    w
}

/// The alternative beating every other by a strict majority, if any.
pub fn condorcet_winner(p: &Profile) -> Option<Alternative> {
    let s = SupportMatrix::of(p);
    (0..p.m()).find(|&a| (0..p.m()).all(|b| b == a || s.deficit(a, b) == 0))
}

pub fn deficit(p: &Profile, a: Alternative, b: Alternative) -> Result<u64> {
    p.check_alternative(a)?;
    p.check_alternative(b)?;
    if a == b {
        return Err(Error::SameAlternative(a));
    }
    Ok(SupportMatrix::of(p).deficit(a, b))
}
