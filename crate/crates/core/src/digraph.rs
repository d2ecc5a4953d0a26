//! Unweighted simple digraphs over alternatives, as used by the feedback arc
//! set machinery.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::majority::Wmg;
use crate::ranking::{check_same_m, Alternative, Ranking};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    m: usize,
    arcs: BTreeSet<(Alternative, Alternative)>,
}

impl Digraph {
    /// Rejects self-loops, duplicate arcs and endpoints outside `0..m`.
    pub fn new(m: usize, arcs: impl IntoIterator<Item = (Alternative, Alternative)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in arcs {
            if u >= m || v >= m {
                return Err(Error::InvalidGraph(format!("arc {u}->{v} outside 0..{m}")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if !set.insert((u, v)) {
                return Err(Error::InvalidGraph(format!("duplicate arc {u}->{v}")));
            }
        }
        Ok(Digraph { m, arcs: set })
    }

    pub fn empty(m: usize) -> Self {
        Digraph { m, arcs: BTreeSet::new() }
    }

    /// The directed cycle `0 → 1 → … → m-1 → 0`.
    pub fn cycle(m: usize) -> Self {
        Digraph::new(m, (0..m).map(|i| (i, (i + 1) % m))).expect("cycle on m >= 2 vertices")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (Alternative, Alternative)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn has_arc(&self, u: Alternative, v: Alternative) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn has_two_cycle(&self) -> bool {
        self.arcs.iter().any(|&(u, v)| self.arcs.contains(&(v, u)))
    }

    /// Balanced in/out degrees and all arcs in one weakly connected component.
    pub fn is_eulerian(&self) -> bool {
        let mut balance = vec![0i64; self.m];
        for &(u, v) in &self.arcs {
            balance[u] += 1;
            balance[v] -= 1;
        }
        if balance.iter().any(|&b| b != 0) {
            return false;
        }
        let Some(&(start, _)) = self.arcs.iter().next() else {
            return true;
        };
        // Union-find over vertices touched by arcs.
        let mut parent: Vec<usize> = (0..self.m).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(u, v) in &self.arcs {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            parent[ru] = rv;
        }
        let root = find(&mut parent, start);
        self.arcs.iter().all(|&(u, _)| find(&mut parent, u) == root)
    }

    /// Adjacency margins: `+1` on `u→v`, `-1` on `v→u`, `0` elsewhere.
    /// Requires an antisymmetric arc set.
    pub fn margins(&self) -> Result<Wmg<i64>> {
        if self.has_two_cycle() {
            return Err(Error::InvalidGraph("graph contains a 2-cycle".into()));
        }
        let mut w = Wmg::zeros(self.m);
        for &(u, v) in &self.arcs {
            w.set(u, v, 1);
        }
        Ok(w)
    }

    /// Number of arcs `u→v` with `v` ranked above `u` in `r`.
    pub fn backward_arcs(&self, r: &Ranking) -> Result<usize> {
        check_same_m(self.m, r.m())?;
        let pos = r.positions();
        Ok(self.arcs.iter().filter(|&&(u, v)| pos[v] < pos[u]).count())
    }
}
