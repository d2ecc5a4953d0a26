//! Minimal min-cost flow (successive shortest paths with Bellman-Ford), sized
//! for the Monroe assignment problems here: a few dozen nodes at most.

pub(crate) struct MinCostFlow {
    graph: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    cost: Vec<i64>,
}

impl MinCostFlow {
    pub fn new(nodes: usize) -> Self {
        MinCostFlow {
            graph: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            cost: Vec::new(),
        }
    }

    /// Adds arc `u → v`; returns its id for [`MinCostFlow::flow_on`].
    pub fn add_arc(&mut self, u: usize, v: usize, cap: i64, cost: i64) -> usize {
        let id = self.to.len();
        for (from, to, c, w) in [(u, v, cap, cost), (v, u, 0, -cost)] {
            self.graph[from].push(self.to.len());
            self.to.push(to);
            self.cap.push(c);
            self.cost.push(w);
        }
        id
    }

    pub fn flow_on(&self, arc: usize) -> i64 {
        self.cap[arc ^ 1]
    }

    /// Pushes up to `limit` units from `s` to `t`; returns `(flow, cost)`.
    pub fn run(&mut self, s: usize, t: usize, limit: i64) -> (i64, i64) {
        let n = self.graph.len();
        let (mut flow, mut total) = (0, 0);
        while flow < limit {
            let mut dist = vec![i64::MAX; n];
            let mut via = vec![usize::MAX; n];
            dist[s] = 0;
            let mut changed = true;
            while changed {
                changed = false;
                for u in 0..n {
                    if dist[u] == i64::MAX {
                        continue;
                    }
                    for &e in &self.graph[u] {
                        let v = self.to[e];
                        if self.cap[e] > 0 && dist[u] + self.cost[e] < dist[v] {
                            dist[v] = dist[u] + self.cost[e];
                            via[v] = e;
                            changed = true;
                        }
                    }
                }
            }
            if dist[t] == i64::MAX {
                break;
            }
            let mut push = limit - flow;
            let mut v = t;
            while v != s {
                let e = via[v];
                push = push.min(self.cap[e]);
                v = self.to[e ^ 1];
            }
            let mut v = t;
            while v != s {
                let e = via[v];
                self.cap[e] -= push;
                self.cap[e ^ 1] += push;
                v = self.to[e ^ 1];
            }
            flow += push;
            total += push * dist[t];
        }
        (flow, total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn picks_cheaper_path() {
        let mut f = MinCostFlow::new(4);
        let cheap = f.add_arc(0, 1, 1, 1);
        f.add_arc(1, 3, 1, 1);
        let dear = f.add_arc(0, 2, 1, 5);
        f.add_arc(2, 3, 1, 5);
        assert_eq!(f.run(0, 3, 1), (1, 2));
        assert_eq!((f.flow_on(cheap), f.flow_on(dear)), (1, 0));
        assert_eq!(f.run(0, 3, 5), (1, 10));
    }

    #[test]
    fn reroutes_through_residual_arcs() {
        // Greedy first path 0-1-2-3 must be undone to reach flow 2.
        let mut f = MinCostFlow::new(4);
        f.add_arc(0, 1, 1, 0);
        f.add_arc(0, 2, 1, 2);
        f.add_arc(1, 2, 1, 0);
        f.add_arc(1, 3, 1, 2);
        f.add_arc(2, 3, 1, 0);
        assert_eq!(f.run(0, 3, 2), (2, 4));
    }
}
