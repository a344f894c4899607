//! Integral max-flow (Dinic). Arcs are scanned in insertion order, so the
//! augmenting paths and the resulting flow are deterministic.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i128,
}

#[derive(Debug, Clone)]
pub(crate) struct Dinic {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
    level: Vec<i32>,
    next: Vec<usize>,
}

impl Dinic {
    pub fn new(nodes: usize) -> Self {
        Self {
            arcs: Vec::new(),
            adj: vec![Vec::new(); nodes],
            level: vec![-1; nodes],
            next: vec![0; nodes],
        }
    }

    /// Returns the arc id; its flow is read back with [`Dinic::flow`].
    pub fn add_arc(&mut self, from: usize, to: usize, cap: i128) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap });
        self.arcs.push(Arc { to: from, cap: 0 });
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        id
    }

    /// Flow currently on arc `id` (the residual capacity of its reverse).
    pub fn flow(&self, id: usize) -> i128 {
        self.arcs[id ^ 1].cap
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let Arc { to, cap } = self.arcs[e];
                if cap > 0 && self.level[to] < 0 {
                    self.level[to] = self.level[u] + 1;
                    queue.push_back(to);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: i128) -> i128 {
        if u == t {
            return pushed;
        }
        while self.next[u] < self.adj[u].len() {
            let e = self.adj[u][self.next[u]];
            let Arc { to, cap } = self.arcs[e];
            if cap > 0 && self.level[to] == self.level[u] + 1 {
                let got = self.dfs(to, t, pushed.min(cap));
                if got > 0 {
                    self.arcs[e].cap -= got;
                    self.arcs[e ^ 1].cap += got;
                    return got;
                }
            }
            self.next[u] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i128 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.next.iter_mut().for_each(|x| *x = 0);
            loop {
                let f = self.dfs(s, t, i128::MAX);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }

    /// Nodes reachable from `s` in the residual graph.
    pub fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &e in &self.adj[u] {
                let Arc { to, cap } = self.arcs[e];
                if cap > 0 && !seen[to] {
                    seen[to] = true;
                    stack.push(to);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_network() {
        // s=0, t=3
        let mut d = Dinic::new(4);
        let a = d.add_arc(0, 1, 3);
        d.add_arc(0, 2, 2);
        d.add_arc(1, 2, 1);
        d.add_arc(1, 3, 2);
        d.add_arc(2, 3, 3);
        assert_eq!(d.max_flow(0, 3), 5);
        assert_eq!(d.flow(a), 3);
        let r = d.reachable(0);
        assert!(r[0] && !r[3]);
    }

    #[test]
    fn min_cut_side() {
        let mut d = Dinic::new(3);
        d.add_arc(0, 1, 5);
        d.add_arc(1, 2, 1);
        assert_eq!(d.max_flow(0, 2), 1);
        assert_eq!(d.reachable(0), [true, true, false]);
    }
}
