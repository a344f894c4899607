//! Antichains and unions of `k` antichains.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::poset::Poset;

/// Default size up to which `k`-families are found by exhaustive search.
pub const K_FAMILY_BRUTE_FORCE_LIMIT: usize = 20;

/// Pairwise incomparable elements, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntichainWitness {
    pub elements: Vec<usize>,
}

impl AntichainWitness {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Checks pairwise incomparability against the transitive closure.
    pub fn verify(&self, poset: &Poset) -> bool {
        let up = poset.closure();
        self.elements.iter().all(|&x| x < poset.len())
            && self.elements.windows(2).all(|w| w[0] < w[1])
            && self
                .elements
                .iter()
                .all(|&x| self.elements.iter().all(|&y| !up[x].contains(y)))
    }
}

/// Hopcroft–Karp on `x → y` for `x < y`; returns the partner of each left
/// vertex.
fn hopcroft_karp(up: &[FixedBitSet]) -> Vec<Option<usize>> {
    let n = up.len();
    let adj: Vec<Vec<usize>> = up.iter().map(|s| s.ones().collect()).collect();
    let mut left: Vec<Option<usize>> = vec![None; n];
    let mut right: Vec<Option<usize>> = vec![None; n];
    let mut dist = vec![u32::MAX; n];
    loop {
        let mut queue = VecDeque::new();
        for x in 0..n {
            if left[x].is_none() {
                dist[x] = 0;
                queue.push_back(x);
            } else {
                dist[x] = u32::MAX;
            }
        }
        let mut found = false;
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                match right[y] {
                    None => found = true,
                    Some(x2) if dist[x2] == u32::MAX => {
                        dist[x2] = dist[x] + 1;
                        queue.push_back(x2);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            return left;
        }
        let mut next = vec![0usize; n];
        for x in 0..n {
            if left[x].is_none() {
                augment(x, &adj, &mut left, &mut right, &mut dist, &mut next);
            }
        }
    }
}

fn augment(
    start: usize,
    adj: &[Vec<usize>],
    left: &mut [Option<usize>],
    right: &mut [Option<usize>],
    dist: &mut [u32],
    next: &mut [usize],
) -> bool {
    // iterative DFS along layered alternating paths
    let mut stack = vec![start];
    let mut path: Vec<usize> = Vec::new();
    while let Some(&x) = stack.last() {
        if next[x] >= adj[x].len() {
            dist[x] = u32::MAX;
            stack.pop();
            path.pop();
            continue;
        }
        let y = adj[x][next[x]];
        next[x] += 1;
        match right[y] {
            None => {
                path.push(y);
                for (i, &y) in path.iter().enumerate() {
                    let x = stack[i];
                    left[x] = Some(y);
                    right[y] = Some(x);
                }
                return true;
            }
            Some(x2) if dist[x2] == dist[x] + 1 => {
                path.push(y);
                stack.push(x2);
            }
            _ => {}
        }
    }
    false
}

/// A maximum antichain, via a maximum matching on the comparability graph
/// and König's theorem.
pub fn max_antichain(poset: &Poset) -> AntichainWitness {
    let up = poset.closure();
    let n = up.len();
    let left = hopcroft_karp(&up);
    let mut right: Vec<Option<usize>> = vec![None; n];
    for (x, y) in left.iter().enumerate() {
        if let Some(y) = *y {
            right[y] = Some(x);
        }
    }
    // alternating reachability from unmatched left vertices
    let mut zl = vec![false; n];
    let mut zr = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&x| left[x].is_none()).collect();
    for &x in &queue {
        zl[x] = true;
    }
    while let Some(x) = queue.pop_front() {
        for y in up[x].ones() {
            if !zr[y] {
                zr[y] = true;
                if let Some(x2) = right[y] {
                    if !zl[x2] {
                        zl[x2] = true;
                        queue.push_back(x2);
                    }
                }
            }
        }
    }
    let elements: Vec<usize> = (0..n).filter(|&x| zl[x] && !zr[x]).collect();
    let matched = left.iter().filter(|m| m.is_some()).count();
    debug_assert_eq!(elements.len(), n - matched);
    AntichainWitness { elements }
}

/// Longest chain length in every subset, indexed by bitmask over the
/// elements in linear-extension order.
fn longest_chains(poset: &Poset) -> (Vec<usize>, Vec<u8>) {
    let order = poset.linear_extension();
    let n = order.len();
    let mut pos = vec![0usize; n];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i;
    }
    let closure = poset.closure();
    let up: Vec<u32> = order
        .iter()
        .map(|&x| closure[x].ones().fold(0u32, |m, y| m | 1 << pos[y]))
        .collect();
    let mut lc = vec![0u8; 1usize << n];
    for s in 1..(1usize << n) {
        // lowest set bit is minimal in s
        let i = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        lc[s] = lc[rest].max(1 + lc[s & up[i] as usize]);
    }
    (order, lc)
}

fn check_brute_force_size(poset: &Poset, limit: usize) -> Result<()> {
    let cap = limit.min(26);
    if poset.len() > cap {
        return Err(Error::Resource(format!(
            "exhaustive k-family search is limited to {cap} elements, poset has {}",
            poset.len()
        )));
    }
    Ok(())
}

/// `d_k` for `k = 0, 1, …, height + 1` by exhaustive search: a subset is a
/// union of `k` antichains exactly when its longest chain has at most `k`
/// elements.
pub fn k_family_sizes(poset: &Poset, limit: usize) -> Result<Vec<usize>> {
    check_brute_force_size(poset, limit)?;
    let (_, lc) = longest_chains(poset);
    let h = lc.last().copied().unwrap_or(0) as usize;
    let mut best = vec![0usize; h + 1];
    for (s, &l) in lc.iter().enumerate() {
        let c = s.count_ones() as usize;
        let l = l as usize;
        if c > best[l] {
            best[l] = c;
        }
    }
    for k in 1..=h {
        best[k] = best[k].max(best[k - 1]);
    }
    Ok(best)
}

/// A largest union of `k` antichains, found exhaustively.
pub fn max_k_family(poset: &Poset, k: usize, limit: usize) -> Result<Vec<usize>> {
    check_brute_force_size(poset, limit)?;
    let (order, lc) = longest_chains(poset);
    let best = lc
        .iter()
        .enumerate()
        .filter(|(_, &l)| l as usize <= k)
        .max_by_key(|(s, _)| (s.count_ones(), std::cmp::Reverse(*s)))
        .map_or(0, |(s, _)| s);
    let mut family: Vec<usize> = (0..order.len())
        .filter(|&i| best >> i & 1 == 1)
        .map(|i| order[i])
        .collect();
    family.sort_unstable();
    Ok(family)
}

/// Largest union of `k` antichains, exhaustively for posets with at most
/// `limit` elements (capped at 26).
pub fn k_family_size(poset: &Poset, k: usize, limit: usize) -> Result<usize> {
    let sizes = k_family_sizes(poset, limit)?;
    Ok(sizes[k.min(sizes.len() - 1)])
}

/// Largest union of `k` antichains by Greene–Kleitman duality,
/// `d_k = min over chain partitions of Σ min(|C|, k)`, solved as a min-cost
/// flow where each chain costs `k` and each element on it earns `1`.
pub fn k_family_size_min_cost(poset: &Poset, k: usize) -> usize {
    let n = poset.len();
    if k == 0 || n == 0 {
        return 0;
    }
    let up = poset.closure();
    // nodes: s, t, x' = 2 + x, x'' = 2 + n + x
    let (s, t) = (0, 1);
    let mut g = CostGraph::new(2 + 2 * n);
    for x in 0..n {
        g.add(s, 2 + x, 1, k as i64);
        g.add(2 + x, 2 + n + x, 1, -1);
        g.add(2 + n + x, t, 1, 0);
        for y in up[x].ones() {
            g.add(2 + n + x, 2 + y, 1, 0);
        }
    }
    let cost = g.min_cost_any_flow(s, t);
    (n as i64 + cost) as usize
}

struct CostGraph {
    to: Vec<usize>,
    cap: Vec<i64>,
    cost: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl CostGraph {
    fn new(n: usize) -> Self {
        Self {
            to: Vec::new(),
            cap: Vec::new(),
            cost: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    fn add(&mut self, u: usize, v: usize, cap: i64, cost: i64) {
        for (a, b, c, w) in [(u, v, cap, cost), (v, u, 0, -cost)] {
            self.adj[a].push(self.to.len());
            self.to.push(b);
            self.cap.push(c);
            self.cost.push(w);
        }
    }

    /// Successive shortest paths (Bellman–Ford), stopping once the cheapest
    /// augmenting path no longer lowers the cost.
    fn min_cost_any_flow(&mut self, s: usize, t: usize) -> i64 {
        let n = self.adj.len();
        let mut total = 0;
        loop {
            let mut dist = vec![i64::MAX; n];
            let mut via = vec![usize::MAX; n];
            dist[s] = 0;
            for _ in 0..n {
                let mut changed = false;
                for u in 0..n {
                    if dist[u] == i64::MAX {
                        continue;
                    }
                    for &e in &self.adj[u] {
                        let v = self.to[e];
                        if self.cap[e] > 0 && dist[u] + self.cost[e] < dist[v] {
                            dist[v] = dist[u] + self.cost[e];
                            via[v] = e;
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            if dist[t] >= 0 {
                return total;
            }
            let mut v = t;
            while v != s {
                let e = via[v];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                v = self.to[e ^ 1];
            }
            total += dist[t];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_antichain(p: &Poset) -> usize {
        let up = p.closure();
        let n = p.len();
        (0..1usize << n)
            .filter(|&s| {
                (0..n).all(|x| s >> x & 1 == 0 || up[x].ones().all(|y| s >> y & 1 == 0))
            })
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn antichain_examples() {
        assert_eq!(max_antichain(&Poset::chain(5)).len(), 1);
        let claw = Poset::claw(6).unwrap();
        let a = max_antichain(&claw);
        assert_eq!(a.elements, [1, 2, 3, 4, 5]);
        assert!(a.verify(&claw));
        assert_eq!(max_antichain(&Poset::antichain(4)).len(), 4);
    }

    #[test]
    fn antichain_matches_brute_force_on_products() {
        let c3 = Poset::chain(3);
        let w = crate::poset::WeightFunction::unit(3);
        let (p, _) = c3.product(&c3, &w, &w).unwrap();
        assert_eq!(max_antichain(&p).len(), brute_antichain(&p));
        let claw = Poset::claw(4).unwrap();
        let (q, _) = claw
            .product(&c3, &crate::poset::WeightFunction::unit(4), &w)
            .unwrap();
        let a = max_antichain(&q);
        assert!(a.verify(&q));
        assert_eq!(a.len(), brute_antichain(&q));
    }

    #[test]
    fn k_family_examples() {
        assert_eq!(k_family_size(&Poset::chain(5), 2, 20).unwrap(), 2);
        assert_eq!(k_family_size(&Poset::claw(4).unwrap(), 2, 20).unwrap(), 4);
        assert_eq!(k_family_size(&Poset::claw(4).unwrap(), 7, 20).unwrap(), 4);
        assert_eq!(k_family_sizes(&Poset::chain(3), 20).unwrap(), [0, 1, 2, 3]);
        assert_eq!(max_k_family(&Poset::claw(4).unwrap(), 1, 20).unwrap(), [1, 2, 3]);
        assert!(matches!(k_family_size(&Poset::chain(21), 1, 20), Err(Error::Resource(_))));
    }

    #[test]
    fn min_cost_agrees_on_examples() {
        for p in [Poset::chain(5), Poset::claw(6).unwrap(), Poset::antichain(3)] {
            let sizes = k_family_sizes(&p, 20).unwrap();
            for (k, &d) in sizes.iter().enumerate() {
                assert_eq!(k_family_size_min_cost(&p, k), d);
            }
        }
    }
}
