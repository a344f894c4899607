//! Search for a claw-product partition of the reflections of `G(2,2,n)`.
//!
//! A coarsening `C_2 × C_4 × ⋯ × C_{2n−2} × C_n` of the absolute order would
//! split the reflections into blocks of sizes `1, 3, …, 2n−3, n−1`. Writing
//! `φ(t) = {i, j}` for a reflection moving coordinates `i` and `j`, each block
//! must have `φ` injective with pairwise intersecting image.

use crate::error::{Error, Result};
use crate::gmpn::GmpnGroup;
use crate::group::ReflectionGroup;

use super::claw::label_products;

/// `1, 3, 5, …, 2n−3, n−1`.
pub fn type_d_block_sizes(n: usize) -> Vec<usize> {
    let mut sizes: Vec<usize> = (1..n).map(|k| 2 * k - 1).collect();
    sizes.push(n.saturating_sub(1));
    sizes
}

/// Largest pairwise intersecting family of 2-subsets of `[n]`.
fn max_intersecting_pairs(n: usize) -> usize {
    match n {
        0 | 1 => 0,
        2 => 1,
        3 => 3,
        _ => n - 1,
    }
}

/// A partition whose claw labelling verified as a coarsening.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClawPartition {
    /// Reflection indices, one block per claw factor, in size order.
    pub blocks: Vec<Vec<usize>>,
    /// Block order of the product `x_{k_1} x_{k_2} ⋯` that verified.
    pub product_order: Vec<usize>,
}

fn pair_of(g: &GmpnGroup, t: usize) -> (usize, usize) {
    let e = g.element(t);
    let moved: Vec<usize> = (0..e.n()).filter(|&k| e.sigma[k] != k).collect();
    (moved[0], moved[1])
}

fn intersects(a: (usize, usize), b: (usize, usize)) -> bool {
    a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1
}

struct Search<'a> {
    g: &'a GmpnGroup,
    pairs: Vec<(usize, usize)>,
    sizes: Vec<usize>,
    blocks: Vec<Vec<usize>>,
    lengths: Vec<usize>,
    found: Option<ClawPartition>,
}

impl Search<'_> {
    fn fits(&self, block: usize, pos: usize) -> bool {
        let p = self.pairs[pos];
        self.blocks[block].len() < self.sizes[block]
            && self.blocks[block].iter().all(|&q| {
                let q = self.pairs[q];
                q != p && intersects(p, q)
            })
    }

    fn run(&mut self, pos: usize) {
        if self.found.is_some() {
            return;
        }
        if pos == self.pairs.len() {
            self.verify();
            return;
        }
        for b in 0..self.sizes.len() {
            // blocks of equal size are interchangeable: fill the first empty one only
            if self.blocks[b].is_empty()
                && (0..b).any(|c| self.sizes[c] == self.sizes[b] && self.blocks[c].is_empty())
            {
                continue;
            }
            if self.fits(b, pos) {
                self.blocks[b].push(pos);
                self.run(pos + 1);
                self.blocks[b].pop();
            }
        }
    }

    fn verify(&mut self) {
        let refl = self.g.reflections();
        let blocks: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&i| refl[i]).collect())
            .collect();
        let mut order: Vec<usize> = (0..blocks.len()).collect();
        loop {
            if label_products(self.g, &blocks, &order, &self.lengths).is_ok() {
                self.found = Some(ClawPartition {
                    blocks,
                    product_order: order,
                });
                return;
            }
            if !next_permutation(&mut order) {
                return;
            }
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Backtracks over assignments of reflections to blocks subject to the
/// injectivity and intersection conditions, then checks each surviving
/// candidate as an order-preserving claw labelling under every block order.
pub fn claw_partition_search(g: &GmpnGroup) -> Result<Option<ClawPartition>> {
    if g.m() != 2 || g.p() != 2 || g.n() < 2 {
        return Err(Error::Parameter(format!(
            "claw partition search needs G(2,2,n) with n >= 2, got {}",
            g.name()
        )));
    }
    let n = g.n();
    let sizes = type_d_block_sizes(n);
    if sizes.iter().any(|&s| s > max_intersecting_pairs(n)) {
        return Ok(None);
    }
    let pairs: Vec<(usize, usize)> = g.reflections().iter().map(|&t| pair_of(g, t)).collect();
    let mut search = Search {
        g,
        pairs,
        blocks: vec![Vec::new(); sizes.len()],
        sizes,
        lengths: (0..g.order()).map(|u| g.reflection_length(u)).collect(),
        found: None,
    };
    search.run(0);
    Ok(search.found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;

    fn d(n: usize) -> GmpnGroup {
        GmpnGroup::new(2, 2, n, &Budget::default()).unwrap()
    }

    #[test]
    fn sizes() {
        assert_eq!(type_d_block_sizes(3), [1, 3, 2]);
        assert_eq!(type_d_block_sizes(4), [1, 3, 5, 3]);
        assert_eq!(type_d_block_sizes(5), [1, 3, 5, 7, 4]);
        for n in 2..7 {
            assert_eq!(type_d_block_sizes(n).iter().sum::<usize>(), n * (n - 1));
        }
    }

    #[test]
    fn permutations() {
        let mut v = vec![0, 1, 2];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 6);
        assert_eq!(v, [2, 1, 0]);
    }

    #[test]
    fn none_for_d4_d5() {
        assert_eq!(claw_partition_search(&d(4)).unwrap(), None);
        assert_eq!(claw_partition_search(&d(5)).unwrap(), None);
    }

    #[test]
    fn d3_has_a_partition() {
        let g = d(3);
        let p = claw_partition_search(&g).unwrap().expect("D_3 partition");
        let sizes: Vec<usize> = p.blocks.iter().map(Vec::len).collect();
        assert_eq!(sizes, [1, 3, 2]);
        let mut all: Vec<usize> = p.blocks.concat();
        all.sort_unstable();
        assert_eq!(all, g.reflections());
    }

    #[test]
    fn wrong_family() {
        let g = GmpnGroup::new(2, 1, 3, &Budget::default()).unwrap();
        assert!(claw_partition_search(&g).is_err());
    }
}
