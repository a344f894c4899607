//! Finite posets stored by their cover relations.
//!
//! Elements are dense indices; labels live in a separate table so they never
//! enter the hot loops. The stored cover list is always irredundant (its own
//! transitive reduction) and sorted.

mod io;
mod polynomial;

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use num::{BigRational, One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

pub use io::{partition_from_json, partition_to_json, weights_from_json, weights_to_json, PosetFile};
pub use polynomial::RankPolynomial;

/// Refuse to materialize products larger than this.
pub const PRODUCT_ELEMENT_LIMIT: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    covers: Vec<(usize, usize)>,
    ranks: Option<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
}

/// Two cover-paths from the minimum to the same element with different
/// lengths: proof that no rank function exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankConflict {
    pub element: usize,
    pub first_path: Vec<usize>,
    pub second_path: Vec<usize>,
}

impl Poset {
    /// Builds a poset from an arbitrary acyclic cover (or order) relation,
    /// keeping only its transitive reduction. `(i, j)` means `i < j`.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut succ = vec![Vec::new(); n];
        for &(i, j) in covers {
            if i >= n || j >= n {
                return Err(Error::Structural(format!(
                    "cover ({i}, {j}) refers to an element outside 0..{n}"
                )));
            }
            if i == j {
                return Err(Error::Structural(format!("cycle detected: {i} < {i}")));
            }
            succ[i].push(j);
        }
        for s in &mut succ {
            s.sort_unstable();
            s.dedup();
        }
        let topo = topological_order(&succ).ok_or_else(|| {
            Error::Structural("cycle detected in cover relation".to_string())
        })?;
        // strict reachability, filled in reverse topological order
        let mut reach = vec![FixedBitSet::with_capacity(n); n];
        for &x in topo.iter().rev() {
            let mut r = FixedBitSet::with_capacity(n);
            for &y in &succ[x] {
                r.insert(y);
                r.union_with(&reach[y]);
            }
            reach[x] = r;
        }
        let mut reduced = Vec::new();
        for x in 0..n {
            for &y in &succ[x] {
                let implied = succ[x].iter().any(|&z| z != y && reach[z].contains(y));
                if !implied {
                    reduced.push((x, y));
                }
            }
        }
        Ok(Self::from_reduced(labels, reduced))
    }

    /// Builds a poset from strict up-sets of a partial order
    /// (`up[x]` holds every `y > x`). The relation must be transitive.
    pub fn from_order_relation(labels: Vec<String>, up: &[FixedBitSet]) -> Self {
        let covers: Vec<Vec<(usize, usize)>> = up
            .par_iter()
            .enumerate()
            .map(|(x, ux)| {
                let mut implied = FixedBitSet::with_capacity(ux.len());
                for w in ux.ones() {
                    implied.union_with(&up[w]);
                }
                let mut c = ux.clone();
                c.difference_with(&implied);
                c.ones().map(|y| (x, y)).collect()
            })
            .collect();
        Self::from_reduced(labels, covers.into_iter().flatten().collect())
    }

    /// Builds a poset whose covers all join consecutive ranks, which makes
    /// them irredundant without any closure computation.
    pub fn from_graded_covers(
        labels: Vec<String>,
        covers: Vec<(usize, usize)>,
        ranks: Vec<usize>,
    ) -> Result<Self> {
        let n = labels.len();
        if ranks.len() != n {
            return Err(Error::Structural(format!("{} ranks for {n} elements", ranks.len())));
        }
        for &(i, j) in &covers {
            if i >= n || j >= n || ranks[j] != ranks[i] + 1 {
                return Err(Error::Structural(format!(
                    "cover ({i}, {j}) does not join consecutive ranks"
                )));
            }
        }
        let mut p = Self::assemble(labels, covers);
        p.ranks = Some(ranks);
        Ok(p)
    }

    fn from_reduced(labels: Vec<String>, covers: Vec<(usize, usize)>) -> Self {
        let mut p = Self::assemble(labels, covers);
        p.ranks = p.propagate_ranks();
        p
    }

    fn assemble(labels: Vec<String>, mut covers: Vec<(usize, usize)>) -> Self {
        covers.sort_unstable();
        covers.dedup();
        let n = labels.len();
        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for &(i, j) in &covers {
            upper[i].push(j);
            lower[j].push(i);
        }
        for l in &mut lower {
            l.sort_unstable();
        }
        Self {
            labels,
            covers,
            ranks: None,
            upper,
            lower,
        }
    }

    /// Rank function by propagation along covers in each connected
    /// component, shifted so that each component's lowest rank is 0.
    fn propagate_ranks(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let mut rank: Vec<Option<i64>> = vec![None; n];
        let mut out = vec![0usize; n];
        for start in 0..n {
            if rank[start].is_some() {
                continue;
            }
            rank[start] = Some(0);
            let mut component = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                let rx = rank[x].unwrap();
                let neighbours = self.upper[x]
                    .iter()
                    .map(|&y| (y, rx + 1))
                    .chain(self.lower[x].iter().map(|&y| (y, rx - 1)));
                for (y, ry) in neighbours {
                    match rank[y] {
                        None => {
                            rank[y] = Some(ry);
                            component.push(y);
                            queue.push_back(y);
                        }
                        Some(r) if r != ry => return None,
                        Some(_) => {}
                    }
                }
            }
            let lowest = component.iter().map(|&x| rank[x].unwrap()).min().unwrap();
            for &x in &component {
                out[x] = (rank[x].unwrap() - lowest) as usize;
            }
        }
        Some(out)
    }

    /// Replaces the rank function after checking it against every cover.
    pub fn with_ranks(mut self, ranks: Option<Vec<usize>>) -> Result<Self> {
        if let Some(r) = &ranks {
            if r.len() != self.len() {
                return Err(Error::Structural(format!(
                    "{} ranks for {} elements",
                    r.len(),
                    self.len()
                )));
            }
            if let Some(&(i, j)) = self.covers.iter().find(|&&(i, j)| r[j] != r[i] + 1) {
                return Err(Error::Structural(format!(
                    "ranks {} and {} do not differ by one across cover ({i}, {j})",
                    r[i], r[j]
                )));
            }
        }
        self.ranks = ranks;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    /// Sorted cover pairs `(lower, upper)`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    pub fn ranks(&self) -> Option<&[usize]> {
        self.ranks.as_deref()
    }

    pub fn rank_of(&self, x: usize) -> Option<usize> {
        self.ranks.as_ref().map(|r| r[x])
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.lower[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.upper[x].is_empty()).collect()
    }

    pub fn require_ranks(&self) -> Result<&[usize]> {
        self.ranks()
            .ok_or_else(|| Error::State("the poset has no rank function".to_string()))
    }

    /// Largest rank, or `None` for an unranked or empty poset.
    pub fn height(&self) -> Option<usize> {
        self.ranks()?.iter().copied().max()
    }

    /// Element lists per rank, each ascending.
    pub fn rank_levels(&self) -> Result<Vec<Vec<usize>>> {
        let ranks = self.require_ranks()?;
        let mut levels = vec![Vec::new(); ranks.iter().copied().max().map_or(0, |r| r + 1)];
        for (x, &r) in ranks.iter().enumerate() {
            levels[r].push(x);
        }
        Ok(levels)
    }

    pub fn rank_sizes(&self) -> Result<Vec<usize>> {
        Ok(self.rank_levels()?.iter().map(Vec::len).collect())
    }

    /// Checks rankedness from the unique minimum: rank 0 at the minimum,
    /// `rank(y) = rank(x) + 1` pushed along covers breadth-first. On conflict
    /// returns two cover-paths of different lengths to one element.
    pub fn is_ranked(&self) -> Result<std::result::Result<Vec<usize>, RankConflict>> {
        let minima = self.minimal_elements();
        if minima.len() != 1 {
            return Err(Error::UnsupportedShape(format!(
                "rankedness check needs a unique minimal element, found {}",
                minima.len()
            )));
        }
        let n = self.len();
        let root = minima[0];
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.upper[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let tree_path = |mut x: usize| {
            let mut path = vec![x];
            while parent[x] != usize::MAX {
                x = parent[x];
                path.push(x);
            }
            path.reverse();
            path
        };
        for &(x, y) in &self.covers {
            if dist[y] != dist[x] + 1 {
                let first_path = tree_path(y);
                let mut second_path = tree_path(x);
                second_path.push(y);
                return Ok(Err(RankConflict {
                    element: y,
                    first_path,
                    second_path,
                }));
            }
        }
        Ok(Ok(dist))
    }

    pub fn rank_polynomial(&self) -> Result<RankPolynomial> {
        let sizes = self.rank_sizes()?;
        Ok(RankPolynomial::new(sizes.into_iter().map(Into::into).collect()))
    }

    /// Elements in an order compatible with the poset (ranks if present).
    pub fn linear_extension(&self) -> Vec<usize> {
        if let Some(r) = &self.ranks {
            let mut order: Vec<usize> = (0..self.len()).collect();
            order.sort_by_key(|&x| (r[x], x));
            return order;
        }
        topological_order(&self.upper).expect("stored covers are acyclic")
    }

    /// Strict up-sets: `closure()[x]` holds every `y > x`.
    pub fn closure(&self) -> Vec<FixedBitSet> {
        let n = self.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &x in self.linear_extension().iter().rev() {
            let mut r = FixedBitSet::with_capacity(n);
            for &y in &self.upper[x] {
                r.insert(y);
                r.union_with(&up[y]);
            }
            up[x] = r;
        }
        up
    }

    /// The transitive reduction of this poset's full order relation, rebuilt
    /// from scratch; equal to `covers()` for every stored poset.
    pub fn reduction_of_closure(&self) -> Vec<(usize, usize)> {
        let p = Self::from_order_relation(self.labels.clone(), &self.closure());
        p.covers
    }

    pub fn chain(n: usize) -> Self {
        let labels = (0..n).map(|i| format!("c{i}")).collect();
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_graded_covers(labels, covers, (0..n).collect()).unwrap()
    }

    pub fn antichain(n: usize) -> Self {
        let labels = (0..n).map(|i| format!("a{i}")).collect();
        Self::from_graded_covers(labels, Vec::new(), vec![0; n]).unwrap()
    }

    /// The claw `C_n`: one bottom element below `n − 1` incomparable atoms.
    pub fn claw(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parameter(format!("claw(n) needs n >= 2, got {n}")));
        }
        let labels = (0..n).map(|i| format!("x{i}")).collect();
        let covers = (1..n).map(|i| (0, i)).collect();
        let mut ranks = vec![1; n];
        ranks[0] = 0;
        Self::from_graded_covers(labels, covers, ranks)
    }

    /// Cartesian product with componentwise order and multiplied weights.
    /// Element `(p, q)` gets index `p · |Q| + q`.
    pub fn product(
        &self,
        other: &Poset,
        weights: &WeightFunction,
        other_weights: &WeightFunction,
    ) -> Result<(Poset, WeightFunction)> {
        let (ra, rb) = (self.require_ranks()?, other.require_ranks()?);
        let (na, nb) = (self.len(), other.len());
        let total = na.checked_mul(nb).unwrap_or(usize::MAX);
        if total > PRODUCT_ELEMENT_LIMIT {
            return Err(Error::Resource(format!(
                "product would have {na} x {nb} elements, limit is {PRODUCT_ELEMENT_LIMIT}"
            )));
        }
        let idx = |p: usize, q: usize| p * nb + q;
        let mut labels = Vec::with_capacity(total);
        let mut ranks = Vec::with_capacity(total);
        let mut w = Vec::with_capacity(total);
        for p in 0..na {
            for q in 0..nb {
                labels.push(format!("({},{})", self.labels[p], other.labels[q]));
                ranks.push(ra[p] + rb[q]);
                w.push(weights.get(p) * other_weights.get(q));
            }
        }
        let mut covers = Vec::new();
        for &(p, p2) in &self.covers {
            for q in 0..nb {
                covers.push((idx(p, q), idx(p2, q)));
            }
        }
        for &(q, q2) in &other.covers {
            for p in 0..na {
                covers.push((idx(p, q), idx(p, q2)));
            }
        }
        let poset = Self::from_graded_covers(labels, covers, ranks)?;
        Ok((poset, WeightFunction::new(w)))
    }

    /// Quotient by a partition into orbits of poset automorphisms. Orbit
    /// `k` of the partition becomes element `k`, weighted by its size.
    pub fn quotient(&self, partition: &Partition) -> Result<(Poset, WeightFunction)> {
        let ranks = self.require_ranks()?;
        if !partition.is_complete() || partition.universe() != self.len() {
            return Err(Error::Domain(
                "quotient needs a partition of every element of the poset".to_string(),
            ));
        }
        let mut qranks = Vec::with_capacity(partition.len());
        for (k, orbit) in partition.blocks().iter().enumerate() {
            let r = ranks[orbit[0]];
            if let Some(&x) = orbit.iter().find(|&&x| ranks[x] != r) {
                return Err(Error::NotAnAutomorphismAction(format!(
                    "orbit {k} contains {} (rank {r}) and {} (rank {})",
                    self.labels[orbit[0]], self.labels[x], ranks[x]
                )));
            }
            qranks.push(r);
        }
        let mut covers: Vec<(usize, usize)> = self
            .covers
            .iter()
            .map(|&(x, y)| (partition.block_of(x).unwrap(), partition.block_of(y).unwrap()))
            .collect();
        covers.sort_unstable();
        covers.dedup();
        let labels = partition
            .blocks()
            .iter()
            .map(|o| self.labels[o[0]].clone())
            .collect();
        let weights = partition
            .blocks()
            .iter()
            .map(|o| BigRational::from_integer(o.len().into()))
            .collect();
        Ok((
            Self::from_graded_covers(labels, covers, qranks)?,
            WeightFunction::new(weights),
        ))
    }
}

/// Weighted rank totals `ν(P_i)`.
pub fn rank_weights(poset: &Poset, weights: &WeightFunction) -> Result<Vec<BigRational>> {
    Ok(poset
        .rank_levels()?
        .iter()
        .map(|level| weights.total(level))
        .collect())
}

/// `ν(P_i)² ≥ ν(P_{i−1}) ν(P_{i+1})` for every interior rank.
pub fn is_log_concave(poset: &Poset, weights: &WeightFunction) -> Result<bool> {
    Ok(log_concavity_failure(poset, weights)?.is_none())
}

/// First rank at which log-concavity fails.
pub fn log_concavity_failure(poset: &Poset, weights: &WeightFunction) -> Result<Option<usize>> {
    let totals = rank_weights(poset, weights)?;
    Ok((1..totals.len().saturating_sub(1))
        .find(|&i| &totals[i] * &totals[i] < &totals[i - 1] * &totals[i + 1]))
}

/// Kahn's algorithm, smallest index first; `None` on a cycle.
fn topological_order(succ: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = succ.len();
    let mut indeg = vec![0usize; n];
    for s in succ {
        for &y in s {
            indeg[y] += 1;
        }
    }
    let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<usize>> =
        (0..n).filter(|&x| indeg[x] == 0).map(std::cmp::Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(std::cmp::Reverse(x)) = heap.pop() {
        order.push(x);
        for &y in &succ[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                heap.push(std::cmp::Reverse(y));
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Nonnegative rational weight per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFunction {
    weights: Vec<BigRational>,
}

impl WeightFunction {
    pub fn new(weights: Vec<BigRational>) -> Self {
        Self { weights }
    }

    /// `ν ≡ 1`.
    pub fn unit(n: usize) -> Self {
        Self::new(vec![BigRational::one(); n])
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn get(&self, x: usize) -> &BigRational {
        &self.weights[x]
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.weights
    }

    /// `ν(X)`.
    pub fn total(&self, xs: &[usize]) -> BigRational {
        xs.iter().fold(BigRational::zero(), |acc, &x| acc + &self.weights[x])
    }

    pub fn is_unit(&self) -> bool {
        self.weights.iter().all(One::is_one)
    }

    /// Checks length, nonnegativity, and positivity of every occupied rank.
    pub fn validate(&self, poset: &Poset) -> Result<()> {
        if self.len() != poset.len() {
            return Err(Error::Parameter(format!(
                "{} weights for {} elements",
                self.len(),
                poset.len()
            )));
        }
        if let Some(x) = self.weights.iter().position(|w| *w < BigRational::zero()) {
            return Err(Error::Parameter(format!("weight of element {x} is negative")));
        }
        if poset.ranks().is_some() {
            for (i, t) in rank_weights(poset, self)?.iter().enumerate() {
                if t.is_zero() {
                    return Err(Error::DegenerateInput(format!("rank {i} has zero total weight")));
                }
            }
        }
        Ok(())
    }
}

/// A partition of (a subset of) `0..universe` into disjoint blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<Option<usize>>,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<usize>>, universe: usize) -> Result<Self> {
        let mut block_of = vec![None; universe];
        for (k, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::Parameter(format!("block {k} is empty")));
            }
            for &x in b {
                if x >= universe {
                    return Err(Error::Parameter(format!("element {x} outside 0..{universe}")));
                }
                if block_of[x].replace(k).is_some() {
                    return Err(Error::Parameter(format!("element {x} is in two blocks")));
                }
            }
        }
        Ok(Self { blocks, block_of })
    }

    /// Every element in its own block.
    pub fn singletons(universe: usize) -> Self {
        Self::new((0..universe).map(|x| vec![x]).collect(), universe).unwrap()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn universe(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_of(&self, x: usize) -> Option<usize> {
        self.block_of[x]
    }

    pub fn is_complete(&self) -> bool {
        self.block_of.iter().all(Option::is_some)
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn from_covers_examples() {
        let single = Poset::from_covers(labels(1), &[]).unwrap();
        assert_eq!(single.rank_polynomial().unwrap(), RankPolynomial::one());

        let chain = Poset::from_covers(labels(3), &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(chain.ranks().unwrap(), [0, 1, 2]);

        // a < c is implied by a < b < c
        let p = Poset::from_covers(labels(3), &[(0, 2), (1, 2), (0, 1)]).unwrap();
        assert_eq!(p.covers(), [(0, 1), (1, 2)]);

        assert!(matches!(
            Poset::from_covers(labels(3), &[(0, 1), (1, 2), (2, 0)]),
            Err(Error::Structural(_))
        ));
        assert!(matches!(Poset::from_covers(labels(2), &[(0, 5)]), Err(Error::Structural(_))));
    }

    #[test]
    fn rankedness() {
        let claw = Poset::claw(4).unwrap();
        assert_eq!(claw.is_ranked().unwrap().unwrap(), vec![0, 1, 1, 1]);

        // 0 < 1 < 2 < 4 and 0 < 3 < 4: two paths of lengths 3 and 2
        let p = Poset::from_covers(labels(5), &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        assert!(p.ranks().is_none());
        let c = p.is_ranked().unwrap().unwrap_err();
        assert_eq!(c.element, 4);
        assert_ne!(c.first_path.len(), c.second_path.len());
        for path in [&c.first_path, &c.second_path] {
            assert_eq!(path[0], 0);
            assert_eq!(*path.last().unwrap(), 4);
            for w in path.windows(2) {
                assert!(p.covers().contains(&(w[0], w[1])));
            }
        }

        let two_minima = Poset::antichain(2);
        assert!(matches!(two_minima.is_ranked(), Err(Error::UnsupportedShape(_))));
        assert!(matches!(p.rank_polynomial(), Err(Error::State(_))));
    }

    #[test]
    fn claw_examples() {
        assert_eq!(Poset::claw(2).unwrap().covers(), Poset::chain(2).covers());
        assert_eq!(Poset::claw(4).unwrap().rank_polynomial().unwrap(), RankPolynomial::from_ints(&[1, 3]));
        assert!(matches!(Poset::claw(1), Err(Error::Parameter(_))));
        let (c2, c4) = (Poset::claw(2).unwrap(), Poset::claw(4).unwrap());
        let (prod, w) = c2
            .product(&c4, &WeightFunction::unit(2), &WeightFunction::unit(4))
            .unwrap();
        assert_eq!(prod.rank_polynomial().unwrap(), RankPolynomial::from_ints(&[1, 4, 3]));
        assert!(w.is_unit());
    }

    #[test]
    fn product_with_point_is_isomorphic() {
        let p = Poset::from_covers(labels(4), &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let (prod, _) = p
            .product(&Poset::chain(1), &WeightFunction::unit(4), &WeightFunction::unit(1))
            .unwrap();
        assert_eq!(prod.covers(), p.covers());
        assert_eq!(prod.ranks(), p.ranks());
    }

    #[test]
    fn log_concavity_examples() {
        let p = Poset::claw(5).unwrap();
        let (c, _) = p.product(&Poset::claw(4).unwrap(), &WeightFunction::unit(5), &WeightFunction::unit(4)).unwrap();
        // sizes (1, 7, 12)
        assert!(is_log_concave(&c, &WeightFunction::unit(c.len())).unwrap());

        // sizes (1, 1, 4)
        let q = Poset::from_covers(labels(6), &[(0, 1), (1, 2), (1, 3), (1, 4), (1, 5)]).unwrap();
        assert_eq!(q.rank_sizes().unwrap(), [1, 1, 4]);
        assert!(!is_log_concave(&q, &WeightFunction::unit(6)).unwrap());
    }

    #[test]
    fn quotient_trivial_partition_is_identity() {
        let p = Poset::from_covers(labels(4), &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let (q, w) = p.quotient(&Partition::singletons(4)).unwrap();
        assert_eq!(q.covers(), p.covers());
        assert!(w.is_unit());
    }

    #[test]
    fn quotient_rejects_rank_mixing_orbits() {
        let p = Poset::chain(3);
        let part = Partition::new(vec![vec![0, 1], vec![2]], 3).unwrap();
        assert!(matches!(p.quotient(&part), Err(Error::NotAnAutomorphismAction(_))));
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![vec![0], vec![0]], 2).is_err());
        assert!(Partition::new(vec![vec![3]], 2).is_err());
        let p = Partition::new(vec![vec![1]], 2).unwrap();
        assert!(!p.is_complete());
    }

    #[test]
    fn reduction_of_closure_round_trips() {
        let p = Poset::from_covers(labels(6), &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (0, 5), (5, 4)]).unwrap();
        assert_eq!(p.reduction_of_closure(), p.covers());
    }
}
