//! Prefix and codimension orders on an enumerated reflection group.
//!
//! `u ≤ v` in the prefix order when `ℓ_R(u) + ℓ_R(u⁻¹v) = ℓ_R(v)`; in the
//! codimension order when the same identity holds for fixed-space
//! codimensions. When the two coincide the result is the absolute order.

mod claw;
mod type_d;

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::ReflectionGroup;
use crate::poset::Poset;

pub use claw::{claw_blocks, claw_decompose, claw_embedding, ClawEmbedding};
pub use type_d::{claw_partition_search, type_d_block_sizes, ClawPartition};

/// Pairwise constructions hold an `n × n` bit matrix.
pub const PAIRWISE_ELEMENT_LIMIT: usize = 30_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Prefix,
    Codim,
    /// Valid only when the prefix and codimension orders coincide.
    Absolute,
}

impl FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "prefix" | "pre" => Ok(OrderKind::Prefix),
            "codim" | "co" => Ok(OrderKind::Codim),
            "abs" | "absolute" => Ok(OrderKind::Absolute),
            other => Err(Error::Parameter(format!(
                "unknown order kind {other:?}; expected prefix, codim, or abs"
            ))),
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Prefix => "prefix",
            OrderKind::Codim => "codim",
            OrderKind::Absolute => "abs",
        })
    }
}

/// The prefix order, ranked by reflection length.
///
/// Covers are `u ⋖ ut` for reflections `t` with `ℓ_R(ut) = ℓ_R(u) + 1`.
pub fn build_prefix_order<G: ReflectionGroup + ?Sized>(g: &G, budget: &Budget) -> Result<Poset> {
    let n = g.order();
    budget.check_elements(&format!("prefix order on {}", g.name()), n as u128)?;
    let lengths: Vec<usize> = (0..n).map(|u| g.reflection_length(u)).collect();
    budget.check_time("reflection lengths")?;
    let nrefl = g.reflections().len();
    let covers: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|u| {
            let lengths = &lengths;
            (0..nrefl).filter_map(move |k| {
                let v = g.mul_reflection(u, k);
                (lengths[v] == lengths[u] + 1).then_some((u, v))
            })
        })
        .collect();
    budget.check_time("prefix covers")?;
    Poset::from_graded_covers(g.labels(), covers, lengths)
}

/// Full relation `u < v` from a length-like function `f` via
/// `f(u) + f(u⁻¹v) = f(v)`, as strict up-sets.
fn pairwise_relation<G, F>(g: &G, f: F, what: &str, budget: &Budget) -> Result<Vec<FixedBitSet>>
where
    G: ReflectionGroup + ?Sized,
    F: Fn(usize) -> usize + Sync,
{
    let n = g.order();
    if n > PAIRWISE_ELEMENT_LIMIT {
        return Err(Error::Resource(format!(
            "pairwise {what} on {} needs {n}^2 comparisons, limit is {PAIRWISE_ELEMENT_LIMIT} elements",
            g.name()
        )));
    }
    let values: Vec<usize> = (0..n).map(&f).collect();
    let up: Vec<FixedBitSet> = (0..n)
        .into_par_iter()
        .map(|u| {
            let inv = g.inverse(u);
            let mut row = FixedBitSet::with_capacity(n);
            for v in 0..n {
                if values[v] > values[u] && values[u] + f(g.multiply(inv, v)) == values[v] {
                    row.insert(v);
                }
            }
            row
        })
        .collect();
    budget.check_time(what)?;
    Ok(up)
}

/// The prefix order built directly from its defining identity on all pairs.
/// Quadratic; used to cross-check [`build_prefix_order`].
pub fn build_prefix_order_pairwise<G: ReflectionGroup + ?Sized>(g: &G, budget: &Budget) -> Result<Poset> {
    let up = pairwise_relation(g, |u| g.reflection_length(u), "prefix relation", budget)?;
    Ok(Poset::from_order_relation(g.labels(), &up))
}

/// The codimension order, transitively reduced. Ranked when a rank function
/// exists; not every group admits one.
pub fn build_codim_order<G: ReflectionGroup + ?Sized>(g: &G, budget: &Budget) -> Result<Poset> {
    let up = pairwise_relation(g, |u| g.codim(u), "codimension relation", budget)?;
    Ok(Poset::from_order_relation(g.labels(), &up))
}

/// The full codimension relation as strict up-sets, before reduction.
pub fn codim_relation<G: ReflectionGroup + ?Sized>(g: &G, budget: &Budget) -> Result<Vec<FixedBitSet>> {
    pairwise_relation(g, |u| g.codim(u), "codimension relation", budget)
}

/// A cover present in one order and absent from the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub lower: usize,
    pub upper: usize,
    /// Which order contains the cover.
    pub in_order: OrderKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderComparison {
    pub prefix: Poset,
    pub codim: Poset,
    pub first_difference: Option<Disagreement>,
}

impl OrderComparison {
    pub fn agree(&self) -> bool {
        self.first_difference.is_none()
    }
}

/// First difference between two sorted cover lists.
fn first_difference(pre: &[(usize, usize)], co: &[(usize, usize)]) -> Option<Disagreement> {
    let (mut i, mut j) = (0, 0);
    loop {
        match (pre.get(i), co.get(j)) {
            (None, None) => return None,
            (Some(&(a, b)), None) => {
                return Some(Disagreement { lower: a, upper: b, in_order: OrderKind::Prefix })
            }
            (None, Some(&(a, b))) => {
                return Some(Disagreement { lower: a, upper: b, in_order: OrderKind::Codim })
            }
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(&x), Some(&y)) => {
                return Some(if x < y {
                    Disagreement { lower: x.0, upper: x.1, in_order: OrderKind::Prefix }
                } else {
                    Disagreement { lower: y.0, upper: y.1, in_order: OrderKind::Codim }
                })
            }
        }
    }
}

/// Builds both orders and compares their relations. Both are stored as
/// transitive reductions, so equal cover lists mean equal relations.
pub fn orders_agree<G: ReflectionGroup + ?Sized>(g: &G, budget: &Budget) -> Result<OrderComparison> {
    let prefix = build_prefix_order(g, budget)?;
    let codim = build_codim_order(g, budget)?;
    let first_difference = first_difference(prefix.covers(), codim.covers());
    Ok(OrderComparison { prefix, codim, first_difference })
}

/// Builds the requested order. `Absolute` fails with a domain error naming
/// the first disagreeing pair when the two orders differ.
pub fn build_order<G: ReflectionGroup + ?Sized>(g: &G, kind: OrderKind, budget: &Budget) -> Result<Poset> {
    match kind {
        OrderKind::Prefix => build_prefix_order(g, budget),
        OrderKind::Codim => build_codim_order(g, budget),
        OrderKind::Absolute => {
            let cmp = orders_agree(g, budget)?;
            match cmp.first_difference {
                None => Ok(cmp.prefix),
                Some(d) => Err(Error::Domain(format!(
                    "prefix and codimension orders on {} differ: {} < {} is a cover only in the {} order",
                    g.name(),
                    g.label(d.lower),
                    g.label(d.upper),
                    d.in_order
                ))),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmpn::GmpnGroup;
    use crate::poset::RankPolynomial;

    fn g(m: u32, p: u32, n: usize) -> GmpnGroup {
        GmpnGroup::new(m, p, n, &Budget::default()).unwrap()
    }

    #[test]
    fn prefix_examples() {
        let b = Budget::default();
        let s3 = build_prefix_order(&g(1, 1, 3), &b).unwrap();
        assert_eq!(s3.rank_polynomial().unwrap(), RankPolynomial::from_ints(&[1, 3, 2]));
        let b2 = build_prefix_order(&g(2, 1, 2), &b).unwrap();
        assert_eq!(b2.rank_polynomial().unwrap(), RankPolynomial::from_ints(&[1, 4, 3]));
    }

    #[test]
    fn codim_examples() {
        let b = Budget::default();
        let co = build_codim_order(&g(4, 2, 2), &b).unwrap();
        assert_eq!(co.rank_sizes().unwrap(), [1, 8, 7]);
        let grp = g(2, 1, 3);
        assert_eq!(build_codim_order(&grp, &b).unwrap(), build_prefix_order(&grp, &b).unwrap());
    }

    #[test]
    fn agreement_examples() {
        let b = Budget::default();
        assert!(orders_agree(&g(3, 1, 2), &b).unwrap().agree());
        assert!(orders_agree(&g(2, 2, 3), &b).unwrap().agree());
        let cmp = orders_agree(&g(4, 2, 2), &b).unwrap();
        assert!(!cmp.agree());
        assert!(matches!(build_order(&g(4, 2, 2), OrderKind::Absolute, &b), Err(Error::Domain(_))));
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("abs".parse::<OrderKind>().unwrap(), OrderKind::Absolute);
        assert_eq!("PREFIX".parse::<OrderKind>().unwrap(), OrderKind::Prefix);
        assert!("weak".parse::<OrderKind>().is_err());
    }
}
