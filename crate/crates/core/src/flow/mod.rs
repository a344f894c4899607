//! Normalized flows between consecutive ranks, decided exactly.
//!
//! For a layer `A = P_i`, `B = P_{i+1}` a normalized flow assigns `f(a,b) ≥ 0`
//! to each cover with `Σ_b f(a,b) = ν(a)/ν(A)` and `Σ_a f(a,b) = ν(b)/ν(B)`.
//! Supplies `ν(a)ν(B)` and demands `ν(b)ν(A)` are scaled to integers and fed
//! to an integral max-flow; a saturating flow is a certificate, otherwise the
//! min cut gives a Hall violation `ν(S)/ν(A) > ν(N(S))/ν(B)`.

mod antichain;
mod dinic;
mod io;
mod report;

use std::collections::{BTreeMap, HashMap};

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poset::{Partition, Poset, WeightFunction};
use dinic::Dinic;

pub use antichain::{
    k_family_size, k_family_size_min_cost, k_family_sizes, max_antichain, max_k_family,
    AntichainWitness, K_FAMILY_BRUTE_FORCE_LIMIT,
};
pub use io::Witness;
pub use report::{sperner_report, KFamilyRow, SpernerReport, SpernerVerdict};

/// Flow values on the covers between ranks `rank` and `rank + 1`. Edges are
/// sorted and carry only nonzero values; absent covers carry zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowLayer {
    pub rank: usize,
    pub edges: Vec<(usize, usize, BigRational)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FlowCertificate {
    pub layers: Vec<FlowLayer>,
}

/// `S ⊆ P_rank` whose neighbourhood `N(S) ⊆ P_{rank+1}` is too light:
/// `lhs = ν(S)/ν(P_rank) > rhs = ν(N(S))/ν(P_{rank+1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutWitness {
    pub rank: usize,
    pub subset: Vec<usize>,
    pub neighborhood: Vec<usize>,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl CutWitness {
    /// Re-checks the witness against `poset` from scratch.
    pub fn verify(&self, poset: &Poset, weights: &WeightFunction) -> bool {
        let Ok(levels) = poset.rank_levels() else {
            return false;
        };
        if self.rank + 1 >= levels.len() || weights.len() != poset.len() {
            return false;
        }
        let (a, b) = (&levels[self.rank], &levels[self.rank + 1]);
        if self.subset.is_empty() || !self.subset.iter().all(|x| a.contains(x)) {
            return false;
        }
        let mut nbhd: Vec<usize> = self
            .subset
            .iter()
            .flat_map(|&x| poset.upper_covers(x).iter().copied())
            .collect();
        nbhd.sort_unstable();
        nbhd.dedup();
        let (wa, wb) = (weights.total(a), weights.total(b));
        if wa.is_zero() || wb.is_zero() {
            return false;
        }
        let lhs = weights.total(&self.subset) / wa;
        let rhs = weights.total(&nbhd) / wb;
        nbhd == self.neighborhood && lhs == self.lhs && rhs == self.rhs && lhs > rhs
    }
}

fn lcm_of_denominators<'a>(values: impl Iterator<Item = &'a BigRational>) -> BigInt {
    values.fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

fn to_i128(x: &BigInt, what: &str) -> Result<i128> {
    x.to_i128()
        .filter(|v| v.unsigned_abs() < 1u128 << 100)
        .ok_or_else(|| Error::Resource(format!("{what} does not fit the integral flow range")))
}

/// Decides one layer. `edges` are covers `(a, b)` with `a ∈ A`, `b ∈ B`;
/// all indices refer to `weights`.
pub fn layer_flow(
    rank: usize,
    a: &[usize],
    b: &[usize],
    edges: &[(usize, usize)],
    weights: &WeightFunction,
) -> Result<std::result::Result<FlowLayer, CutWitness>> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::DegenerateInput(format!("layer {rank} has an empty side")));
    }
    let (wa, wb) = (weights.total(a), weights.total(b));
    if !wa.is_positive() || !wb.is_positive() {
        return Err(Error::DegenerateInput(format!(
            "layer {rank} has a side of total weight zero"
        )));
    }
    let supply: Vec<BigRational> = a.iter().map(|&x| weights.get(x) * &wb).collect();
    let demand: Vec<BigRational> = b.iter().map(|&y| weights.get(y) * &wa).collect();
    let scale = BigRational::from_integer(lcm_of_denominators(supply.iter().chain(&demand)));
    let total_q = &wa * &wb * &scale;
    let total = to_i128(total_q.numer(), "layer total")?;

    let pos_a: HashMap<usize, usize> = a.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let pos_b: HashMap<usize, usize> = b.iter().enumerate().map(|(i, &y)| (y, i)).collect();
    let (s, t) = (a.len() + b.len(), a.len() + b.len() + 1);
    let mut net = Dinic::new(a.len() + b.len() + 2);
    for (i, v) in supply.iter().enumerate() {
        net.add_arc(s, i, to_i128((v * &scale).numer(), "supply")?);
    }
    let mut sorted: Vec<(usize, usize)> = edges.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut arc_ids = Vec::with_capacity(sorted.len());
    for &(x, y) in &sorted {
        let (Some(&i), Some(&j)) = (pos_a.get(&x), pos_b.get(&y)) else {
            return Err(Error::Domain(format!(
                "edge ({x}, {y}) does not join the two sides of layer {rank}"
            )));
        };
        arc_ids.push(net.add_arc(i, a.len() + j, total));
    }
    for (j, v) in demand.iter().enumerate() {
        net.add_arc(a.len() + j, t, to_i128((v * &scale).numer(), "demand")?);
    }

    if net.max_flow(s, t) == total {
        let denom = BigInt::from(total);
        let edges = sorted
            .iter()
            .zip(&arc_ids)
            .filter_map(|(&(x, y), &id)| {
                let f = net.flow(id);
                (f > 0).then(|| (x, y, BigRational::new(BigInt::from(f), denom.clone())))
            })
            .collect();
        return Ok(Ok(FlowLayer { rank, edges }));
    }
    let reach = net.reachable(s);
    let subset: Vec<usize> = {
        let mut v: Vec<usize> = (0..a.len()).filter(|&i| reach[i]).map(|i| a[i]).collect();
        v.sort_unstable();
        v
    };
    let mut neighborhood: Vec<usize> = sorted
        .iter()
        .filter(|(x, _)| subset.binary_search(x).is_ok())
        .map(|&(_, y)| y)
        .collect();
    neighborhood.sort_unstable();
    neighborhood.dedup();
    let lhs = weights.total(&subset) / &wa;
    let rhs = weights.total(&neighborhood) / &wb;
    if lhs <= rhs {
        return Err(Error::Internal(format!("layer {rank}: min cut is not a Hall violation")));
    }
    Ok(Err(CutWitness {
        rank,
        subset,
        neighborhood,
        lhs,
        rhs,
    }))
}

fn layer_edges(poset: &Poset, level: &[usize]) -> Vec<(usize, usize)> {
    level
        .iter()
        .flat_map(|&x| poset.upper_covers(x).iter().map(move |&y| (x, y)))
        .collect()
}

/// Runs [`layer_flow`] on every pair of consecutive ranks (in parallel).
/// Returns the certificate, or the witness of the lowest failing layer.
pub fn normalized_flow(
    poset: &Poset,
    weights: &WeightFunction,
) -> Result<std::result::Result<FlowCertificate, CutWitness>> {
    weights.validate(poset)?;
    let levels = poset.rank_levels()?;
    let results: Vec<_> = (0..levels.len().saturating_sub(1))
        .into_par_iter()
        .map(|i| {
            let edges = layer_edges(poset, &levels[i]);
            layer_flow(i, &levels[i], &levels[i + 1], &edges, weights)
        })
        .collect();
    let mut layers = Vec::with_capacity(results.len());
    for r in results {
        match r? {
            Ok(layer) => layers.push(layer),
            Err(cut) => return Ok(Err(cut)),
        }
    }
    Ok(Ok(FlowCertificate { layers }))
}

/// Exact re-check of both families of equations, independent of how the
/// certificate was produced.
pub fn verify_flow(poset: &Poset, weights: &WeightFunction, cert: &FlowCertificate) -> bool {
    let (Ok(levels), Ok(ranks)) = (poset.rank_levels(), poset.require_ranks()) else {
        return false;
    };
    if weights.len() != poset.len() || cert.layers.len() != levels.len().saturating_sub(1) {
        return false;
    }
    let mut out: Vec<BigRational> = vec![BigRational::zero(); poset.len()];
    let mut inn: Vec<BigRational> = vec![BigRational::zero(); poset.len()];
    for (i, layer) in cert.layers.iter().enumerate() {
        if layer.rank != i {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        for (x, y, f) in &layer.edges {
            let (x, y) = (*x, *y);
            if x >= poset.len()
                || y >= poset.len()
                || ranks[x] != i
                || poset.upper_covers(x).binary_search(&y).is_err()
                || f.is_negative()
                || !seen.insert((x, y))
            {
                return false;
            }
            out[x] += f;
            inn[y] += f;
        }
    }
    let totals: Vec<BigRational> = levels.iter().map(|l| weights.total(l)).collect();
    if levels.len() > 1 && totals.iter().any(|t| t.is_zero()) {
        return false;
    }
    for (i, level) in levels.iter().enumerate() {
        for &x in level {
            let want = || weights.get(x) / &totals[i];
            if i + 1 < levels.len() && out[x] != want() {
                return false;
            }
            if i > 0 && inn[x] != want() {
                return false;
            }
        }
    }
    true
}

/// Lifts a verified flow on `poset / partition` (weights `|O|`) to a flow on
/// `poset` with `ν ≡ 1`, spreading `f_Q(O, O′)` evenly over the covers between
/// the two orbits. The result is verified before it is returned.
pub fn lift_flow_from_quotient(
    poset: &Poset,
    partition: &Partition,
    quotient_cert: &FlowCertificate,
) -> Result<FlowCertificate> {
    let (quotient, qweights) = poset.quotient(partition)?;
    if !verify_flow(&quotient, &qweights, quotient_cert) {
        return Err(Error::Domain(
            "the quotient certificate does not verify on the quotient poset".to_string(),
        ));
    }
    let block = |x: usize| partition.block_of(x).expect("complete partition");
    let mut between: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for &(x, y) in poset.covers() {
        between.entry((block(x), block(y))).or_default().push((x, y));
    }
    for (&(o, o2), edges) in &between {
        let blocks = partition.blocks();
        let mut up = vec![0usize; poset.len()];
        let mut down = vec![0usize; poset.len()];
        for &(x, y) in edges {
            up[x] += 1;
            down[y] += 1;
        }
        let regular = blocks[o].iter().all(|&x| up[x] * blocks[o].len() == edges.len())
            && blocks[o2].iter().all(|&y| down[y] * blocks[o2].len() == edges.len());
        if !regular {
            return Err(Error::NotAnAutomorphismAction(format!(
                "covers between orbits {o} and {o2} do not form a biregular graph"
            )));
        }
    }
    let ranks = poset.require_ranks()?;
    let mut layers: Vec<FlowLayer> = quotient_cert
        .layers
        .iter()
        .map(|l| FlowLayer {
            rank: l.rank,
            edges: Vec::new(),
        })
        .collect();
    for layer in &quotient_cert.layers {
        for (o, o2, f) in &layer.edges {
            let Some(edges) = between.get(&(*o, *o2)) else {
                continue;
            };
            let share = f / BigRational::from_integer(edges.len().into());
            for &(x, y) in edges {
                layers[ranks[x]].edges.push((x, y, share.clone()));
            }
        }
    }
    for l in &mut layers {
        l.edges.sort_unstable_by(|p, q| (p.0, p.1).cmp(&(q.0, q.1)));
    }
    let cert = FlowCertificate { layers };
    if !verify_flow(poset, &WeightFunction::unit(poset.len()), &cert) {
        return Err(Error::Internal("lifted flow failed verification".to_string()));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::gmpn::GmpnGroup;
    use crate::orders::build_prefix_order;
    use crate::group::{conjugacy_classes, ReflectionGroup};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn complete_bipartite_is_uniform() {
        let w = WeightFunction::unit(5);
        let edges: Vec<(usize, usize)> = (0..3).flat_map(|a| (3..5).map(move |b| (a, b))).collect();
        let layer = layer_flow(0, &[0, 1, 2], &[3, 4], &edges, &w).unwrap().unwrap();
        for a in 0..3 {
            let out: BigRational = layer.edges.iter().filter(|e| e.0 == a).map(|e| e.2.clone()).sum();
            assert_eq!(out, q(1, 3));
        }
        for b in 3..5 {
            let inn: BigRational = layer.edges.iter().filter(|e| e.1 == b).map(|e| e.2.clone()).sum();
            assert_eq!(inn, q(1, 2));
        }
    }

    #[test]
    fn missing_edge_gives_cut() {
        let w = WeightFunction::unit(3);
        let cut = layer_flow(0, &[0, 1], &[2], &[(0, 2)], &w).unwrap().unwrap_err();
        assert_eq!(cut.subset, [1]);
        assert!(cut.neighborhood.is_empty());
        assert_eq!((cut.lhs, cut.rhs), (q(1, 2), q(0, 1)));
    }

    #[test]
    fn degenerate_layers() {
        let w = WeightFunction::unit(2);
        assert!(matches!(layer_flow(0, &[], &[1], &[], &w), Err(Error::DegenerateInput(_))));
        let z = WeightFunction::new(vec![q(0, 1), q(1, 1)]);
        assert!(matches!(layer_flow(0, &[0], &[1], &[(0, 1)], &z), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn weighted_chain_quotient() {
        // quotient of abs(S_3): ranks of weights 1, 3, 2 joined by single edges
        let p = Poset::chain(3);
        let w = WeightFunction::new(vec![q(1, 1), q(3, 1), q(2, 1)]);
        let cert = normalized_flow(&p, &w).unwrap().unwrap();
        assert!(verify_flow(&p, &w, &cert));
        assert_eq!(cert.layers[0].edges, [(0, 1, q(1, 1))]);
    }

    #[test]
    fn claw_certificate() {
        let p = Poset::claw(5).unwrap();
        let w = WeightFunction::unit(5);
        let cert = normalized_flow(&p, &w).unwrap().unwrap();
        assert_eq!(cert.layers.len(), 1);
        assert!(cert.layers[0].edges.iter().all(|(_, _, f)| *f == q(1, 4)));
        assert!(verify_flow(&p, &w, &cert));
    }

    #[test]
    fn perturbed_certificate_fails() {
        let p = Poset::claw(3).unwrap();
        let w = WeightFunction::unit(3);
        let mut cert = normalized_flow(&p, &w).unwrap().unwrap();
        cert.layers[0].edges[0].2 += q(1, 1000);
        assert!(!verify_flow(&p, &w, &cert));
    }

    #[test]
    fn hand_written_k22() {
        let p = Poset::from_covers(
            (0..4).map(|i| i.to_string()).collect(),
            &[(0, 2), (0, 3), (1, 2), (1, 3)],
        )
        .unwrap();
        let cert = FlowCertificate {
            layers: vec![FlowLayer {
                rank: 0,
                edges: vec![(0, 2, q(1, 4)), (0, 3, q(1, 4)), (1, 2, q(1, 4)), (1, 3, q(1, 4))],
            }],
        };
        assert!(verify_flow(&p, &WeightFunction::unit(4), &cert));
    }

    #[test]
    fn unranked_is_state_error() {
        let p = Poset::from_covers(
            (0..4).map(|i| i.to_string()).collect(),
            &[(0, 1), (1, 3), (0, 2)],
        )
        .unwrap()
        .with_ranks(None)
        .unwrap();
        assert!(matches!(normalized_flow(&p, &WeightFunction::unit(4)), Err(Error::State(_))));
    }

    fn abs(m: u32, p: u32, n: usize) -> (GmpnGroup, Poset) {
        let g = GmpnGroup::new(m, p, n, &Budget::default()).unwrap();
        let poset = build_prefix_order(&g, &Budget::default()).unwrap();
        (g, poset)
    }

    #[test]
    fn group_flows() {
        for (m, p, n) in [(2, 1, 3), (3, 3, 2), (5, 5, 2)] {
            let (_, poset) = abs(m, p, n);
            let w = WeightFunction::unit(poset.len());
            let cert = normalized_flow(&poset, &w).unwrap().unwrap();
            assert!(verify_flow(&poset, &w, &cert));
        }
    }

    #[test]
    fn lift_trivial_partition_is_identity() {
        let (_, poset) = abs(2, 1, 2);
        let part = Partition::singletons(poset.len());
        let w = WeightFunction::unit(poset.len());
        let cert = normalized_flow(&poset, &w).unwrap().unwrap();
        assert_eq!(lift_flow_from_quotient(&poset, &part, &cert).unwrap(), cert);
    }

    #[test]
    fn lift_from_conjugacy_quotient() {
        for (m, p, n) in [(1, 1, 3), (2, 2, 3), (4, 2, 2)] {
            let (g, poset) = abs(m, p, n);
            let part = conjugacy_classes(&g);
            let (qp, qw) = poset.quotient(&part).unwrap();
            let full = normalized_flow(&poset, &WeightFunction::unit(g.order())).unwrap();
            match normalized_flow(&qp, &qw).unwrap() {
                Ok(qc) => {
                    assert!(full.is_ok());
                    lift_flow_from_quotient(&poset, &part, &qc).unwrap();
                }
                Err(_) => assert!(full.is_err()),
            }
        }
    }

    #[test]
    fn lift_rejects_non_orbits() {
        // a "V" with an extra cover: {1,2} is not an orbit
        let p = Poset::from_covers(
            (0..4).map(|i| i.to_string()).collect(),
            &[(0, 1), (0, 2), (1, 3)],
        )
        .unwrap();
        let part = Partition::new(vec![vec![0], vec![1, 2], vec![3]], 4).unwrap();
        let (qp, qw) = p.quotient(&part).unwrap();
        let qc = normalized_flow(&qp, &qw).unwrap().unwrap();
        assert!(matches!(
            lift_flow_from_quotient(&p, &part, &qc),
            Err(Error::NotAnAutomorphismAction(_))
        ));
    }
}
