mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use reflection_sperner::budget::Budget;
use reflection_sperner::coxeter::{CoxeterGroup, CoxeterType};
use reflection_sperner::flow::{
    k_family_size_min_cost, k_family_sizes, layer_flow, lift_flow_from_quotient, max_antichain,
    normalized_flow, sperner_report, verify_flow, SpernerVerdict, Witness,
};
use reflection_sperner::gmpn::GmpnGroup;
use reflection_sperner::group::{conjugacy_classes, ReflectionGroup};
use reflection_sperner::orders::{build_prefix_order, build_prefix_order_pairwise};
use reflection_sperner::poset::{Poset, WeightFunction};

fn g(m: u32, p: u32, n: usize) -> GmpnGroup {
    GmpnGroup::new(m, p, n, &Budget::default()).unwrap()
}

fn brute_antichain(p: &Poset) -> usize {
    let less = common::comparable(p);
    let n = p.len();
    (0u32..1 << n)
        .filter(|s| {
            (0..n).all(|i| {
                s >> i & 1 == 0 || (0..n).all(|j| s >> j & 1 == 0 || !less[i][j])
            })
        })
        .map(u32::count_ones)
        .max()
        .unwrap() as usize
}

#[test]
fn k_family_sizes_match_colouring() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let p = common::random_poset(&mut rng, 10);
        let d = k_family_sizes(&p, 20).unwrap();
        for k in 1..d.len() {
            assert_eq!(d[k], common::k_family_by_colouring(&p, k), "k = {k}");
        }
        assert_eq!(*d.last().unwrap(), p.len());
    }
}

#[test]
fn min_cost_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let n = rng.gen_range(1..=14);
        let p = common::random_poset(&mut rng, n);
        let d = k_family_sizes(&p, 20).unwrap();
        for (k, &dk) in d.iter().enumerate() {
            assert_eq!(k_family_size_min_cost(&p, k), dk, "k = {k}");
        }
    }
}

#[test]
fn max_antichain_is_maximum() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let n = rng.gen_range(1..=13);
        let p = common::random_poset(&mut rng, n);
        let a = max_antichain(&p);
        assert!(a.verify(&p));
        assert_eq!(a.len(), brute_antichain(&p));
    }
}

#[test]
fn adding_edges_keeps_a_flow() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut seen = 0;
    for _ in 0..500 {
        let (na, nb) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let a: Vec<usize> = (0..na).collect();
        let b: Vec<usize> = (na..na + nb).collect();
        let w = WeightFunction::new(
            (0..na + nb)
                .map(|_| num::BigRational::from_integer(rng.gen_range(1..=4).into()))
                .collect(),
        );
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for &x in &a {
            for &y in &b {
                if rng.gen_bool(0.5) {
                    edges.push((x, y));
                }
            }
        }
        let before = layer_flow(0, &a, &b, &edges, &w).unwrap();
        match &before {
            Ok(layer) => {
                let x = a[rng.gen_range(0..na)];
                let y = b[rng.gen_range(0..nb)];
                if !edges.contains(&(x, y)) {
                    edges.push((x, y));
                }
                assert!(layer_flow(0, &a, &b, &edges, &w).unwrap().is_ok());
                assert!(layer.edges.iter().all(|(x, y, _)| edges.contains(&(*x, *y))));
                seen += 1;
            }
            Err(cut) => assert!(cut.lhs > cut.rhs),
        }
    }
    assert!(seen > 50);
}

#[test]
fn prefix_order_matches_pairwise_build() {
    let mut groups: Vec<Box<dyn ReflectionGroup>> = vec![
        Box::new(g(2, 1, 3)),
        Box::new(g(3, 1, 3)),
        Box::new(g(4, 2, 2)),
        Box::new(g(6, 3, 2)),
        Box::new(g(4, 4, 3)),
        Box::new(g(2, 2, 4)),
        Box::new(g(10, 5, 2)),
        Box::new(CoxeterGroup::build(CoxeterType::H3, &Budget::default()).unwrap()),
    ];
    groups.push(Box::new(g(1, 1, 5)));
    for grp in &groups {
        assert!(grp.order() <= 500);
        let fast = build_prefix_order(grp.as_ref(), &Budget::default()).unwrap();
        let slow = build_prefix_order_pairwise(grp.as_ref(), &Budget::default()).unwrap();
        let mut a = fast.covers().to_vec();
        let mut b = slow.covers().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b, "{}", grp.name());
    }
}

#[test]
fn quotient_flow_iff_full_flow() {
    let groups: Vec<Box<dyn ReflectionGroup>> = vec![
        Box::new(g(2, 1, 3)),
        Box::new(g(3, 1, 2)),
        Box::new(g(4, 2, 2)),
        Box::new(g(5, 5, 2)),
        Box::new(g(2, 2, 3)),
        Box::new(g(2, 2, 4)),
        Box::new(g(1, 1, 4)),
        Box::new(CoxeterGroup::build(CoxeterType::H3, &Budget::default()).unwrap()),
    ];
    for grp in &groups {
        let p = build_prefix_order(grp.as_ref(), &Budget::default()).unwrap();
        let w = WeightFunction::unit(p.len());
        let classes = conjugacy_classes(grp.as_ref());
        let (q, qw) = p.quotient(&classes).unwrap();
        let full = normalized_flow(&p, &w).unwrap();
        let quot = normalized_flow(&q, &qw).unwrap();
        assert_eq!(full.is_ok(), quot.is_ok(), "{}", grp.name());
        if let Ok(qc) = quot {
            let lifted = lift_flow_from_quotient(&p, &classes, &qc).unwrap();
            assert!(verify_flow(&p, &w, &lifted));
        }
    }
}

#[test]
fn negative_witnesses_are_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut negative = 0;
    for _ in 0..300 {
        let p = common::random_ranked_poset(&mut rng, 12);
        let r = sperner_report(&p).unwrap();
        let w = WeightFunction::unit(p.len());
        match r.verdict {
            SpernerVerdict::Positive => {
                assert!(verify_flow(&p, &w, r.certificate.as_ref().unwrap()));
            }
            SpernerVerdict::Negative => {
                negative += 1;
                let wit = r.witness.as_ref().unwrap();
                let (lhs, rhs) = wit.comparison();
                assert!(lhs > rhs);
                assert!(wit.verify(&p, &w));
                let back = Witness::from_json(&wit.to_json()).unwrap();
                assert!(back.verify(&p, &w));
            }
            SpernerVerdict::Inconclusive => {
                let cut = r.cut.as_ref().unwrap();
                assert!(cut.lhs > cut.rhs);
                assert!(cut.verify(&p, &w));
            }
        }
    }
    assert!(negative > 0);
}

#[test]
fn shi_formula_matches_breadth_first_search() {
    for (m, p, n) in [
        (1, 1, 2), (1, 1, 3), (1, 1, 4), (2, 1, 2), (2, 1, 3), (2, 1, 4), (3, 1, 2), (3, 1, 3),
        (4, 1, 2), (4, 1, 3), (5, 1, 2), (2, 2, 2), (2, 2, 3), (2, 2, 4), (4, 2, 2), (3, 3, 3),
    ] {
        let grp = g(m, p, n);
        let oracle = common::bfs_lengths(&common::elements(m, p, n));
        assert_eq!(oracle.len(), grp.order());
        for u in 0..grp.order() {
            let e = grp.element(u);
            assert_eq!(grp.reflection_length(u), oracle[&e], "G({m},{p},{n}) {e:?}");
            assert_eq!(grp.codim(u), common::float_codim(&e));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prefix_lengths_add_along_covers(m in 1u32..6, n in 1usize..4) {
        let grp = g(m, 1, n);
        let p = build_prefix_order(&grp, &Budget::default()).unwrap();
        for &(x, y) in p.covers() {
            prop_assert_eq!(grp.reflection_length(x) + 1, grp.reflection_length(y));
            let t = grp.multiply(grp.inverse(x), y);
            prop_assert!(grp.reflections().binary_search(&t).is_ok());
        }
    }

    #[test]
    fn multiplication_is_associative(m in 1u32..7, seed in any::<u64>()) {
        let grp = g(m, 1, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pick = || rng.gen_range(0..grp.order());
        let (a, b, c) = (pick(), pick(), pick());
        prop_assert_eq!(
            grp.multiply(grp.multiply(a, b), c),
            grp.multiply(a, grp.multiply(b, c))
        );
        prop_assert_eq!(grp.multiply(a, grp.inverse(a)), grp.identity());
    }
}
