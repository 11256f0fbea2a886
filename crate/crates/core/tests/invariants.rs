//! Property tests for the invariants the checkers and constructions promise.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use regforge_core::construct::{blow_up, convex_decompose, hypergraph_from_bipartite, tight_cycle};
use regforge_core::delta::{is_pair_delta_regular, is_vertex_partition_delta_regular, EditCertificate, EditMode};
use regforge_core::growth::TowerInt;
use regforge_core::hypergraph::aux_graph;
use regforge_core::limits::Caps;
use regforge_core::partition::random_kpartition;
use regforge_core::rational::{int, ratio};
use regforge_core::rs::is_eps_regular_in_polyad;
use regforge_core::{BipartiteGraph, Edge, KGraph, Partition, Polyad, Rational, VertexLayout};

fn graph_on(n: usize, bits: u64) -> KGraph {
    let layout = Arc::new(VertexLayout::uniform(2, n));
    let pairs = (0..n * n).filter(|j| bits >> j & 1 == 1).map(|j| (j / n, j % n));
    KGraph::from_bipartite(layout, &BipartiteGraph::from_pairs(n, n, pairs)).unwrap()
}

fn partition_from(labels: &[usize]) -> Partition {
    Partition::from_labels(labels)
}

prop_compose! {
    fn two_partitions()(n in 2usize..16)
        (p in prop::collection::vec(0usize..4, n), q in prop::collection::vec(0usize..6, n)) -> (Partition, Partition) {
        (partition_from(&q), partition_from(&p))
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn approx_refinement_at_zero_is_refinement((q, p) in two_partitions()) {
        prop_assert_eq!(q.approx_refines(&p, &int(0)).unwrap().verdict, q.refines(&p).unwrap());
    }

    #[test]
    fn approx_refinement_is_monotone_in_beta((q, p) in two_partitions(), a in 0i64..8, b in 0i64..8) {
        let (lo, hi) = (ratio(a.min(b), 8), ratio(a.max(b), 8));
        if q.approx_refines(&p, &lo).unwrap().verdict {
            prop_assert!(q.approx_refines(&p, &hi).unwrap().verdict);
        }
    }

    #[test]
    fn pair_regularity_is_monotone_in_delta(n in 2usize..5, bits in any::<u64>(), a in 1i64..8, b in 1i64..8) {
        let g = graph_on(n, bits);
        let (lo, hi) = (ratio(a.min(b), 8), ratio(a.max(b), 8));
        let caps = Caps::default();
        if is_pair_delta_regular(&g, &lo, &caps).unwrap().verdict {
            prop_assert!(is_pair_delta_regular(&g, &hi, &caps).unwrap().verdict);
        }
    }

    #[test]
    fn acceptance_is_monotone_in_mode_strength(n in 2usize..4, bits in any::<u64>(), a in 1i64..4) {
        let g = graph_on(n, bits);
        let p = Partition::new(2 * n, vec![(0..n as u32).collect(), (n as u32..2 * n as u32).collect()]).unwrap();
        let delta = ratio(a, 4);
        let caps = Caps::default();
        let check = |mode: &EditMode| is_vertex_partition_delta_regular(&g, &p, &delta, mode, &caps).unwrap().verdict;
        let empty = EditMode::Certificate(EditCertificate { added: BTreeSet::new(), removed: BTreeSet::new() });
        if check(&EditMode::Perfect) {
            prop_assert!(check(&empty));
        }
        if check(&empty) && g.edge_count() <= caps.search_edges {
            prop_assert!(check(&EditMode::Search));
        }
    }

    #[test]
    fn aux_round_trip(k in 2usize..5, seed in any::<u64>()) {
        use rand::Rng;
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let layout = Arc::new(VertexLayout::uniform(k, 2));
        let left = 1 << (k - 1);
        let pairs: Vec<(usize, usize)> = (0..left).flat_map(|a| (0..2).map(move |b| (a, b))).filter(|_| r.random_bool(0.5)).collect();
        let g = BipartiteGraph::from_pairs(left, 2, pairs);
        let h = hypergraph_from_bipartite(layout, &g).unwrap();
        prop_assert_eq!(h.edge_count(), g.edge_count());
        let back = aux_graph(&h, k - 1).unwrap();
        prop_assert_eq!(back.graph(), &g);
    }

    #[test]
    fn convex_decomposition_is_exact(nums in prop::collection::vec(0i64..=10, 1..8), den in 1i64..=10) {
        let x: Vec<Rational> = nums.iter().map(|&a| ratio(a.min(den), den)).collect();
        let terms = convex_decompose(&x).unwrap();
        prop_assert!(terms.len() <= x.len() + 1);
        prop_assert_eq!(terms.iter().map(|t| t.weight.clone()).sum::<Rational>(), int(1));
        for (i, xi) in x.iter().enumerate() {
            let back: Rational = terms.iter().filter(|t| t.vector[i]).map(|t| t.weight.clone()).sum();
            prop_assert_eq!(&back, xi);
        }
    }

    #[test]
    fn blow_up_preserves_density(n in 1usize..4, bits in any::<u64>(), m in 1usize..4) {
        let g = graph_on(n, bits);
        let (b, map) = blow_up(&g, m).unwrap();
        prop_assert_eq!(b.density(), g.density());
        prop_assert_eq!(b.edge_count(), g.edge_count() * m * m);
        for e in b.edges() {
            let [u, v] = [e.vertices()[0], e.vertices()[1]];
            prop_assert!(g.contains(&Edge::pair(map.origin(u), map.origin(v))));
        }
    }

    #[test]
    fn generated_partitions_validate(k in 2usize..5, n in 1usize..4, seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let layout = Arc::new(VertexLayout::uniform(k, n));
        let p = random_kpartition(layout, k - 1, 2, 3, &mut r);
        prop_assert!(p.validate().verdict);
        let all: Vec<usize> = (0..k).collect();
        prop_assert_eq!(p.restrict_hierarchy(&all).unwrap(), p);
    }

    #[test]
    fn eps_regularity_widens_with_eps(bits in any::<u16>(), hbits in any::<u8>(), a in 1i64..8, b in 1i64..8) {
        let layout = Arc::new(VertexLayout::uniform(3, 2));
        let complete = Polyad::complete(layout.clone()).unwrap();
        let mut j = 0;
        let parts: Vec<BTreeSet<Edge>> = complete
            .parts()
            .iter()
            .map(|part| part.iter().filter(|_| { j += 1; bits >> (j - 1) & 1 == 1 }).cloned().collect())
            .collect();
        let Ok(p) = Polyad::new(layout.clone(), parts) else { return Ok(()) };
        let cliques: Vec<Edge> = p.cliques().edges().iter().cloned().collect();
        let h = KGraph::new(layout, 3, cliques.into_iter().enumerate().filter(|(i, _)| hbits >> (i % 8) & 1 == 1).map(|(_, e)| e)).unwrap();
        let (lo, hi) = (ratio(a.min(b), 8), ratio(a.max(b), 8));
        let caps = Caps::default();
        let d = h.density();
        if is_eps_regular_in_polyad(&h, &p, &lo, Some(&d), &caps).unwrap().verdict {
            prop_assert!(is_eps_regular_in_polyad(&h, &p, &hi, Some(&d), &caps).unwrap().verdict);
        }
    }

    #[test]
    fn tower_order_matches_integers(a in 0u32..3000, b in 0u32..3000, x in 0u64..1000, y in 0u64..1000) {
        let big = |e: u32, c: u64| (BigUint::from(1u8) << e) + BigUint::from(c);
        let (ba, bb) = (big(a, x), big(b, y));
        let (ta, tb) = (TowerInt::from_biguint(ba.clone()), TowerInt::from_biguint(bb.clone()));
        prop_assert_eq!(ta.cmp(&tb), ba.cmp(&bb));
        prop_assert_eq!(ta == tb, ba == bb);
    }
}

#[test]
fn tight_cycles_are_k_partite() {
    for k in 2..=6 {
        let b = tight_cycle(k).unwrap();
        assert_eq!(b.edge_count(), 2 * k);
        assert!(b.edges().iter().all(|e| b.layout().is_crossing(e)));
    }
}
