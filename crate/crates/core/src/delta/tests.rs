use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::hypergraph::{Edge, KGraph, VertexLayout};
use crate::limits::Caps;
use crate::partition::{Cell, KPartition, Partition};
use crate::rational::{self, ratio, Rational};
use crate::report::Witness;

use super::*;

/// Definition-level oracle: every subset pair meeting the size bounds,
/// densities compared exactly.
fn oracle_regular(layout: &VertexLayout, edges: &[Edge], delta: &Rational) -> bool {
    let (a, b) = (layout.class(0), layout.class(1));
    let count = |xs: &[u32], ys: &[u32]| {
        edges.iter().filter(|e| xs.iter().any(|x| e.contains(*x)) && ys.iter().any(|y| e.contains(*y))).count()
    };
    let d = rational::frac(count(a, b), a.len() * b.len());
    let subsets = |side: &[u32]| -> Vec<Vec<u32>> {
        (1u32..1 << side.len())
            .map(|m| side.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &v)| v).collect::<Vec<_>>())
            .filter(|s| rational::int(s.len()) >= delta * rational::int(side.len()))
            .collect()
    };
    for x in subsets(a) {
        for y in subsets(b) {
            if rational::frac(count(&x, &y), x.len() * y.len()) < &d * rational::half() {
                return false;
            }
        }
    }
    true
}

fn bip(n: usize, pairs: &[(u32, u32)]) -> KGraph {
    let l = Arc::new(VertexLayout::uniform(2, n));
    KGraph::new(l, 2, pairs.iter().map(|&(a, b)| Edge::pair(a, b + n as u32))).unwrap()
}

fn caps() -> Caps {
    Caps::default()
}

#[test]
fn complete_and_empty_pairs_are_regular() {
    let full: Vec<(u32, u32)> = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).collect();
    for d in [ratio(1, 4), ratio(1, 2), ratio(1, 1)] {
        assert!(is_pair_delta_regular(&bip(4, &full), &d, &caps()).unwrap().verdict);
        assert!(is_pair_delta_regular(&bip(4, &[]), &d, &caps()).unwrap().verdict);
    }
}

#[test]
fn two_blocks_are_irregular() {
    let g = bip(4, &[(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (2, 3), (3, 2), (3, 3)]);
    let r = is_pair_delta_regular(&g, &ratio(1, 2), &caps()).unwrap();
    assert!(!r.verdict);
    match r.witness.unwrap() {
        Witness::Pair { left, right, density, threshold, .. } => {
            assert_eq!(density, ratio(0, 1));
            assert_eq!(threshold, ratio(1, 4));
            // The empty cross block of the two components.
            let cross = (left == vec![vec![0], vec![1]] && right == vec![6, 7])
                || (left == vec![vec![2], vec![3]] && right == vec![4, 5]);
            assert!(cross, "{left:?} {right:?}");
        }
        w => panic!("{w:?}"),
    }
    assert!(!oracle_regular(g.layout(), &g.edges().iter().cloned().collect::<Vec<_>>(), &ratio(1, 2)));
}

#[test]
fn pair_checker_matches_oracle_on_3x3() {
    let l = VertexLayout::uniform(2, 3);
    for mask in 0u32..1 << 9 {
        let pairs: Vec<(u32, u32)> = (0..9).filter(|i| mask >> i & 1 == 1).map(|i| (i / 3, i % 3)).collect();
        let g = bip(3, &pairs);
        let edges: Vec<Edge> = g.edges().iter().cloned().collect();
        for d in [ratio(1, 3), ratio(1, 2), ratio(2, 3), ratio(1, 1)] {
            let fast = is_pair_delta_regular(&g, &d, &caps()).unwrap().verdict;
            assert_eq!(fast, oracle_regular(&l, &edges, &d), "mask {mask} δ {d}");
        }
    }
}

#[test]
fn cap_is_enforced() {
    let g = bip(17, &[(0, 0)]);
    assert!(matches!(
        is_pair_delta_regular(&g, &ratio(1, 2), &caps()),
        Err(crate::Error::SidesTooLarge { .. })
    ));
}

fn whole_sides(n: usize) -> Partition {
    Partition::new(2 * n, vec![(0..n as u32).collect(), (n as u32..2 * n as u32).collect()]).unwrap()
}

#[test]
fn perfect_mode_accepts_regular_pairs() {
    let g = bip(2, &[(0, 0), (0, 1), (1, 0), (1, 1)]);
    let r = is_vertex_partition_delta_regular(&g, &whole_sides(2), &ratio(1, 2), &EditMode::Perfect, &caps()).unwrap();
    assert!(r.verdict);
    assert_eq!(r.edits_used, 0);
}

#[test]
fn search_finds_single_removal() {
    // Exhaustive over 3+3 graphs: the first one whose smallest repair is a
    // single removal must be accepted by search and rejected by perfect mode.
    let delta = ratio(2, 3);
    let mut found = false;
    for mask in 0u32..1 << 9 {
        let pairs: Vec<(u32, u32)> = (0..9).filter(|i| mask >> i & 1 == 1).map(|i| (i / 3, i % 3)).collect();
        let g = bip(3, &pairs);
        let p = whole_sides(3);
        let Some(cert) = find_edit_certificate(&g, &p, &delta, &caps()).unwrap() else { continue };
        if cert.removed.len() != 1 || !cert.added.is_empty() {
            continue;
        }
        // Independent confirmation: no repair with zero edits, and the
        // single removal gives a regular pair.
        let edges: Vec<Edge> = g.edges().iter().cloned().collect();
        assert!(!oracle_regular(g.layout(), &edges, &delta));
        let fixed: Vec<Edge> = edges.iter().filter(|e| !cert.removed.contains(e)).cloned().collect();
        assert!(oracle_regular(g.layout(), &fixed, &delta));
        assert!(edit_budget(&delta, edges.len()) >= 1);
        let search = is_vertex_partition_delta_regular(&g, &p, &delta, &EditMode::Search, &caps()).unwrap();
        assert!(search.verdict);
        assert_eq!(search.edits_used, 1);
        let perfect = is_vertex_partition_delta_regular(&g, &p, &delta, &EditMode::Perfect, &caps()).unwrap();
        assert!(!perfect.verdict);
        found = true;
        break;
    }
    assert!(found);
}

#[test]
fn certificate_over_budget_rejected() {
    let g = bip(2, &[(0, 0), (1, 1)]);
    let cert = EditCertificate {
        added: [Edge::pair(0, 3), Edge::pair(1, 2)].into(),
        removed: Default::default(),
    };
    let err = is_vertex_partition_delta_regular(&g, &whole_sides(2), &ratio(1, 2), &EditMode::Certificate(cert), &caps());
    assert_eq!(err, Err(crate::Error::BudgetExceeded { used: 2, budget: 1 }));
}

#[test]
fn certificate_must_match_graph() {
    let g = bip(2, &[(0, 0), (1, 1)]);
    let cert = EditCertificate { added: [Edge::pair(0, 2)].into(), removed: Default::default() };
    let err = is_vertex_partition_delta_regular(&g, &whole_sides(2), &ratio(1, 2), &EditMode::Certificate(cert), &caps());
    assert!(matches!(err, Err(crate::Error::InvalidCertificate(_))));
}

#[test]
fn search_cap() {
    let pairs: Vec<(u32, u32)> = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).collect();
    let err = is_vertex_partition_delta_regular(&bip(4, &pairs), &whole_sides(4), &ratio(1, 2), &EditMode::Search, &caps());
    assert!(matches!(err, Err(crate::Error::InstanceTooLarge(_))));
}

#[test]
fn rank_one_partition_is_good() {
    let p = KPartition::trivial(Arc::new(VertexLayout::uniform(3, 2)), 1);
    assert!(is_good_partition(&p, &ratio(1, 100), &caps()).unwrap().verdict);
}

#[test]
fn complete_rectangles_are_good() {
    let l = Arc::new(VertexLayout::uniform(2, 4));
    let parts = vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]];
    let p = KPartition::build(l, parts, 2, |_, _, e| vec![e.into_iter().collect()]).unwrap();
    assert!(p.validate().verdict);
    assert!(is_good_partition(&p, &ratio(1, 2), &caps()).unwrap().verdict);
}

#[test]
fn block_diagonal_cell_is_not_good() {
    // One cell holds the two-block graph on V1 × V2, the other holds its
    // complement; both share the polyad (V1, V2).
    let l = Arc::new(VertexLayout::uniform(2, 4));
    let blocks: Vec<Edge> = [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (2, 3), (3, 2), (3, 3)]
        .iter()
        .map(|&(a, b)| Edge::pair(a, b + 4))
        .collect();
    let rest: Vec<Edge> =
        (0..4).flat_map(|a| (4..8).map(move |b| Edge::pair(a, b))).filter(|e| !blocks.contains(e)).collect();
    let p = KPartition::new(
        l,
        vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]],
        vec![vec![Cell::new(vec![0, 1], blocks.into_iter().collect()), Cell::new(vec![0, 1], rest.into_iter().collect())]],
    )
    .unwrap();
    assert!(p.validate().verdict);
    let r = is_good_partition(&p, &ratio(1, 2), &caps()).unwrap();
    assert!(!r.verdict);
    assert!(matches!(r.witness, Some(Witness::Cell { level: 2, cell: 0, .. })));
}

#[test]
fn complete_kgraph_with_trivial_partition() {
    for k in 2..=4 {
        let l = Arc::new(VertexLayout::uniform(k, 2));
        let h = KGraph::complete(l.clone(), k);
        let p = KPartition::trivial(l, k - 1);
        let r = is_kgraph_delta_regular_partition(&h, &p, &ratio(1, 2), &[EditMode::Perfect], &caps()).unwrap();
        assert!(r.verdict, "k = {k}");
    }
}

#[test]
fn union_of_halves() {
    let l = Arc::new(VertexLayout::uniform(2, 2));
    let g1 = KGraph::new(l.clone(), 2, [Edge::pair(0, 2), Edge::pair(1, 3)]).unwrap();
    let g2 = KGraph::new(l.clone(), 2, [Edge::pair(0, 3), Edge::pair(1, 2)]).unwrap();
    assert!(union_regularity_check(core::slice::from_ref(&g1), &ratio(1, 2), &caps()).unwrap());
    assert!(union_regularity_check(&[g1.clone(), g2], &ratio(1, 2), &caps()).unwrap());
    assert_eq!(union_regularity_check(&[g1.clone(), g1], &ratio(1, 2), &caps()), Err(crate::Error::NotEdgeDisjoint));
}
