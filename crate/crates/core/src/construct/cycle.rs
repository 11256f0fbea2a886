use alloc::collections::BTreeSet;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, KGraph, Vertex, VertexLayout};

/// The tight 2k-cycle on `{0, …, 2k−1}`: edges `{x, x+1, …, x+k−1}` mod 2k,
/// k-partite on the classes `{i, i+k}`.
pub fn tight_cycle(k: usize) -> Result<KGraph> {
    if k < 2 {
        return Err(Error::InvalidArgument("the tight cycle needs k ≥ 2".into()));
    }
    let layout = VertexLayout::from_classes(
        2 * k,
        (0..k).map(|i| (format!("V{i}"), alloc::vec![i as Vertex, (i + k) as Vertex])),
    )?;
    KGraph::new(Arc::new(layout), k, (0..2 * k).map(|x| cycle_edge(k, x)))
}

/// The cycle edge `{x, …, x+k−1}` mod 2k.
pub fn cycle_edge(k: usize, x: usize) -> Edge {
    Edge::new((0..k).map(|j| ((x + j) % (2 * k)) as Vertex).collect())
}

/// Ground set `V^h = {h·n, …, (h+1)·n − 1}` of the pasted instance.
pub fn ground_set(n: usize, h: usize) -> Vec<Vertex> {
    (h * n..(h + 1) * n).map(|v| v as Vertex).collect()
}

/// Layout of the pasted graph: class `c` is `V^c ∪ V^{c+k}`.
pub fn cycle_layout(k: usize, n: usize) -> Result<Arc<VertexLayout>> {
    let classes = (0..k).map(|c| {
        let mut vs = ground_set(n, c);
        vs.extend(ground_set(n, c + k));
        (format!("V{c}"), vs)
    });
    Ok(Arc::new(VertexLayout::from_classes(2 * k * n, classes)?))
}

/// Layout of the piece for the cycle edge starting at `x`: class `j` is `V^{x+j}`.
pub fn cycle_edge_layout(k: usize, n: usize, x: usize) -> Result<Arc<VertexLayout>> {
    let classes = (0..k).map(|j| {
        let h = (x + j) % (2 * k);
        (format!("V^{h}"), ground_set(n, h))
    });
    Ok(Arc::new(VertexLayout::from_classes(2 * k * n, classes)?))
}

/// Edge-disjoint union of one k-graph per cycle edge; `pieces[x]` must live
/// on [`cycle_edge_layout`]`(k, n, x)`.
pub fn paste_cycle(k: usize, n: usize, pieces: &[KGraph]) -> Result<KGraph> {
    if pieces.len() != 2 * k {
        return Err(Error::InvalidArgument(format!("expected {} pieces, got {}", 2 * k, pieces.len())));
    }
    let layout = cycle_layout(k, n)?;
    let mut edges = BTreeSet::new();
    for (x, h) in pieces.iter().enumerate() {
        let expected = cycle_edge_layout(k, n, x)?;
        if h.k() != k || **h.layout() != *expected {
            return Err(Error::ClassMismatch(format!("piece {x} is not on the classes V^{x}, …, V^{}", (x + k - 1) % (2 * k))));
        }
        for e in h.edges() {
            if !edges.insert(e.clone()) {
                return Err(Error::OverlapDetected(e.clone()));
            }
        }
    }
    KGraph::new(layout, k, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn small_cycles() {
        let b = tight_cycle(2).unwrap();
        let want: BTreeSet<Edge> = [[0, 1], [1, 2], [2, 3], [0, 3]].into_iter().map(Edge::from).collect();
        assert_eq!(b.edges(), &want);
        let b3 = tight_cycle(3).unwrap();
        assert_eq!(b3.edge_count(), 6);
        assert!(b3.contains(&Edge::from([5, 0, 1])));
    }

    #[test]
    fn matchings_paste() {
        let (k, n) = (2, 3);
        let pieces: Vec<KGraph> = (0..4)
            .map(|x| {
                let l = cycle_edge_layout(k, n, x).unwrap();
                let es = (0..n).map(|i| Edge::pair(l.class(0)[i], l.class(1)[i]));
                KGraph::new(l.clone(), k, es.collect::<Vec<_>>()).unwrap()
            })
            .collect();
        let h = paste_cycle(k, n, &pieces).unwrap();
        assert_eq!(h.edge_count(), 4 * n);
        assert_eq!(h.density(), ratio(4 * n as i64, 36));
        let mut bad = pieces.clone();
        bad.swap(0, 1);
        assert!(matches!(paste_cycle(k, n, &bad), Err(Error::ClassMismatch(_))));
    }
}
