use alloc::format;
use alloc::sync::Arc;

use crate::error::{Error, Result};
use crate::hypergraph::{AuxGraph, BipartiteGraph, CompositeVertex, KGraph, Vertex, VertexLayout};

/// `H_G`: the k-graph with `{v_1, …, v_k} ∈ H` iff `((v_1, …, v_{k−1}), v_k) ∈ G`.
///
/// Left vertices of `g` index `V_1 × ⋯ × V_{k−1}` in mixed radix (first class
/// most significant); right vertices are positions in the last class.
pub fn hypergraph_from_bipartite(layout: Arc<VertexLayout>, g: &BipartiteGraph) -> Result<KGraph> {
    let last = layout.num_classes().checked_sub(1).ok_or_else(|| Error::InvalidArgument("empty layout".into()))?;
    Ok(AuxGraph::from_product(layout, last, g.clone())?.to_hypergraph())
}

/// [`hypergraph_from_bipartite`] from explicit `(composite vertex, vertex)` pairs.
pub fn hypergraph_from_pairs(
    layout: Arc<VertexLayout>,
    pairs: impl IntoIterator<Item = (CompositeVertex, Vertex)>,
) -> Result<KGraph> {
    let k = layout.num_classes();
    if k < 2 {
        return Err(Error::InvalidArgument("need at least two classes".into()));
    }
    let sizes = layout.sizes();
    let left_len: usize = sizes[..k - 1].iter().product();
    let mut g = BipartiteGraph::new(left_len, sizes[k - 1]);
    for (left, v) in pairs {
        let malformed = || Error::InvalidArgument(format!("malformed composite vertex {left:?}"));
        if left.len() != k - 1 {
            return Err(malformed());
        }
        let mut idx = 0;
        for (j, &u) in left.iter().enumerate() {
            if layout.class_of(u) != Some(j) {
                return Err(malformed());
            }
            idx = idx * sizes[j] + layout.position(u).unwrap();
        }
        if layout.class_of(v) != Some(k - 1) {
            return Err(Error::SubsetOutOfClass(v));
        }
        g.insert(idx, layout.position(v).unwrap());
    }
    hypergraph_from_bipartite(layout, &g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{aux_graph, Edge};
    use alloc::vec;

    #[test]
    fn single_edge() {
        let l = Arc::new(VertexLayout::uniform(3, 2));
        let h = hypergraph_from_pairs(l.clone(), [(vec![0, 2], 5)]).unwrap();
        assert_eq!(h.edges().iter().collect::<alloc::vec::Vec<_>>(), [&Edge::from([0, 2, 5])]);
        assert_eq!(aux_graph(&h, 2).unwrap().graph().edge_count(), 1);
        assert!(hypergraph_from_pairs(l.clone(), [(vec![2, 0], 5)]).is_err());
        assert!(hypergraph_from_pairs(l, [(vec![0], 5)]).is_err());
    }
}
