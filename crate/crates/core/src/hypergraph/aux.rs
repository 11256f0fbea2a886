use alloc::collections::BTreeSet;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};

use super::{BipartiteGraph, Edge, KGraph, Polyad, Vertex, VertexLayout};

/// Vertices of a product side, one per class, ordered by class index.
pub type CompositeVertex = Vec<Vertex>;

/// Left side of an auxiliary graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeftSide {
    /// Every tuple of `∏_{j≠i} V_j`, indexed in mixed radix with the class
    /// listed first most significant.
    Product { classes: Vec<Vec<Vertex>> },
    /// The edges of one polyad part, in sorted edge order.
    Explicit(Vec<Edge>),
}

/// The bipartite graph `G^i_H` between tuples of the other classes and
/// class `i`, optionally restricted to the part `F_i` of a polyad.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxGraph {
    layout: Arc<VertexLayout>,
    k: usize,
    omitted: usize,
    left: LeftSide,
    graph: BipartiteGraph,
}

/// `G^i_H` on `(∏_{j≠i} V_j, V_i)`; `H` must have exactly `k ≥ 2` classes.
pub fn aux_graph(h: &KGraph, i: usize) -> Result<AuxGraph> {
    let layout = h.layout().clone();
    let k = h.k();
    if k < 2 || layout.num_classes() != k || i >= k {
        return Err(Error::InvalidArgument(format!(
            "auxiliary graph needs a k-graph on k ≥ 2 classes and i < k (k = {k}, classes = {}, i = {i})",
            layout.num_classes()
        )));
    }
    let classes: Vec<Vec<Vertex>> = (0..k).filter(|&j| j != i).map(|j| layout.class(j).to_vec()).collect();
    let left_len = classes.iter().map(Vec::len).product();
    let mut aux = AuxGraph {
        graph: BipartiteGraph::new(left_len, layout.class_size(i)),
        left: LeftSide::Product { classes },
        layout,
        k,
        omitted: i,
    };
    for e in h.edges() {
        aux.add_hyperedge(e);
    }
    Ok(aux)
}

/// `G^i_{H,P} = G^i_H[F_i, V_i]`; every edge of `H` must be a clique of `P`.
pub fn aux_graph_restricted(h: &KGraph, p: &Polyad, i: usize) -> Result<AuxGraph> {
    aux_restricted_edges(h.edges(), p, i)
}

pub(crate) fn aux_restricted_edges<'a>(
    edges: impl IntoIterator<Item = &'a Edge>,
    p: &Polyad,
    i: usize,
) -> Result<AuxGraph> {
    if i >= p.arity() {
        return Err(Error::InvalidArgument(format!("class {i} out of range for a {}-polyad", p.arity())));
    }
    let layout = p.layout().clone();
    let left: Vec<Edge> = p.part(i).iter().cloned().collect();
    let mut aux = AuxGraph {
        graph: BipartiteGraph::new(left.len(), layout.class_size(i)),
        left: LeftSide::Explicit(left),
        layout,
        k: p.arity(),
        omitted: i,
    };
    for e in edges {
        if !p.is_clique(e) {
            return Err(Error::UnderlieViolation(e.clone()));
        }
        aux.add_hyperedge(e);
    }
    Ok(aux)
}

impl AuxGraph {
    /// Wraps a bipartite graph on `(∏_{j≠i} V_j, V_i)` given in the product indexing.
    pub fn from_product(layout: Arc<VertexLayout>, i: usize, graph: BipartiteGraph) -> Result<AuxGraph> {
        let k = layout.num_classes();
        if k < 2 || i >= k {
            return Err(Error::InvalidArgument(format!("omitted class {i} out of range for {k} classes")));
        }
        let classes: Vec<Vec<Vertex>> = (0..k).filter(|&j| j != i).map(|j| layout.class(j).to_vec()).collect();
        let left_len: usize = classes.iter().map(Vec::len).product();
        if graph.left_len() != left_len || graph.right_len() != layout.class_size(i) {
            return Err(Error::InvalidArgument(format!(
                "bipartite sides {}×{} do not match the product side {left_len} and class size {}",
                graph.left_len(),
                graph.right_len(),
                layout.class_size(i)
            )));
        }
        Ok(AuxGraph { layout, k, omitted: i, left: LeftSide::Product { classes }, graph })
    }

    fn add_hyperedge(&mut self, e: &Edge) {
        let v = e.vertices().iter().copied().find(|&v| self.layout.class_of(v) == Some(self.omitted)).unwrap();
        let a = self.left_index(&e.without(v)).unwrap();
        let b = self.layout.position(v).unwrap();
        self.graph.insert(a, b);
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    pub fn layout(&self) -> &Arc<VertexLayout> {
        &self.layout
    }

    pub fn omitted(&self) -> usize {
        self.omitted
    }

    pub fn left(&self) -> &LeftSide {
        &self.left
    }

    /// Right side: class `i` in position order.
    pub fn right(&self) -> &[Vertex] {
        self.layout.class(self.omitted)
    }

    /// The left vertex at an index, ordered by class.
    pub fn left_vertex(&self, idx: usize) -> CompositeVertex {
        match &self.left {
            LeftSide::Product { classes } => {
                let mut out = alloc::vec![0; classes.len()];
                let mut rest = idx;
                for (slot, c) in out.iter_mut().zip(classes).rev() {
                    *slot = c[rest % c.len()];
                    rest /= c.len();
                }
                out
            }
            LeftSide::Explicit(edges) => self.layout.class_ordered(&edges[idx]),
        }
    }

    /// Index of a (k−1)-set on the left side, if it is one.
    pub fn left_index(&self, e: &Edge) -> Option<usize> {
        match &self.left {
            LeftSide::Product { classes } => {
                if e.len() != classes.len() {
                    return None;
                }
                let ordered = self.layout.class_ordered(e);
                let mut idx = 0usize;
                for (v, c) in ordered.iter().zip(classes) {
                    let p = c.binary_search(v).ok()?;
                    idx = idx * c.len() + p;
                }
                Some(idx)
            }
            LeftSide::Explicit(edges) => edges.binary_search(e).ok(),
        }
    }

    /// Inverse transform: the k-graph whose auxiliary graph this is.
    pub fn to_hypergraph(&self) -> KGraph {
        let right = self.right();
        let edges: BTreeSet<Edge> = self
            .graph
            .edges()
            .map(|(a, b)| Edge::new({
                let mut vs = self.left_vertex(a);
                vs.push(right[b]);
                vs
            }))
            .collect();
        KGraph::from_valid(self.layout.clone(), self.k, edges)
    }
}
