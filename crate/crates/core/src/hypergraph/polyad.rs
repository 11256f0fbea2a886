use alloc::collections::BTreeSet;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};

use super::{Edge, KGraph, Vertex, VertexLayout};

/// An r-polyad: parts `F_1, …, F_r` over `r` classes, where `F_i` is an
/// (r−1)-partite (r−1)-graph on the classes other than `i`. For `r = 2`
/// the parts are vertex sets stored as singleton edges (`F_1 ⊆ V_2`,
/// `F_2 ⊆ V_1`).
///
/// The tuple of parts is canonical; [`Polyad::from_union`] recovers it from
/// the union by grouping edges by the class they miss.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polyad {
    layout: Arc<VertexLayout>,
    parts: Vec<BTreeSet<Edge>>,
}

impl Polyad {
    /// `layout` must have exactly `r = parts.len() ≥ 2` classes.
    pub fn new(layout: Arc<VertexLayout>, parts: Vec<BTreeSet<Edge>>) -> Result<Self> {
        let r = parts.len();
        if r < 2 || layout.num_classes() != r {
            return Err(Error::InvalidLayout(format!(
                "polyad with {r} parts needs {r} classes, layout has {}",
                layout.num_classes()
            )));
        }
        for (i, part) in parts.iter().enumerate() {
            for e in part {
                if omitted_class(&layout, e) != Some(i) {
                    return Err(Error::InvalidEdge { edge: e.clone(), reason: "edge does not fit its polyad part" });
                }
            }
        }
        Ok(Polyad { layout, parts })
    }

    /// Splits a union of (r−1)-edges into parts by the class each edge
    /// misses.
    pub fn from_union(layout: Arc<VertexLayout>, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let r = layout.num_classes();
        let mut parts = alloc::vec![BTreeSet::new(); r];
        for e in edges {
            match omitted_class(&layout, &e) {
                Some(i) => {
                    parts[i].insert(e);
                }
                None => return Err(Error::InvalidEdge { edge: e, reason: "edge does not miss exactly one class" }),
            }
        }
        Self::new(layout, parts)
    }

    /// The polyad whose parts are all crossing (r−1)-sets; its cliques are
    /// every transversal r-set.
    pub fn complete(layout: Arc<VertexLayout>) -> Result<Self> {
        let r = layout.num_classes();
        let parts = (0..r)
            .map(|i| {
                let lists = (0..r).filter(|&j| j != i).map(|j| layout.class(j).to_vec()).collect();
                super::kgraph::product(lists).map(Edge::new).collect()
            })
            .collect();
        Self::new(layout, parts)
    }

    /// The 2-polyad `(A, B)` whose clique set is the complete bipartite graph.
    pub fn pair(universe: usize, a: Vec<Vertex>, b: Vec<Vertex>) -> Result<Self> {
        let layout = Arc::new(VertexLayout::from_classes(universe, [("A", a), ("B", b)])?);
        Self::complete(layout)
    }

    pub fn arity(&self) -> usize {
        self.parts.len()
    }

    pub fn layout(&self) -> &Arc<VertexLayout> {
        &self.layout
    }

    /// Part `F_i` (omitting class `i`, zero-based).
    pub fn part(&self, i: usize) -> &BTreeSet<Edge> {
        &self.parts[i]
    }

    pub fn parts(&self) -> &[BTreeSet<Edge>] {
        &self.parts
    }

    pub fn edge_count(&self) -> usize {
        self.parts.iter().map(BTreeSet::len).sum()
    }

    /// All edges of all parts.
    pub fn union_edges(&self) -> impl Iterator<Item = &Edge> {
        self.parts.iter().flatten()
    }

    /// Whether the transversal r-set `c` has every (r−1)-subset in the
    /// matching part.
    pub fn is_clique(&self, c: &Edge) -> bool {
        if c.len() != self.arity() || !self.layout.is_crossing(c) {
            return false;
        }
        c.vertices().iter().all(|&v| {
            let i = self.layout.class_of(v).unwrap();
            self.parts[i].contains(&c.without(v))
        })
    }

    /// `K(P)`: every r-set with one vertex per class whose (r−1)-subsets all
    /// lie in the corresponding parts.
    pub fn cliques(&self) -> KGraph {
        let r = self.arity();
        let last = r - 1;
        let mut out = BTreeSet::new();
        for e in &self.parts[last] {
            for &v in self.layout.class(last) {
                if self.extends(e, v, last) {
                    out.insert(e.with(v));
                }
            }
        }
        KGraph::from_valid(self.layout.clone(), r, out)
    }

    /// `K(P, e)`: the cliques containing an edge `e` of some part.
    pub fn cliques_containing(&self, e: &Edge) -> Result<Vec<Edge>> {
        let i = omitted_class(&self.layout, e)
            .filter(|&i| self.parts[i].contains(e))
            .ok_or_else(|| Error::EdgeNotInPart(e.clone()))?;
        Ok(self.layout.class(i).iter().filter(|&&v| self.extends(e, v, i)).map(|&v| e.with(v)).collect())
    }

    /// `e ∈ F_i` extended by `v ∈ V_i`: checks the remaining parts.
    fn extends(&self, e: &Edge, v: Vertex, i: usize) -> bool {
        let c = e.with(v);
        c.vertices().iter().all(|&u| {
            let j = self.layout.class_of(u).unwrap();
            j == i || self.parts[j].contains(&c.without(u))
        })
    }
}

/// The single class an (r−1)-set misses, if it is a transversal of all the
/// other classes.
fn omitted_class(layout: &VertexLayout, e: &Edge) -> Option<usize> {
    let r = layout.num_classes();
    if e.len() + 1 != r || !layout.is_crossing(e) {
        return None;
    }
    let mut seen = alloc::vec![false; r];
    for &v in e.vertices() {
        seen[layout.class_of(v)?] = true;
    }
    seen.iter().position(|s| !s)
}
