use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use super::Vertex;

/// A hyperedge: a strictly increasing tuple of vertex ids.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Box<[Vertex]>);

impl Edge {
    /// Builds an edge from vertices in any order. Duplicates are kept, so
    /// callers that need a proper set check [`Edge::is_proper`].
    pub fn new(mut vertices: Vec<Vertex>) -> Self {
        vertices.sort_unstable();
        Edge(vertices.into_boxed_slice())
    }

    pub fn pair(a: Vertex, b: Vertex) -> Self {
        Edge::new(alloc::vec![a, b])
    }

    pub fn singleton(v: Vertex) -> Self {
        Edge(Box::new([v]))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// No repeated vertex.
    pub fn is_proper(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_subset_of(&self, other: &Edge) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    /// The edge with vertex `v` removed.
    pub fn without(&self, v: Vertex) -> Edge {
        Edge(self.0.iter().copied().filter(|&u| u != v).collect())
    }

    /// The edge with vertex `v` added.
    pub fn with(&self, v: Vertex) -> Edge {
        let mut vs = self.0.to_vec();
        vs.push(v);
        Edge::new(vs)
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl From<Vec<Vertex>> for Edge {
    fn from(v: Vec<Vertex>) -> Self {
        Edge::new(v)
    }
}

impl<const N: usize> From<[Vertex; N]> for Edge {
    fn from(v: [Vertex; N]) -> Self {
        Edge::new(v.to_vec())
    }
}
