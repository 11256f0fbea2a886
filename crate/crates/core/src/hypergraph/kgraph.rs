use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

use super::{BipartiteGraph, Edge, Polyad, Vertex, VertexLayout};

/// A k-uniform hypergraph whose edges meet each class of its layout at most
/// once.
///
/// For a 2-graph on exactly two classes a bitset adjacency view (left =
/// first class, right = second class, indexed by in-class position) is kept
/// alongside the edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KGraph {
    layout: Arc<VertexLayout>,
    k: usize,
    edges: BTreeSet<Edge>,
    bipartite: Option<BipartiteGraph>,
}

impl KGraph {
    /// Validates every edge: size `k`, distinct vertices, all in the layout,
    /// at most one per class, no duplicates.
    pub fn new(layout: Arc<VertexLayout>, k: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidLayout("uniformity must be at least 1".into()));
        }
        let mut set = BTreeSet::new();
        for e in edges {
            if e.len() != k {
                return Err(Error::InvalidEdge { edge: e, reason: "wrong number of vertices" });
            }
            if !e.vertices().iter().all(|&v| layout.contains(v)) {
                return Err(Error::InvalidEdge { edge: e, reason: "vertex outside the layout" });
            }
            if !layout.is_crossing(&e) {
                return Err(Error::InvalidEdge { edge: e, reason: "two vertices in one class" });
            }
            if set.contains(&e) {
                return Err(Error::InvalidEdge { edge: e, reason: "duplicate edge" });
            }
            set.insert(e);
        }
        Ok(Self::from_valid(layout, k, set))
    }

    /// Caller guarantees every edge is a valid crossing k-set.
    pub(crate) fn from_valid(layout: Arc<VertexLayout>, k: usize, edges: BTreeSet<Edge>) -> Self {
        let bipartite = (k == 2 && layout.num_classes() == 2).then(|| {
            let (l, r) = (layout.class_size(0), layout.class_size(1));
            BipartiteGraph::from_pairs(
                l,
                r,
                edges.iter().map(|e| {
                    let vs = layout.class_ordered(e);
                    (layout.position(vs[0]).unwrap(), layout.position(vs[1]).unwrap())
                }),
            )
        });
        KGraph { layout, k, edges, bipartite }
    }

    pub fn empty(layout: Arc<VertexLayout>, k: usize) -> Self {
        Self::from_valid(layout, k, BTreeSet::new())
    }

    /// All crossing k-sets of the layout.
    pub fn complete(layout: Arc<VertexLayout>, k: usize) -> Self {
        let edges = cross_sets(&layout, k).collect();
        Self::from_valid(layout, k, edges)
    }

    /// A 2-graph on two classes from its bitset view.
    pub fn from_bipartite(layout: Arc<VertexLayout>, g: &BipartiteGraph) -> Result<Self> {
        if layout.num_classes() != 2 || layout.class_size(0) != g.left_len() || layout.class_size(1) != g.right_len() {
            return Err(Error::InvalidLayout("layout does not match bipartite graph shape".into()));
        }
        let (a, b) = (layout.class(0), layout.class(1));
        let edges = g.edges().map(|(i, j)| Edge::pair(a[i], b[j])).collect();
        Ok(Self::from_valid(layout, 2, edges))
    }

    pub fn layout(&self) -> &Arc<VertexLayout> {
        &self.layout
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    /// Bitset view for a 2-graph on exactly two classes.
    pub fn bipartite_view(&self) -> Option<&BipartiteGraph> {
        self.bipartite.as_ref()
    }

    /// Number of crossing k-sets of the layout (`∏|V_i|` when the layout has
    /// exactly `k` classes).
    pub fn cross_count(&self) -> num_bigint::BigUint {
        rational::elementary_symmetric(&self.layout.sizes(), self.k)
    }

    /// `e(H)` over the number of crossing k-sets; 0 when there are none.
    pub fn density(&self) -> Rational {
        let total = self.cross_count();
        if total == num_bigint::BigUint::from(0u8) {
            return Rational::from_integer(0.into());
        }
        Rational::new(self.edge_count().into(), num_bigint::BigInt::from(total))
    }

    /// Sub-hypergraph on `V'_1 ⊆ V_1, …` (one subset per class).
    pub fn induced(&self, subclasses: &[Vec<Vertex>]) -> Result<KGraph> {
        let layout = Arc::new(self.layout.restrict(subclasses)?);
        let edges = self
            .edges
            .iter()
            .filter(|e| e.vertices().iter().all(|&v| layout.contains(v)))
            .cloned()
            .collect();
        Ok(Self::from_valid(layout, self.k, edges))
    }

    /// The same edges over a different layout that still contains them.
    pub fn relayout(&self, layout: Arc<VertexLayout>) -> Result<KGraph> {
        KGraph::new(layout, self.k, self.edges.iter().cloned())
    }

    /// `F ∘ V`: every edge of `F` extended by every vertex of the new class
    /// `V`, which must avoid the classes of `F`.
    pub fn compose(&self, v: &[Vertex], label: &str) -> Result<KGraph> {
        if let Some(&u) = v.iter().find(|&&u| self.layout.contains(u)) {
            return Err(Error::ClassMismatch(alloc::format!("vertex {u} already belongs to a class")));
        }
        let layout = Arc::new(self.layout.with_class(label, v.to_vec())?);
        let edges = self.edges.iter().flat_map(|e| v.iter().map(move |&u| e.with(u))).collect();
        Ok(Self::from_valid(layout, self.k + 1, edges))
    }

    /// Union of edge sets over the same layout and uniformity.
    pub fn union(&self, other: &KGraph) -> Result<KGraph> {
        if self.layout != other.layout || self.k != other.k {
            return Err(Error::ClassMismatch("union of k-graphs over different layouts".to_string()));
        }
        let edges = self.edges.union(&other.edges).cloned().collect();
        Ok(Self::from_valid(self.layout.clone(), self.k, edges))
    }
}

/// `|H ∩ K(S)| / |K(S)|`, and 0 when `K(S)` is empty.
pub fn relative_density(h: &KGraph, s: &Polyad) -> Rational {
    let cliques = s.cliques();
    let hit = cliques.edges().iter().filter(|c| h.contains(c)).count();
    rational::frac(hit, cliques.edge_count())
}

/// All crossing k-sets of a layout in lexicographic order of class choice.
pub(crate) fn cross_sets(layout: &VertexLayout, k: usize) -> impl Iterator<Item = Edge> + '_ {
    let l = layout.num_classes();
    combinations(l, k).flat_map(move |cls| product(cls.iter().map(|&c| layout.class(c).to_vec()).collect()).map(Edge::new))
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    core::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().unwrap();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

/// Cartesian product of the given lists, last coordinate fastest.
pub(crate) fn product(lists: Vec<Vec<Vertex>>) -> impl Iterator<Item = Vec<Vertex>> {
    let mut idx = alloc::vec![0usize; lists.len()];
    let mut done = lists.iter().any(|l| l.is_empty());
    core::iter::from_fn(move || {
        if done {
            return None;
        }
        let out: Vec<Vertex> = idx.iter().zip(&lists).map(|(&i, l)| l[i]).collect();
        let mut j = lists.len();
        loop {
            if j == 0 {
                done = true;
                break;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < lists[j].len() {
                break;
            }
            idx[j] = 0;
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn l3() -> Arc<VertexLayout> {
        Arc::new(VertexLayout::uniform(3, 2))
    }

    #[test]
    fn density_complete_and_half() {
        let h = KGraph::complete(l3(), 3);
        assert_eq!(h.edge_count(), 8);
        assert_eq!(h.density(), rational::int(1));
        let half = KGraph::new(l3(), 3, h.edges().iter().take(4).cloned()).unwrap();
        assert_eq!(half.density(), rational::ratio(1, 2));
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(KGraph::new(l3(), 3, [Edge::from([0, 1, 2])]).is_err());
        assert!(KGraph::new(l3(), 3, [Edge::from([0, 2])]).is_err());
        assert!(KGraph::new(l3(), 3, [Edge::from([0, 2, 4]), Edge::from([0, 2, 4])]).is_err());
    }

    #[test]
    fn induced_full_and_empty() {
        let h = KGraph::complete(l3(), 3);
        let full: Vec<Vec<Vertex>> = (0..3).map(|i| h.layout().class(i).to_vec()).collect();
        assert_eq!(h.induced(&full).unwrap().edges(), h.edges());
        let with_empty = vec![vec![0, 1], vec![], vec![4]];
        assert_eq!(h.induced(&with_empty).unwrap().edge_count(), 0);
        assert_eq!(h.induced(&[vec![2], vec![], vec![]]), Err(Error::SubsetOutOfClass(2)));
    }

    #[test]
    fn compose_single_edge() {
        let l = Arc::new(VertexLayout::uniform(2, 1));
        let f = KGraph::new(l, 2, [Edge::pair(0, 1)]).unwrap();
        let c = f.compose(&[5, 6], "U").unwrap();
        assert_eq!(c.edges().iter().cloned().collect::<Vec<_>>(), vec![Edge::from([0, 1, 5]), Edge::from([0, 1, 6])]);
        assert!(f.compose(&[1], "U").is_err());
    }

    #[test]
    fn bipartite_view_tracks_edges() {
        let l = Arc::new(VertexLayout::contiguous([("A", 2), ("B", 3)]).unwrap());
        let h = KGraph::new(l.clone(), 2, [Edge::pair(0, 4), Edge::pair(1, 2)]).unwrap();
        let g = h.bipartite_view().unwrap();
        assert!(g.has_edge(0, 2) && g.has_edge(1, 0));
        assert_eq!(KGraph::from_bipartite(l, g).unwrap(), h);
    }

    #[test]
    fn combinations_and_product() {
        assert_eq!(combinations(4, 2).count(), 6);
        assert_eq!(combinations(3, 0).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
        assert_eq!(product(vec![vec![1, 2], vec![3]]).collect::<Vec<_>>(), vec![vec![1, 3], vec![2, 3]]);
        assert_eq!(product(vec![]).count(), 1);
    }
}
