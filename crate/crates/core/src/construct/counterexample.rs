use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, KGraph, Vertex, VertexLayout};
use crate::rational::{self, Rational};
use crate::sample::bernoulli;

/// Class pairs of a tripartite graph in round-robin order.
pub const CLASS_PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// A triangle-free tripartite graph and how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub graph: KGraph,
    pub triangles_before: usize,
    /// Edges removed from each class pair, in [`CLASS_PAIRS`] order.
    pub removed: [usize; 3],
    /// Whether `64δ^{−2}q^{−1} ≤ k ≤ ¼δ³q^{−2}` holds.
    pub in_window: bool,
    pub warnings: Vec<String>,
}

/// Triangles of a 2-graph on three classes, as `(a, b, c)` with one vertex
/// per class, in lexicographic order of class positions.
pub fn triangles(g: &KGraph) -> Result<Vec<[Vertex; 3]>> {
    let l = g.layout();
    if g.k() != 2 || l.num_classes() != 3 {
        return Err(Error::InvalidArgument("expected a 2-graph on three classes".into()));
    }
    let mut out = Vec::new();
    for &a in l.class(0) {
        for &b in l.class(1) {
            if !g.contains(&Edge::pair(a, b)) {
                continue;
            }
            for &c in l.class(2) {
                if g.contains(&Edge::pair(a, c)) && g.contains(&Edge::pair(b, c)) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    Ok(out)
}

/// Random tripartite graph with classes of size `k` keeping each crossing
/// pair with probability `q`, made triangle-free by walking the triangles in
/// canonical order and, for each one still intact, deleting its edge in the
/// next class pair of a round-robin.
pub fn counterexample_gen(delta: &Rational, q: &Rational, k: usize, seed: u64) -> Result<Counterexample> {
    let zero = rational::int(0);
    let one = rational::int(1);
    if *q <= zero || *q > one {
        return Err(Error::InvalidArgument(format!("q = {q} is not in (0, 1]")));
    }
    if *delta <= zero || *delta > one {
        return Err(Error::InvalidArgument(format!("δ = {delta} is not in (0, 1]")));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("class size must be positive".into()));
    }
    let layout = Arc::new(VertexLayout::uniform(3, k));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = BTreeSet::new();
    for &(x, y) in &CLASS_PAIRS {
        for &a in layout.class(x) {
            for &b in layout.class(y) {
                if bernoulli(&mut rng, q) {
                    edges.insert(Edge::pair(a, b));
                }
            }
        }
    }
    let g = KGraph::new(layout.clone(), 2, edges.iter().cloned())?;
    let tris = triangles(&g)?;
    let mut removed = [0usize; 3];
    let mut turn = 0;
    for t in &tris {
        let sides = CLASS_PAIRS.map(|(x, y)| Edge::pair(t[x], t[y]));
        if sides.iter().any(|e| !edges.contains(e)) {
            continue;
        }
        edges.remove(&sides[turn]);
        removed[turn] += 1;
        turn = (turn + 1) % 3;
    }
    let kq = rational::int(k);
    let low = rational::int(64) / (delta * delta * q);
    let high = delta * delta * delta / (rational::int(4) * q * q);
    let in_window = low <= kq && kq <= high;
    let mut warnings = Vec::new();
    if !in_window {
        warnings.push(format!("k = {k} is outside the window [{low}, {high}]; toy parameters"));
    }
    Ok(Counterexample { graph: KGraph::new(layout, 2, edges)?, triangles_before: tris.len(), removed, in_window, warnings })
}

/// Vertex blocks of a blow-up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowUpMap {
    pub base: Arc<VertexLayout>,
    pub m: usize,
    /// `blocks[v]` lists the `m` new vertices replacing base vertex `v`.
    pub blocks: Vec<Vec<Vertex>>,
}

impl BlowUpMap {
    pub fn block(&self, v: Vertex) -> &[Vertex] {
        &self.blocks[v as usize]
    }

    /// Base vertex whose block contains `u`.
    pub fn origin(&self, u: Vertex) -> Vertex {
        let idx = u as usize / self.m;
        let mut seen = 0;
        for i in 0..self.base.num_classes() {
            let size = self.base.class_size(i);
            if idx < seen + size {
                return self.base.class(i)[idx - seen];
            }
            seen += size;
        }
        unreachable!("vertex outside the blow-up")
    }
}

/// Replaces each vertex by `m` copies and each edge by the complete k-partite
/// k-graph on the copies. New ids are dense, class by class, blocks in
/// position order.
pub fn blow_up(g: &KGraph, m: usize) -> Result<(KGraph, BlowUpMap)> {
    if m == 0 {
        return Err(Error::InvalidArgument("blow-up factor must be positive".into()));
    }
    let base = g.layout().clone();
    let layout = VertexLayout::contiguous((0..base.num_classes()).map(|i| (String::from(base.label(i)), base.class_size(i) * m)))?;
    let mut blocks = alloc::vec![Vec::new(); base.universe()];
    let mut next = 0 as Vertex;
    for i in 0..base.num_classes() {
        for &v in base.class(i) {
            blocks[v as usize] = (next..next + m as Vertex).collect();
            next += m as Vertex;
        }
    }
    let mut edges = BTreeSet::new();
    for e in g.edges() {
        let lists = e.vertices().iter().map(|&v| blocks[v as usize].clone()).collect();
        for t in crate::hypergraph::kgraph::product(lists) {
            edges.insert(Edge::new(t));
        }
    }
    let h = KGraph::new(Arc::new(layout), g.k(), edges)?;
    Ok((h, BlowUpMap { base, m, blocks }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn complete_input_loses_all_triangles() {
        let c = counterexample_gen(&ratio(1, 2), &ratio(1, 1), 2, 0).unwrap();
        assert_eq!(c.triangles_before, 8);
        assert!(triangles(&c.graph).unwrap().is_empty());
        assert!(c.removed.iter().max().unwrap() - c.removed.iter().min().unwrap() <= 1);
        assert!(!c.in_window);
    }

    #[test]
    fn blow_up_counts() {
        let c = counterexample_gen(&ratio(1, 2), &ratio(1, 2), 4, 3).unwrap();
        let (h, map) = blow_up(&c.graph, 3).unwrap();
        assert_eq!(h.edge_count(), 9 * c.graph.edge_count());
        assert_eq!(h.density(), c.graph.density());
        assert!(triangles(&h).unwrap().is_empty());
        assert_eq!(map.origin(map.block(5)[2]), 5);
        let (same, _) = blow_up(&c.graph, 1).unwrap();
        assert_eq!(same.edges(), c.graph.edges());
    }
}
