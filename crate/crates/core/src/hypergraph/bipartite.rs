use alloc::vec;
use alloc::vec::Vec;

/// Bipartite graph on `left × right` stored as one bitset row per left
/// vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    words: usize,
    rows: Vec<u64>,
    edges: usize,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        let words = right.div_ceil(64).max(1);
        BipartiteGraph { left, right, words, rows: vec![0; left * words], edges: 0 }
    }

    /// Panics if a pair is out of range.
    pub fn from_pairs(left: usize, right: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(left, right);
        for (a, b) in pairs {
            g.insert(a, b);
        }
        g
    }

    pub fn complete(left: usize, right: usize) -> Self {
        Self::from_pairs(left, right, (0..left).flat_map(|a| (0..right).map(move |b| (a, b))))
    }

    pub fn left_len(&self) -> usize {
        self.left
    }

    pub fn right_len(&self) -> usize {
        self.right
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn row(&self, a: usize) -> &[u64] {
        &self.rows[a * self.words..(a + 1) * self.words]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        assert!(a < self.left && b < self.right, "pair ({a}, {b}) out of range");
        self.rows[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    /// Returns whether the pair was new.
    pub fn insert(&mut self, a: usize, b: usize) -> bool {
        assert!(a < self.left && b < self.right, "pair ({a}, {b}) out of range");
        let w = &mut self.rows[a * self.words + b / 64];
        let bit = 1u64 << (b % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        self.edges += fresh as usize;
        fresh
    }

    /// Returns whether the pair was present.
    pub fn remove(&mut self, a: usize, b: usize) -> bool {
        assert!(a < self.left && b < self.right, "pair ({a}, {b}) out of range");
        let w = &mut self.rows[a * self.words + b / 64];
        let bit = 1u64 << (b % 64);
        let present = *w & bit != 0;
        *w &= !bit;
        self.edges -= present as usize;
        present
    }

    pub fn degree_left(&self, a: usize) -> usize {
        self.row(a).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Edge pairs in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.left).flat_map(move |a| {
            let row = self.row(a);
            row.iter().enumerate().flat_map(move |(wi, &w)| {
                let mut w = w;
                core::iter::from_fn(move || {
                    if w == 0 {
                        return None;
                    }
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some((a, wi * 64 + t))
                })
            })
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_pairs(self.right, self.left, self.edges().map(|(a, b)| (b, a)))
    }

    /// Induced subgraph on the given left and right index lists (in order).
    pub fn induced(&self, left: &[usize], right: &[usize]) -> Self {
        let mut g = Self::new(left.len(), right.len());
        for (i, &a) in left.iter().enumerate() {
            for (j, &b) in right.iter().enumerate() {
                if self.has_edge(a, b) {
                    g.insert(i, j);
                }
            }
        }
        g
    }

    /// Number of edges between the left subset and the right subset given as
    /// a bitmask over right indices.
    pub fn count_between(&self, left: &[usize], right_mask: &[u64]) -> usize {
        left.iter()
            .map(|&a| self.row(a).iter().zip(right_mask).map(|(x, y)| (x & y).count_ones() as usize).sum::<usize>())
            .sum()
    }

    /// Size of the symmetric difference of the edge sets. Panics on shape
    /// mismatch.
    pub fn distance(&self, other: &Self) -> usize {
        assert_eq!((self.left, self.right), (other.left, other.right));
        self.rows.iter().zip(&other.rows).map(|(a, b)| (a ^ b).count_ones() as usize).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_count() {
        let mut g = BipartiteGraph::new(3, 70);
        assert!(g.insert(1, 65));
        assert!(!g.insert(1, 65));
        g.insert(2, 0);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(1, 65));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 65), (2, 0)]);
        assert!(g.remove(1, 65));
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn transpose_and_induced() {
        let g = BipartiteGraph::from_pairs(2, 3, [(0, 1), (1, 2)]);
        let t = g.transpose();
        assert!(t.has_edge(1, 0) && t.has_edge(2, 1));
        let s = g.induced(&[1], &[2, 1]);
        assert_eq!(s.edges().collect::<Vec<_>>(), vec![(0, 0)]);
        assert_eq!(g.distance(&BipartiteGraph::new(2, 3)), 2);
    }
}
