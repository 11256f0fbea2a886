use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::hypergraph::{Edge, Vertex, VertexLayout};

use super::KPartition;

/// Splits every class into `parts_per_class` near-equal random parts.
/// Equitable whenever the classes have equal sizes.
pub fn random_vertex_parts<R: Rng + ?Sized>(layout: &VertexLayout, parts_per_class: usize, rng: &mut R) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    for i in 0..layout.num_classes() {
        let mut vs = layout.class(i).to_vec();
        vs.shuffle(rng);
        let m = parts_per_class.clamp(1, vs.len());
        let (q, r) = (vs.len() / m, vs.len() % m);
        let mut start = 0;
        for j in 0..m {
            let len = q + usize::from(j < r);
            out.push(vs[start..start + len].to_vec());
            start += len;
        }
    }
    out
}

/// A random valid partition of the given rank: random equitable vertex
/// parts refining the classes, then every polyad's clique set cut into
/// between 1 and `max_cells` random non-empty cells.
pub fn random_kpartition<R: Rng + ?Sized>(
    layout: Arc<VertexLayout>,
    rank: usize,
    parts_per_class: usize,
    max_cells: usize,
    rng: &mut R,
) -> KPartition {
    let parts = random_vertex_parts(&layout, parts_per_class, rng);
    KPartition::build(layout, parts, rank, |_, _, edges| random_split(edges, max_cells, rng))
        .expect("random vertex parts partition the layout")
}

/// Cuts a non-empty edge list into between 1 and `max_cells` non-empty
/// random groups.
pub fn random_split<R: Rng + ?Sized>(mut edges: Vec<Edge>, max_cells: usize, rng: &mut R) -> Vec<BTreeSet<Edge>> {
    let m = rng.random_range(1..=max_cells.clamp(1, edges.len().max(1)));
    edges.shuffle(rng);
    let mut cells: Vec<BTreeSet<Edge>> = (0..m).map(|_| BTreeSet::new()).collect();
    for (i, e) in edges.into_iter().enumerate() {
        let c = if i < m { i } else { rng.random_range(0..m) };
        cells[c].insert(e);
    }
    cells
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_partitions_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for seed in 0..20u64 {
            let k = 2 + (seed % 3) as usize;
            let l = Arc::new(VertexLayout::uniform(k, 2 + (seed % 2) as usize));
            let p = random_kpartition(l, k, 2, 3, &mut rng);
            assert!(p.validate().verdict, "seed {seed}");
            assert!(p.vertex_parts().is_equitable());
            assert!(p.refines_classes());
        }
    }
}
