use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::Polyad;

use super::KPartition;

/// A polyad of a partition: the ids of its parts one level down and the
/// materialised polyad.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionPolyad {
    pub cells: Vec<usize>,
    pub polyad: Polyad,
}

/// Splits `F ∘ V` for a top-level cell `F` and a vertex part `V` outside the
/// parts `F` spans into polyads of the partition whose clique sets are
/// non-empty, pairwise disjoint and cover `F ∘ V`.
///
/// Follows the induction on the level: `V' ∘ V` is the single 2-polyad
/// `(V', V)`; for a higher cell with polyad `(G_1, …, G_s)` each `G_j ∘ V` is
/// decomposed one level down, the cells of the partition refining those
/// polyads are collected, and every choice of one such cell per `j`
/// together with `F` is a candidate polyad.
pub fn decompose_compose(p: &KPartition, f: usize, v: usize) -> Result<Vec<PartitionPolyad>> {
    let s = p.rank();
    if f >= p.level_len(s) {
        return Err(Error::CellNotInPartition(f));
    }
    if v >= p.vertex_parts().len() {
        return Err(Error::CellNotInPartition(v));
    }
    if p.cell_span(s, f).contains(&v) {
        return Err(Error::PreconditionUnmet("the vertex part lies under the cell".into()));
    }
    let by_polyad: Vec<BTreeMap<Vec<usize>, Vec<usize>>> = (2..=s)
        .map(|level| {
            let mut m: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
            for (id, c) in p.level(level).iter().enumerate() {
                m.entry(c.polyad.clone()).or_default().push(id);
            }
            m
        })
        .collect();
    let ids = decompose_level(p, &by_polyad, s, f, v)?;
    ids.into_iter()
        .map(|cells| {
            let polyad = p.polyad_from_ids(s + 1, &cells)?;
            Ok(PartitionPolyad { cells, polyad })
        })
        .collect()
}

fn decompose_level(
    p: &KPartition,
    by_polyad: &[BTreeMap<Vec<usize>, Vec<usize>>],
    s: usize,
    f: usize,
    v: usize,
) -> Result<Vec<Vec<usize>>> {
    if s == 1 {
        let mut ids = vec![f, v];
        ids.sort_unstable();
        return Ok(vec![ids]);
    }
    let mut choices: Vec<Vec<usize>> = Vec::new();
    for &g in &p.cell(s, f).polyad {
        let mut cells = Vec::new();
        for q in decompose_level(p, by_polyad, s - 1, g, v)? {
            cells.extend(by_polyad[s - 2].get(&q).into_iter().flatten().copied());
        }
        choices.push(cells);
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; choices.len()];
    if choices.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    loop {
        let mut ids: Vec<usize> = pick.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        ids.push(f);
        ids.sort_unstable();
        if p.polyad_from_ids(s + 1, &ids)?.cliques().edge_count() > 0 {
            out.push(ids);
        }
        let mut j = choices.len();
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            pick[j] += 1;
            if pick[j] < choices[j].len() {
                break;
            }
            pick[j] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{Edge, VertexLayout};
    use alloc::collections::BTreeSet;
    use alloc::sync::Arc;

    #[test]
    fn base_case_is_single_pair() {
        let l = Arc::new(VertexLayout::uniform(2, 3));
        let p = KPartition::trivial(l, 1);
        let d = decompose_compose(&p, 0, 1).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].cells, vec![0, 1]);
        assert_eq!(d[0].polyad.cliques().edge_count(), 9);
    }

    #[test]
    fn trivial_two_partition_single_polyad() {
        let l = Arc::new(VertexLayout::uniform(3, 2));
        let p = KPartition::trivial(l, 2);
        let f = p.transversal_cells(2)[0];
        let d = decompose_compose(&p, f, 2).unwrap();
        assert_eq!(d.len(), 1);
        let cliques: BTreeSet<Edge> = d[0].polyad.cliques().edges().clone();
        assert_eq!(cliques.len(), 8);
    }

    #[test]
    fn rejects_bad_ids() {
        let p = KPartition::trivial(Arc::new(VertexLayout::uniform(3, 2)), 2);
        assert_eq!(decompose_compose(&p, 99, 2), Err(Error::CellNotInPartition(99)));
        let f = p.transversal_cells(2)[0];
        assert!(matches!(decompose_compose(&p, f, 0), Err(Error::PreconditionUnmet(_))));
    }
}
