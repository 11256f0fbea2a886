use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::kgraph::{combinations, product};
use crate::hypergraph::{Edge, Polyad, Vertex, VertexLayout};
use crate::rational;
use crate::report::{RegularityReport, ReportMode, Witness};

use super::Partition;

/// One cell of level `s ≥ 2`: an s-graph together with the ids of the cells
/// one level down forming its polyad (vertex part ids when `s = 2`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub polyad: Vec<usize>,
    pub edges: BTreeSet<Edge>,
}

impl Cell {
    pub fn new(mut polyad: Vec<usize>, edges: BTreeSet<Edge>) -> Self {
        polyad.sort_unstable();
        Cell { polyad, edges }
    }
}

/// A hierarchical r-partition: a vertex partition `P^(1)` and, for each
/// `2 ≤ s ≤ r`, a partition `P^(s)` of the s-sets meeting each vertex part
/// at most once, where every level-s cell lies inside the clique set of a
/// single polyad of level-(s−1) cells.
///
/// Construction only indexes the data; [`KPartition::validate`] checks the
/// definition and [`KPartition::checked`] rejects anything invalid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KPartition {
    layout: Arc<VertexLayout>,
    vertex_parts: Partition,
    levels: Vec<Vec<Cell>>,
    index: Vec<BTreeMap<Edge, usize>>,
}

impl KPartition {
    /// `levels[0]` holds the cells of level 2.
    pub fn new(layout: Arc<VertexLayout>, vertex_parts: Vec<Vec<Vertex>>, levels: Vec<Vec<Cell>>) -> Result<Self> {
        let vertex_parts = Partition::new(layout.universe(), vertex_parts)?;
        let levels: Vec<Vec<Cell>> = levels
            .into_iter()
            .map(|cells| cells.into_iter().map(|c| Cell::new(c.polyad, c.edges)).collect())
            .collect();
        let index = levels
            .iter()
            .map(|cells| {
                let mut m = BTreeMap::new();
                for (ci, c) in cells.iter().enumerate() {
                    for e in &c.edges {
                        m.entry(e.clone()).or_insert(ci);
                    }
                }
                m
            })
            .collect();
        Ok(KPartition { layout, vertex_parts, levels, index })
    }

    /// Like [`KPartition::new`] but fails on the first violation found by
    /// [`KPartition::validate`].
    pub fn checked(layout: Arc<VertexLayout>, vertex_parts: Vec<Vec<Vertex>>, levels: Vec<Vec<Cell>>) -> Result<Self> {
        let p = Self::new(layout, vertex_parts, levels)?;
        let report = p.validate();
        if let Some(w) = report.witness {
            return Err(Error::InvalidPartition(format!("{w:?}")));
        }
        Ok(p)
    }

    /// Builds every level bottom-up: the s-sets of each polyad's clique set
    /// are handed to `split`, which returns the cells (non-empty, disjoint,
    /// covering) they are cut into.
    pub fn build(
        layout: Arc<VertexLayout>,
        vertex_parts: Vec<Vec<Vertex>>,
        rank: usize,
        mut split: impl FnMut(usize, &[usize], Vec<Edge>) -> Vec<BTreeSet<Edge>>,
    ) -> Result<Self> {
        let mut p = Self::new(layout, vertex_parts, Vec::new())?;
        for s in 2..=rank {
            let mut cells = Vec::new();
            for (sig, edges) in p.clique_groups(s, false) {
                for part in split(s, &sig, edges) {
                    if !part.is_empty() {
                        cells.push(Cell { polyad: sig.clone(), edges: part });
                    }
                }
            }
            p.push_level(cells);
        }
        Ok(p)
    }

    /// Vertex parts are the classes and every polyad's clique set is a
    /// single cell.
    pub fn trivial(layout: Arc<VertexLayout>, rank: usize) -> Self {
        let parts = (0..layout.num_classes()).map(|i| layout.class(i).to_vec()).collect();
        Self::build(layout, parts, rank, |_, _, edges| vec![edges.into_iter().collect()]).expect("classes partition the layout")
    }

    fn push_level(&mut self, cells: Vec<Cell>) {
        let mut m = BTreeMap::new();
        for (ci, c) in cells.iter().enumerate() {
            for e in &c.edges {
                m.entry(e.clone()).or_insert(ci);
            }
        }
        self.levels.push(cells);
        self.index.push(m);
    }

    pub fn layout(&self) -> &Arc<VertexLayout> {
        &self.layout
    }

    pub fn rank(&self) -> usize {
        self.levels.len() + 1
    }

    pub fn vertex_parts(&self) -> &Partition {
        &self.vertex_parts
    }

    /// Cells of level `s ≥ 2`.
    pub fn level(&self, s: usize) -> &[Cell] {
        &self.levels[s - 2]
    }

    /// Number of cells (vertex parts for `s = 1`).
    pub fn level_len(&self, s: usize) -> usize {
        if s == 1 {
            self.vertex_parts.len()
        } else {
            self.levels[s - 2].len()
        }
    }

    pub fn cell(&self, s: usize, id: usize) -> &Cell {
        &self.levels[s - 2][id]
    }

    /// Id of the level-s cell containing `e` (the vertex part for `s = 1`).
    pub fn cell_of(&self, s: usize, e: &Edge) -> Option<usize> {
        if s == 1 {
            return (e.len() == 1).then(|| self.vertex_parts.part_of(e.vertices()[0])).flatten();
        }
        self.index.get(s - 2)?.get(e).copied()
    }

    /// The polyad ids an s-set would need: its vertex parts for `s = 2`,
    /// otherwise the level-(s−1) cells of its (s−1)-subsets. `None` if some
    /// subset is not covered.
    pub fn signature(&self, e: &Edge) -> Option<Vec<usize>> {
        let s = e.len();
        let mut sig: Vec<usize> = if s == 2 {
            e.vertices().iter().map(|&v| self.vertex_parts.part_of(v)).collect::<Option<_>>()?
        } else {
            e.vertices().iter().map(|&v| self.cell_of(s - 1, &e.without(v))).collect::<Option<_>>()?
        };
        sig.sort_unstable();
        Some(sig)
    }

    /// Vertex parts spanned by a cell of level `s` (by its first edge).
    pub fn cell_span(&self, s: usize, id: usize) -> Vec<usize> {
        if s == 1 {
            return vec![id];
        }
        let mut span: Vec<usize> = self.levels[s - 2][id]
            .edges
            .iter()
            .next()
            .map(|e| e.vertices().iter().filter_map(|&v| self.vertex_parts.part_of(v)).collect())
            .unwrap_or_default();
        span.sort_unstable();
        span
    }

    /// Classes of the layout met by a cell of level `s`.
    pub fn cell_classes(&self, s: usize, id: usize) -> Vec<usize> {
        let mut cls: Vec<usize> = self
            .cell_span(s, id)
            .iter()
            .filter_map(|&p| self.layout.class_of(self.vertex_parts.part(p)[0]))
            .collect();
        cls.sort_unstable();
        cls
    }

    /// The s-polyad whose parts are the given level-(s−1) cells (vertex
    /// parts for `s = 2`), over the vertex parts it spans as classes.
    pub fn polyad_from_ids(&self, s: usize, ids: &[usize]) -> Result<Polyad> {
        if ids.len() != s || s < 2 {
            return Err(Error::InvalidArgument(format!("{s}-polyad needs {s} ids, got {}", ids.len())));
        }
        let check = |id: usize| {
            if id < self.level_len(s - 1) {
                Ok(())
            } else {
                Err(Error::CellNotInPartition(id))
            }
        };
        ids.iter().try_for_each(|&id| check(id))?;
        let mut span: Vec<usize> = ids.iter().flat_map(|&id| self.cell_span(s - 1, id)).collect();
        span.sort_unstable();
        span.dedup();
        if span.len() != s {
            return Err(Error::InvalidArgument(format!("cells {ids:?} do not span {s} vertex parts")));
        }
        let classes: Vec<(String, Vec<Vertex>)> =
            span.iter().map(|&p| (format!("P{p}"), self.vertex_parts.part(p).to_vec())).collect();
        let layout = Arc::new(VertexLayout::from_classes(self.layout.universe(), classes)?);
        if s == 2 {
            return Polyad::complete(layout);
        }
        let mut parts = vec![BTreeSet::new(); s];
        for &id in ids {
            let cs = self.cell_span(s - 1, id);
            let omitted = span.iter().position(|p| !cs.contains(p)).unwrap();
            if !parts[omitted].is_empty() {
                return Err(Error::InvalidArgument(format!("two cells of {ids:?} miss the same vertex part")));
            }
            parts[omitted] = self.cell(s - 1, id).edges.clone();
        }
        Polyad::new(layout, parts)
    }

    /// The polyad `∪(F)` of cell `id` at level `s`.
    pub fn polyad_of(&self, s: usize, id: usize) -> Result<Polyad> {
        self.polyad_from_ids(s, &self.cell(s, id).polyad)
    }

    /// Groups the s-sets meeting each vertex part at most once by their
    /// signature (level `s − 1` must exist). With `transversal_only`, only
    /// s-sets meeting each class of the layout at most once are listed.
    pub fn clique_groups(&self, s: usize, transversal_only: bool) -> BTreeMap<Vec<usize>, Vec<Edge>> {
        let mut out: BTreeMap<Vec<usize>, Vec<Edge>> = BTreeMap::new();
        for e in self.cross_sets(s) {
            if transversal_only && !self.layout.is_crossing(&e) {
                continue;
            }
            if let Some(sig) = self.signature(&e) {
                out.entry(sig).or_default().push(e);
            }
        }
        out
    }

    /// All s-sets meeting each vertex part at most once.
    pub fn cross_sets(&self, s: usize) -> impl Iterator<Item = Edge> + '_ {
        combinations(self.vertex_parts.len(), s).flat_map(move |ps| {
            product(ps.iter().map(|&p| self.vertex_parts.part(p).to_vec()).collect()).map(Edge::new)
        })
    }

    /// `P^(1)` refines the classes of the layout.
    pub fn refines_classes(&self) -> bool {
        self.vertex_parts.parts().iter().all(|part| {
            let c = self.layout.class_of(part[0]);
            c.is_some() && part.iter().all(|&v| self.layout.class_of(v) == c)
        })
    }

    /// `V_i(P)`: vertex parts inside class `i`.
    pub fn class_parts(&self, i: usize) -> Vec<usize> {
        (0..self.vertex_parts.len())
            .filter(|&p| self.layout.class_of(self.vertex_parts.part(p)[0]) == Some(i))
            .collect()
    }

    /// `E_i(P)`: cells of the top level meeting every class except `i`
    /// exactly once (vertex parts of the other class when the rank is 1).
    pub fn transversal_cells(&self, i: usize) -> Vec<usize> {
        let r = self.rank();
        let want: Vec<usize> = (0..self.layout.num_classes()).filter(|&j| j != i).collect();
        (0..self.level_len(r)).filter(|&id| self.cell_classes(r, id) == want).collect()
    }

    /// Checks the definition; the witness names the first violation.
    pub fn validate(&self) -> RegularityReport {
        match self.first_violation() {
            None => RegularityReport::pass(ReportMode::Exact),
            Some(w) => RegularityReport::fail(ReportMode::Exact, w),
        }
    }

    fn first_violation(&self) -> Option<Witness> {
        let fail = |level: usize, reason: &str, cell: Option<usize>, tuple: Option<Edge>| {
            Some(Witness::Structure { level, reason: reason.to_string(), cell, tuple })
        };
        for (pi, part) in self.vertex_parts.parts().iter().enumerate() {
            if let Some(&v) = part.iter().find(|&&v| !self.layout.contains(v)) {
                return fail(1, "vertex part contains a vertex outside the layout", Some(pi), Some(Edge::singleton(v)));
            }
        }
        if let Some(v) = self.layout.vertices().find(|&v| self.vertex_parts.part_of(v).is_none()) {
            return fail(1, "vertex not covered by any part", None, Some(Edge::singleton(v)));
        }
        let sizes = self.vertex_parts.sizes();
        for s in 2..=self.rank() {
            let below = self.level_len(s - 1);
            let mut total = 0usize;
            for (ci, c) in self.level(s).iter().enumerate() {
                if c.edges.is_empty() {
                    return fail(s, "empty cell", Some(ci), None);
                }
                let distinct = c.polyad.windows(2).all(|w| w[0] < w[1]);
                if c.polyad.len() != s || !distinct || c.polyad.iter().any(|&id| id >= below) {
                    return fail(s, "polyad ids do not name a polyad of the level below", Some(ci), None);
                }
                for e in &c.edges {
                    if e.len() != s || !e.is_proper() {
                        return fail(s, "tuple has the wrong size", Some(ci), Some(e.clone()));
                    }
                    let parts: Option<Vec<usize>> = e.vertices().iter().map(|&v| self.vertex_parts.part_of(v)).collect();
                    let Some(mut parts) = parts else {
                        return fail(s, "tuple has a vertex outside the vertex partition", Some(ci), Some(e.clone()));
                    };
                    parts.sort_unstable();
                    if parts.windows(2).any(|w| w[0] == w[1]) {
                        return fail(s, "tuple meets a vertex part twice", Some(ci), Some(e.clone()));
                    }
                    if self.index[s - 2].get(e) != Some(&ci) {
                        return fail(s, "tuple lies in two cells", Some(ci), Some(e.clone()));
                    }
                    if self.signature(e).as_ref() != Some(&c.polyad) {
                        return fail(s, "tuple is not a clique of the cell's polyad", Some(ci), Some(e.clone()));
                    }
                }
                total += c.edges.len();
            }
            if rational::elementary_symmetric(&sizes, s) != num_bigint::BigUint::from(total) {
                let missing = self.cross_sets(s).find(|e| self.cell_of(s, e).is_none());
                return fail(s, "level does not cover every crossing tuple", None, missing);
            }
        }
        None
    }

    /// Keeps the first `rank` levels.
    pub fn truncate(&self, rank: usize) -> KPartition {
        let mut p = self.clone();
        p.levels.truncate(rank.saturating_sub(1));
        p.index.truncate(rank.saturating_sub(1));
        p
    }

    /// Restriction to the given classes: every part and cell is intersected
    /// with their vertices, empty ones are dropped and ids renumbered;
    /// trailing levels left without cells are removed.
    pub fn restrict_hierarchy(&self, classes: &[usize]) -> Result<KPartition> {
        let layout = Arc::new(self.layout.select(classes)?);
        let mut part_map = vec![None; self.vertex_parts.len()];
        let mut parts = Vec::new();
        for (pi, part) in self.vertex_parts.parts().iter().enumerate() {
            let kept: Vec<Vertex> = part.iter().copied().filter(|&v| layout.contains(v)).collect();
            if !kept.is_empty() {
                part_map[pi] = Some(parts.len());
                parts.push(kept);
            }
        }
        let mut levels = Vec::new();
        let mut prev = part_map;
        for cells in &self.levels {
            let mut map = vec![None; cells.len()];
            let mut out = Vec::new();
            for (ci, c) in cells.iter().enumerate() {
                let edges: BTreeSet<Edge> =
                    c.edges.iter().filter(|e| e.vertices().iter().all(|&v| layout.contains(v))).cloned().collect();
                if edges.is_empty() {
                    continue;
                }
                let polyad = c.polyad.iter().map(|&id| prev[id]).collect::<Option<Vec<_>>>().ok_or_else(|| {
                    Error::InvalidPartition(format!("cell {ci} keeps edges but loses part of its polyad"))
                })?;
                map[ci] = Some(out.len());
                out.push(Cell::new(polyad, edges));
            }
            levels.push(out);
            prev = map;
        }
        while levels.last().is_some_and(Vec::is_empty) {
            levels.pop();
        }
        KPartition::new(layout, parts, levels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_partitions_validate() {
        for (k, n, r) in [(2, 3, 2), (3, 2, 3), (3, 2, 2), (4, 1, 4)] {
            let l = Arc::new(VertexLayout::uniform(k, n));
            let p = KPartition::trivial(l, r);
            assert!(p.validate().verdict, "k={k} n={n} r={r}");
            assert_eq!(p.rank(), r);
        }
    }

    #[test]
    fn trivial_level_counts() {
        let p = KPartition::trivial(Arc::new(VertexLayout::uniform(3, 2)), 3);
        assert_eq!(p.level(2).len(), 3);
        assert_eq!(p.level(3).len(), 1);
        assert_eq!(p.level(3)[0].edges.len(), 8);
        assert_eq!(p.level(3)[0].polyad, vec![0, 1, 2]);
    }

    #[test]
    fn split_rectangles_detected() {
        // V1 = {0,1}, V2 = {2,3}; vertex parts {0},{1},{2,3}. A cell mixing
        // the rectangles {0}×V2 and {1}×V2 violates the polyad condition.
        let l = Arc::new(VertexLayout::uniform(2, 2));
        let all: BTreeSet<Edge> = [[0, 2], [0, 3], [1, 2], [1, 3]].map(|[a, b]| Edge::pair(a, b)).into();
        let intra: BTreeSet<Edge> = [Edge::pair(0, 1)].into();
        let p = KPartition::new(
            l,
            vec![vec![0], vec![1], vec![2, 3]],
            vec![vec![Cell::new(vec![0, 2], all), Cell::new(vec![0, 1], intra)]],
        )
        .unwrap();
        let r = p.validate();
        assert!(!r.verdict);
        match r.witness.unwrap() {
            Witness::Structure { level, cell, .. } => assert_eq!((level, cell), (2, Some(0))),
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn three_cell_across_triangle_sets_detected() {
        // Parts: a0={0},a1={1} in V1, b={2,3}, c={4,5}. Two level-2 cells on
        // V1×V2 ({0}×b and {1}×b); a 3-cell holding triangles over both.
        let l = Arc::new(VertexLayout::uniform(3, 2));
        let good = KPartition::build(l.clone(), vec![vec![0], vec![1], vec![2, 3], vec![4, 5]], 3, |_, _, e| {
            vec![e.into_iter().collect()]
        })
        .unwrap();
        assert!(good.validate().verdict);
        let mut levels = vec![good.level(2).to_vec(), Vec::new()];
        let mut merged = BTreeSet::new();
        let mut first_polyad = None;
        for c in good.level(3) {
            if c.edges.iter().all(|e| l.is_crossing(e)) {
                merged.extend(c.edges.iter().cloned());
                first_polyad.get_or_insert(c.polyad.clone());
            } else {
                levels[1].push(c.clone());
            }
        }
        levels[1].push(Cell::new(first_polyad.unwrap(), merged));
        let bad = KPartition::new(l, good.vertex_parts().parts().to_vec(), levels).unwrap();
        assert!(!bad.validate().verdict);
    }

    #[test]
    fn restriction_to_prefix() {
        let l = Arc::new(VertexLayout::uniform(3, 2));
        let p = KPartition::trivial(l.clone(), 3);
        assert_eq!(p.restrict_hierarchy(&[0, 1, 2]).unwrap(), p);
        let r = p.restrict_hierarchy(&[0, 1]).unwrap();
        assert_eq!(r.rank(), 2);
        let expect = KPartition::trivial(Arc::new(l.select(&[0, 1]).unwrap()), 2);
        assert_eq!(r, expect);
        assert!(r.validate().verdict);
    }

    #[test]
    fn transversal_cells_and_class_parts() {
        let p = KPartition::trivial(Arc::new(VertexLayout::uniform(3, 2)), 2);
        assert_eq!(p.class_parts(1), vec![1]);
        let e2 = p.transversal_cells(2);
        assert_eq!(e2.len(), 1);
        assert_eq!(p.cell_classes(2, e2[0]), vec![0, 1]);
        let poly = p.polyad_of(2, e2[0]).unwrap();
        assert_eq!(poly.cliques().edge_count(), 4);
    }
}
