use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::aux::aux_restricted_edges;
use crate::hypergraph::{aux_graph, AuxGraph, Edge, KGraph};
use crate::limits::Caps;
use crate::partition::KPartition;
use crate::rational::{self, Rational};
use crate::report::{RegularityReport, ReportMode, Witness};

use super::pair::{bipartite_of, pair_violation};
use super::partition::{run_mode, violation_witness, EditMode, PartitionedPair};

/// Every cell `F` of every level is checked against its polyad: each
/// auxiliary graph `G^i_{F,∪(F)}` must be a ⟨δ⟩-regular pair. Rank-1
/// partitions are good for every δ.
pub fn is_good_partition(p: &KPartition, delta: &Rational, caps: &Caps) -> Result<RegularityReport> {
    for s in 2..=p.rank() {
        for (id, cell) in p.level(s).iter().enumerate() {
            let polyad = p.polyad_of(s, id)?;
            for i in 0..s {
                let aux = aux_restricted_edges(cell.edges.iter(), &polyad, i)?;
                let g = aux.graph();
                let a: Vec<usize> = (0..g.left_len()).collect();
                let b: Vec<usize> = (0..g.right_len()).collect();
                if let Some(v) = pair_violation(g, &a, &b, delta, &rational::half(), caps)? {
                    let inner = violation_witness(Some(i), (0, 0), v, |x| aux.left_vertex(x), |y| aux.right()[y]);
                    return Ok(RegularityReport::fail(
                        ReportMode::Exact,
                        Witness::Cell { level: s, cell: id, inner: Box::new(inner) },
                    ));
                }
            }
        }
    }
    Ok(RegularityReport::pass(ReportMode::Exact))
}

/// `P` (a ⟨δ⟩-good (k−1)-partition refining the classes of the k-graph
/// `H`) is ⟨δ⟩-regular for `H` when, for every class `i`, the partition
/// `E_i(P) ∪ V_i(P)` of `G^i_H` is ⟨δ⟩-regular. Goodness is checked first
/// and without edits; `modes` holds one edit mode per class (a single entry
/// is reused for all).
pub fn is_kgraph_delta_regular_partition(
    h: &KGraph,
    p: &KPartition,
    delta: &Rational,
    modes: &[EditMode],
    caps: &Caps,
) -> Result<RegularityReport> {
    let k = h.k();
    if k < 2 || h.layout().num_classes() != k {
        return Err(Error::InvalidArgument(format!("need a k-graph on exactly k ≥ 2 classes (k = {k})")));
    }
    if **p.layout() != **h.layout() {
        return Err(Error::ClassMismatch("partition and k-graph have different layouts".into()));
    }
    if p.rank() != k - 1 {
        return Err(Error::InvalidArgument(format!("expected a {}-partition, got rank {}", k - 1, p.rank())));
    }
    if modes.is_empty() || (modes.len() != 1 && modes.len() != k) {
        return Err(Error::InvalidArgument(format!("expected 1 or {k} edit modes, got {}", modes.len())));
    }
    if let Some(w) = p.validate().witness {
        return Err(Error::InvalidPartition(format!("{w:?}")));
    }
    if !p.refines_classes() {
        return Err(Error::PreconditionUnmet("the vertex partition does not refine the classes".into()));
    }
    let good = is_good_partition(p, delta, caps)?;
    if !good.verdict {
        return Ok(good.with_note("the partition is not ⟨δ⟩-good"));
    }
    let mut mode_used = ReportMode::Exact;
    let mut total_edits = 0;
    for i in 0..k {
        let mode = &modes[if modes.len() == 1 { 0 } else { i }];
        mode_used = mode_used.combine(mode.report_mode());
        let aux = aux_graph(h, i)?;
        let layout = h.layout();
        let sides = AuxSides::new(p, &aux, i);
        let (left_ids, right_ids) = (&sides.left_ids, &sides.right_ids);
        let (left_parts, right_parts) = (&sides.left_parts, &sides.right_parts);
        let pp = PartitionedPair { graph: aux.graph(), left_parts, right_parts };
        let to_slots = |e: &Edge| {
            if e.len() != k || !layout.is_crossing(e) {
                return None;
            }
            let v = *e.vertices().iter().find(|&&v| layout.class_of(v) == Some(i))?;
            Some((aux.left_index(&e.without(v))?, layout.position(v)?))
        };
        let (violation, edits) = run_mode(&pp, mode, delta, caps, to_slots)?;
        total_edits += edits;
        if let Some((li, ri, v)) = violation {
            let w = violation_witness(Some(i), (left_ids[li], right_ids[ri]), v, |x| aux.left_vertex(x), |y| aux.right()[y]);
            return Ok(RegularityReport::fail(mode_used, w).with_edits(total_edits));
        }
    }
    Ok(RegularityReport::pass(mode_used).with_edits(total_edits))
}

/// The partition `E_i(P) ∪ V_i(P)` of the sides of `G^i_H`, as part ids and
/// index lists.
pub(crate) struct AuxSides {
    pub left_ids: Vec<usize>,
    pub left_parts: Vec<Vec<usize>>,
    pub right_ids: Vec<usize>,
    pub right_parts: Vec<Vec<usize>>,
}

impl AuxSides {
    pub fn new(p: &KPartition, aux: &AuxGraph, i: usize) -> Self {
        let r = p.rank();
        let left_ids = p.transversal_cells(i);
        let left_parts = left_ids
            .iter()
            .map(|&id| {
                if r == 1 {
                    p.vertex_parts().part(id).iter().map(|&v| aux.left_index(&Edge::singleton(v)).unwrap()).collect()
                } else {
                    p.cell(r, id).edges.iter().map(|e| aux.left_index(e).unwrap()).collect()
                }
            })
            .collect();
        let right_ids = p.class_parts(i);
        let layout = aux.layout();
        let right_parts = right_ids
            .iter()
            .map(|&id| p.vertex_parts().part(id).iter().map(|&v| layout.position(v).unwrap()).collect())
            .collect();
        AuxSides { left_ids, left_parts, right_ids, right_parts }
    }
}

/// For edge-disjoint 2-graphs on the same two classes: if every one is a
/// ⟨δ⟩-regular pair, their union must be too. Returns whether that
/// implication holds here.
pub fn union_regularity_check(parts: &[KGraph], delta: &Rational, caps: &Caps) -> Result<bool> {
    let Some(first) = parts.first() else {
        return Ok(true);
    };
    let mut union = first.clone();
    for g in &parts[1..] {
        if g.layout() != first.layout() {
            return Err(Error::ClassMismatch("parts are on different classes".into()));
        }
        if g.edges().iter().any(|e| union.contains(e)) {
            return Err(Error::NotEdgeDisjoint);
        }
        union = union.union(g)?;
    }
    bipartite_of(&union)?;
    for g in parts {
        if !super::pair::is_pair_delta_regular(g, delta, caps)?.verdict {
            return Ok(true);
        }
    }
    Ok(super::pair::is_pair_delta_regular(&union, delta, caps)?.verdict)
}
