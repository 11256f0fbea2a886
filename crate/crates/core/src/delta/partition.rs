use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::{BipartiteGraph, Edge, KGraph};
use crate::hypergraph::kgraph::combinations;
use crate::limits::Caps;
use crate::partition::Partition;
use crate::rational::{self, Rational};
use crate::report::{RegularityReport, ReportMode, Witness};

use super::pair::{bipartite_of, pair_violation, pair_witness, PairViolation};

/// Edges to add to and remove from a graph (2-sets for graphs, k-sets for
/// the auxiliary graphs of a k-graph).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EditCertificate {
    pub added: BTreeSet<Edge>,
    pub removed: BTreeSet<Edge>,
}

impl EditCertificate {
    pub fn len(&self) -> usize {
        self.added.len() + self.removed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// How the edit clause of the definition is discharged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EditMode {
    /// No edits allowed.
    Perfect,
    /// Apply the given edits (within budget) and check every pair.
    Certificate(EditCertificate),
    /// Exhaustive search for a smallest sufficient edit set (tiny inputs).
    Search,
}

impl EditMode {
    pub fn report_mode(&self) -> ReportMode {
        match self {
            EditMode::Certificate(_) => ReportMode::Certificate,
            _ => ReportMode::Exact,
        }
    }
}

/// `⌊δ·e⌋`.
pub fn edit_budget(delta: &Rational, edges: usize) -> usize {
    rational::floor_usize(&(delta * rational::int(edges)))
}

/// A bipartite graph with its two sides partitioned (index lists).
pub(crate) struct PartitionedPair<'a> {
    pub graph: &'a BipartiteGraph,
    pub left_parts: &'a [Vec<usize>],
    pub right_parts: &'a [Vec<usize>],
}

/// Slot edits in index coordinates of a bipartite graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct SlotEdits {
    pub added: Vec<(usize, usize)>,
    pub removed: Vec<(usize, usize)>,
}

impl SlotEdits {
    pub fn len(&self) -> usize {
        self.added.len() + self.removed.len()
    }
}

/// First irregular pair `(left part, right part)` in canonical order.
pub(crate) fn first_irregular(
    pp: &PartitionedPair<'_>,
    g: &BipartiteGraph,
    delta: &Rational,
    caps: &Caps,
) -> Result<Option<(usize, usize, PairViolation)>> {
    for (li, lp) in pp.left_parts.iter().enumerate() {
        for (ri, rp) in pp.right_parts.iter().enumerate() {
            if let Some(v) = pair_violation(g, lp, rp, delta, &rational::half(), caps)? {
                return Ok(Some((li, ri, v)));
            }
        }
    }
    Ok(None)
}

/// Applies validated slot edits and checks every pair.
pub(crate) fn check_with_edits(
    pp: &PartitionedPair<'_>,
    edits: &SlotEdits,
    delta: &Rational,
    caps: &Caps,
) -> Result<Option<(usize, usize, PairViolation)>> {
    let budget = edit_budget(delta, pp.graph.edge_count());
    if edits.len() > budget {
        return Err(Error::BudgetExceeded { used: edits.len(), budget });
    }
    let mut g = pp.graph.clone();
    for &(a, b) in &edits.added {
        if !g.insert(a, b) {
            return Err(Error::InvalidCertificate(format!("added slot ({a}, {b}) is already an edge")));
        }
    }
    for &(a, b) in &edits.removed {
        if !g.remove(a, b) {
            return Err(Error::InvalidCertificate(format!("removed slot ({a}, {b}) is not an edge")));
        }
    }
    first_irregular(pp, &g, delta, caps)
}

/// Smallest per-pair edit sets making every pair regular, if their total
/// fits the budget. Pairs own disjoint sets of slots, so the per-pair
/// minima add up to the global minimum.
pub(crate) fn search_edits(pp: &PartitionedPair<'_>, delta: &Rational, caps: &Caps) -> Result<Option<SlotEdits>> {
    let e = pp.graph.edge_count();
    if e > caps.search_edges {
        return Err(Error::InstanceTooLarge(format!(
            "edit search needs e(G) ≤ {}, got {e}",
            caps.search_edges
        )));
    }
    let budget = edit_budget(delta, e);
    let mut total = SlotEdits::default();
    for lp in pp.left_parts {
        for rp in pp.right_parts {
            let remaining = budget - total.len();
            match min_pair_edits(pp.graph, lp, rp, delta, remaining, caps)? {
                Some(edits) => {
                    for (a, b) in edits {
                        if pp.graph.has_edge(a, b) {
                            total.removed.push((a, b));
                        } else {
                            total.added.push((a, b));
                        }
                    }
                }
                None => return Ok(None),
            }
        }
    }
    Ok(Some(total))
}

/// Fewest slot toggles inside `lp × rp` (at most `max`) after which the pair
/// is regular, trying sizes in increasing order and sets in lexicographic
/// order.
fn min_pair_edits(
    g: &BipartiteGraph,
    lp: &[usize],
    rp: &[usize],
    delta: &Rational,
    max: usize,
    caps: &Caps,
) -> Result<Option<Vec<(usize, usize)>>> {
    let slots: Vec<(usize, usize)> = lp.iter().flat_map(|&a| rp.iter().map(move |&b| (a, b))).collect();
    let mut tried = 0u64;
    for t in 0..=max.min(slots.len()) {
        for pick in combinations(slots.len(), t) {
            tried += 1;
            if tried > caps.search_candidates {
                return Err(Error::InstanceTooLarge(format!(
                    "edit search exceeded {} candidates",
                    caps.search_candidates
                )));
            }
            let mut h = g.clone();
            for &i in &pick {
                let (a, b) = slots[i];
                if !h.insert(a, b) {
                    h.remove(a, b);
                }
            }
            if pair_violation(&h, lp, rp, delta, &rational::half(), caps)?.is_none() {
                return Ok(Some(pick.into_iter().map(|i| slots[i]).collect()));
            }
        }
    }
    Ok(None)
}

/// First irregular pair (side part ids and violation) and the number of edits used.
pub(crate) type ModeOutcome = (Option<(usize, usize, PairViolation)>, usize);

/// Runs the chosen mode on a partitioned bipartite graph. `to_slots`
/// converts certificate edges into slot coordinates.
pub(crate) fn run_mode(
    pp: &PartitionedPair<'_>,
    mode: &EditMode,
    delta: &Rational,
    caps: &Caps,
    to_slots: impl Fn(&Edge) -> Option<(usize, usize)>,
) -> Result<ModeOutcome> {
    match mode {
        EditMode::Perfect => Ok((first_irregular(pp, pp.graph, delta, caps)?, 0)),
        EditMode::Certificate(cert) => {
            let convert = |edges: &BTreeSet<Edge>| -> Result<Vec<(usize, usize)>> {
                edges
                    .iter()
                    .map(|e| {
                        to_slots(e).ok_or_else(|| Error::InvalidCertificate(format!("{e:?} is not a slot of the graph")))
                    })
                    .collect()
            };
            let edits = SlotEdits { added: convert(&cert.added)?, removed: convert(&cert.removed)? };
            Ok((check_with_edits(pp, &edits, delta, caps)?, edits.len()))
        }
        EditMode::Search => match search_edits(pp, delta, caps)? {
            Some(edits) => Ok((check_with_edits(pp, &edits, delta, caps)?, edits.len())),
            None => Ok((first_irregular(pp, pp.graph, delta, caps)?, 0)),
        },
    }
}

/// Smallest edit certificate (per pair, lexicographically first) making
/// every pair of the partition regular within budget `⌊δ·e(G)⌋`.
pub fn find_edit_certificate(g: &KGraph, p: &Partition, delta: &Rational, caps: &Caps) -> Result<Option<EditCertificate>> {
    let bg = bipartite_of(g)?;
    let [lparts, rparts] = side_parts(g, p)?;
    let pp = PartitionedPair { graph: bg, left_parts: &lparts, right_parts: &rparts };
    let (l, r) = (g.layout().class(0), g.layout().class(1));
    Ok(search_edits(&pp, delta, caps)?.map(|edits| EditCertificate {
        added: edits.added.iter().map(|&(a, b)| Edge::pair(l[a], r[b])).collect(),
        removed: edits.removed.iter().map(|&(a, b)| Edge::pair(l[a], r[b])).collect(),
    }))
}

/// Position lists of the parts of `p` inside each side, with the part ids.
fn side_parts(g: &KGraph, p: &Partition) -> Result<[Vec<Vec<usize>>; 2]> {
    let layout = g.layout();
    if p.ground_size() != layout.num_vertices() || layout.vertices().any(|v| p.part_of(v).is_none()) {
        return Err(Error::InvalidPartition("the partition does not cover the vertex set".into()));
    }
    let mut sides = [Vec::new(), Vec::new()];
    for part in p.parts() {
        let c = layout.class_of(part[0]).ok_or_else(|| Error::InvalidPartition("part outside the layout".into()))?;
        if part.iter().any(|&v| layout.class_of(v) != Some(c)) {
            return Err(Error::InvalidPartition("a part meets both sides".into()));
        }
        sides[c].push(part.iter().map(|&v| layout.position(v).unwrap()).collect());
    }
    Ok(sides)
}

/// Every pair `(X, Y)` of parts on opposite sides must be ⟨δ⟩-regular after
/// at most `⌊δ·e(G)⌋` edits, discharged according to `mode`.
pub fn is_vertex_partition_delta_regular(
    g: &KGraph,
    p: &Partition,
    delta: &Rational,
    mode: &EditMode,
    caps: &Caps,
) -> Result<RegularityReport> {
    let bg = bipartite_of(g)?;
    let [lparts, rparts] = side_parts(g, p)?;
    let pp = PartitionedPair { graph: bg, left_parts: &lparts, right_parts: &rparts };
    let layout = g.layout();
    let to_slots = |e: &Edge| {
        if e.len() != 2 || !layout.is_crossing(e) {
            return None;
        }
        let vs = layout.class_ordered(e);
        Some((layout.position(vs[0])?, layout.position(vs[1])?))
    };
    let (violation, edits) = run_mode(&pp, mode, delta, caps, to_slots)?;
    let ids = part_ids(g, p);
    Ok(match violation {
        None => RegularityReport::pass(mode.report_mode()).with_edits(edits),
        Some((li, ri, v)) => {
            RegularityReport::fail(mode.report_mode(), pair_witness(layout, None, (ids.0[li], ids.1[ri]), v)).with_edits(edits)
        }
    })
}

/// Ids in `p` of the left-side and right-side parts, in side order.
fn part_ids(g: &KGraph, p: &Partition) -> (Vec<usize>, Vec<usize>) {
    let mut out = (Vec::new(), Vec::new());
    for (id, part) in p.parts().iter().enumerate() {
        if g.layout().class_of(part[0]) == Some(0) {
            out.0.push(id);
        } else {
            out.1.push(id);
        }
    }
    out
}

pub(crate) fn violation_witness(
    aux_class: Option<usize>,
    parts: (usize, usize),
    v: PairViolation,
    left: impl Fn(usize) -> Vec<u32>,
    right: impl Fn(usize) -> u32,
) -> Witness {
    Witness::Pair {
        aux_class,
        parts,
        left: v.left.iter().map(|&i| left(i)).collect(),
        right: v.right.iter().map(|&i| right(i)).collect(),
        density: v.density,
        threshold: v.threshold,
    }
}
