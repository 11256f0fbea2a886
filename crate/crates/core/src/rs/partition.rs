use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, KGraph};
use crate::limits::Caps;
use crate::partition::KPartition;
use crate::rational::{self, Rational};
use crate::report::{RegularityReport, ReportMode, Witness};

use super::polyad::eps_regular_edges;
use super::DensityFn;

pub(crate) fn check_partition_for(h: &KGraph, p: &KPartition) -> Result<()> {
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
    if let Some(w) = p.validate().witness {
        return Err(Error::InvalidPartition(format!("{w:?}")));
    }
    Ok(())
}

/// The k-polyads of a (k−1)-partition with a non-empty clique set of
/// transversal k-sets, keyed by their cell ids, with `H ∩ K(P)`.
pub(crate) fn top_polyads<'a>(h: &'a KGraph, p: &KPartition) -> BTreeMap<Vec<usize>, (Vec<Edge>, Vec<&'a Edge>)> {
    let k = h.k();
    p.clique_groups(k, true)
        .into_iter()
        .map(|(sig, cliques)| {
            let hits: Vec<&Edge> = cliques.iter().filter_map(|c| h.edges().get(c)).collect();
            (sig, (cliques, hits))
        })
        .collect()
}

/// `P` is ε-regular for `H` when the clique sets of the k-polyads in which
/// `H` is not ε-regular have total size at most `ε·|V(H)|^k`.
pub fn is_eps_regular_partition(h: &KGraph, p: &KPartition, eps: &Rational, caps: &Caps) -> Result<RegularityReport> {
    check_partition_for(h, p)?;
    let k = h.k();
    let limit = eps * rational::pow(&rational::int(h.layout().num_vertices()), k as u64);
    let mut irregular = 0usize;
    let mut first = None;
    for (sig, (cliques, hits)) in top_polyads(h, p) {
        let polyad = p.polyad_from_ids(k, &sig)?;
        let r = eps_regular_edges(&hits, &polyad, eps, None, caps)?;
        if !r.verdict {
            irregular += cliques.len();
            first.get_or_insert(Witness::Polyad { cells: sig, inner: Box::new(r.witness.unwrap()) });
        }
    }
    if rational::int(irregular) <= limit {
        Ok(RegularityReport::pass(ReportMode::Exact))
    } else {
        let w = Witness::Mass { irregular, limit, first: Box::new(first.unwrap()) };
        Ok(RegularityReport::fail(ReportMode::Exact, w))
    }
}

/// The arity vector `(a_1, …, a_r)` if every polyad's clique set is cut into
/// the same number of cells at each level.
pub fn infer_arity(p: &KPartition) -> Option<Vec<usize>> {
    let mut out = alloc::vec![p.vertex_parts().len()];
    for s in 2..=p.rank() {
        let counts = cells_per_polyad(p, s);
        let mut values = counts.values();
        let a = *values.next()?;
        if values.any(|&c| c != a) {
            return None;
        }
        out.push(a);
    }
    Some(out)
}

fn cells_per_polyad(p: &KPartition, s: usize) -> BTreeMap<&[usize], usize> {
    let mut counts: BTreeMap<&[usize], usize> = BTreeMap::new();
    for c in p.level(s) {
        *counts.entry(&c.polyad[..]).or_default() += 1;
    }
    counts
}

/// `d_0 = min(1/a_2, …, 1/a_r)`; `None` for rank 1.
pub fn d_zero(arity: &[usize]) -> Option<Rational> {
    arity.iter().skip(1).map(|&a| rational::frac(1, a)).min()
}

/// `P` (an `(r, a_1, …, a_r)`-partition) is f-equitable when `P^(1)` is
/// equitable and every level-i cell is `(f(d_0), 1/a_i)`-regular in its
/// polyad.
pub fn is_f_equitable(p: &KPartition, arity: &[usize], f: &DensityFn, caps: &Caps) -> Result<RegularityReport> {
    if arity.len() != p.rank() {
        return Err(Error::ArityMismatch(format!("{} entries for a rank-{} partition", arity.len(), p.rank())));
    }
    if arity[0] != p.vertex_parts().len() {
        return Err(Error::ArityMismatch(format!("a_1 = {} but there are {} vertex parts", arity[0], p.vertex_parts().len())));
    }
    for s in 2..=p.rank() {
        if let Some((sig, &n)) = cells_per_polyad(p, s).iter().find(|(_, &n)| n != arity[s - 1]) {
            return Err(Error::ArityMismatch(format!(
                "level {s}: polyad {sig:?} has {n} cells, expected {}",
                arity[s - 1]
            )));
        }
    }
    if !p.vertex_parts().is_equitable() {
        return Ok(RegularityReport::fail(ReportMode::Exact, Witness::Message("the vertex partition is not equitable".into())));
    }
    let Some(d0) = d_zero(arity) else {
        return Ok(RegularityReport::pass(ReportMode::Exact));
    };
    let eps = f.eval(&d0);
    for s in 2..=p.rank() {
        let d = rational::frac(1, arity[s - 1]);
        for (id, cell) in p.level(s).iter().enumerate() {
            let polyad = p.polyad_of(s, id)?;
            let hs: Vec<&Edge> = cell.edges.iter().collect();
            let r = eps_regular_edges(&hs, &polyad, &eps, Some(&d), caps)?;
            if let Some(w) = r.witness {
                return Ok(RegularityReport::fail(ReportMode::Exact, Witness::Cell { level: s, cell: id, inner: Box::new(w) }));
            }
        }
    }
    Ok(RegularityReport::pass(ReportMode::Exact))
}

/// The cells of a partition level as k-graphs over their polyads' classes.
pub fn cell_graph(p: &KPartition, s: usize, id: usize) -> Result<KGraph> {
    let polyad = p.polyad_of(s, id)?;
    KGraph::new(Arc::clone(polyad.layout()), s, p.cell(s, id).edges.iter().cloned())
}
