use alloc::string::String;
use alloc::vec::Vec;

use crate::delta::{pair_violation_sized, AuxSides};
use crate::error::{Error, Result};
use crate::hypergraph::{aux_graph, KGraph};
use crate::limits::Caps;
use crate::partition::KPartition;
use crate::rational::{self, Rational};
use crate::report::{RegularityReport, ReportMode, Witness};

use super::partition::{check_partition_for, infer_arity, is_f_equitable, top_polyads};
use super::polyad::one_sided_in_polyad;
use super::DensityFn;

/// Outcome of testing an implication on one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImplicationStatus {
    /// Some hypothesis fails, so the instance says nothing.
    Vacuous,
    /// Hypotheses and conclusion hold.
    Holds,
    /// Hypotheses hold and the conclusion fails.
    Violated,
}

impl ImplicationStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ImplicationStatus::Vacuous => "vacuous",
            ImplicationStatus::Holds => "holds",
            ImplicationStatus::Violated => "violated",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KReductionReport {
    pub status: ImplicationStatus,
    pub f_equitable: bool,
    pub density_condition: bool,
    pub conclusion: RegularityReport,
    pub notes: Vec<String>,
}

/// Tests the reduction from hypergraph to graph regularity on one instance.
///
/// Hypotheses: `P^(1)` refines the classes, `P` is f-equitable for
/// `f(x) = δ⁴(x/2)^{2^{k+3}}`, and in every k-polyad `P` each `S ⊆ P` with
/// `|K(S)| ≥ δ|K(P)|` has `d_H(S) ≥ ⅔·d_H(P)`. Conclusion: every pair of
/// `E_k(P) ∪ V_k(P)` in `G^k_H` is ⟨2√δ⟩-regular without edits, with the
/// least admissible sizes `⌈2√δ·|A|⌉` computed exactly.
///
/// The implication is only asserted above a size threshold that is never
/// made explicit, so a violation at small scale is a flag, not a proof.
pub fn k_reduction_check(h: &KGraph, p: &KPartition, delta: &Rational, caps: &Caps) -> Result<KReductionReport> {
    check_partition_for(h, p)?;
    if !p.refines_classes() {
        return Err(Error::PreconditionUnmet("the vertex partition does not refine the classes".into()));
    }
    let k = h.k();
    let mut notes = Vec::new();
    let f_equitable = match infer_arity(p) {
        Some(arity) => is_f_equitable(p, &arity, &DensityFn::reduction(k as u32, delta), caps)?.verdict,
        None => {
            notes.push("cells per polyad vary, so the partition has no arity vector".into());
            false
        }
    };
    let mut density_condition = true;
    for (sig, (_, hits)) in top_polyads(h, p) {
        let polyad = p.polyad_from_ids(k, &sig)?;
        if one_sided_in_polyad(&hits, &polyad, delta, &rational::ratio(2, 3), caps)?.is_some() {
            density_condition = false;
            break;
        }
    }
    let conclusion = perfectly_regular_last_class(h, p, delta, caps)?;
    let status = match (f_equitable && density_condition, conclusion.verdict) {
        (false, _) => ImplicationStatus::Vacuous,
        (true, true) => ImplicationStatus::Holds,
        (true, false) => ImplicationStatus::Violated,
    };
    notes.push("the size threshold n_0 is not instantiated; the result is advisory".into());
    Ok(KReductionReport { status, f_equitable, density_condition, conclusion, notes })
}

/// Every pair of `E_k(P) ∪ V_k(P)` in `G^k_H` is ⟨2√δ⟩-regular.
fn perfectly_regular_last_class(h: &KGraph, p: &KPartition, delta: &Rational, caps: &Caps) -> Result<RegularityReport> {
    let i = h.k() - 1;
    let aux = aux_graph(h, i)?;
    let sides = AuxSides::new(p, &aux, i);
    let two = rational::int(2);
    for (li, lp) in sides.left_parts.iter().enumerate() {
        for (ri, rp) in sides.right_parts.iter().enumerate() {
            let min_a = rational::ceil_sqrt_times(&two, delta, lp.len());
            let min_b = rational::ceil_sqrt_times(&two, delta, rp.len());
            if let Some(v) = pair_violation_sized(aux.graph(), lp, rp, min_a, min_b, &rational::half(), caps)? {
                let w = Witness::Pair {
                    aux_class: Some(i),
                    parts: (sides.left_ids[li], sides.right_ids[ri]),
                    left: v.left.iter().map(|&x| aux.left_vertex(x)).collect(),
                    right: v.right.iter().map(|&y| aux.right()[y]).collect(),
                    density: v.density,
                    threshold: v.threshold,
                };
                return Ok(RegularityReport::fail(ReportMode::Heuristic, w));
            }
        }
    }
    Ok(RegularityReport::pass(ReportMode::Heuristic))
}
