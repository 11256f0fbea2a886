//! Verdicts returned by every checker.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use crate::hypergraph::{CompositeVertex, Edge, Vertex};
use crate::rational::Rational;

/// How strong a verdict is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReportMode {
    /// Exhaustive check of the definition.
    Exact,
    /// Exhaustive check after applying a caller-supplied edit certificate.
    Certificate,
    /// Sampled or below-threshold check; never a proof either way.
    Heuristic,
}

impl ReportMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ReportMode::Exact => "exact",
            ReportMode::Certificate => "certificate",
            ReportMode::Heuristic => "heuristic",
        }
    }

    /// The weaker of two modes.
    pub fn combine(self, other: ReportMode) -> ReportMode {
        use ReportMode::*;
        match (self, other) {
            (Heuristic, _) | (_, Heuristic) => Heuristic,
            (Certificate, _) | (_, Certificate) => Certificate,
            _ => Exact,
        }
    }
}

/// Evidence attached to a failed (or, for counting, any) verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Subsets `A' ⊆ A`, `B' ⊆ B` of a pair whose density falls below the
    /// threshold. Left vertices are composite for auxiliary graphs and
    /// singletons otherwise.
    Pair {
        /// Class `i` of the auxiliary graph `G^i_H`, when the pair lives in one.
        aux_class: Option<usize>,
        /// Ids of the two parts, in the left and right side partitions.
        parts: (usize, usize),
        left: Vec<CompositeVertex>,
        right: Vec<Vertex>,
        density: Rational,
        threshold: Rational,
    },
    /// A cell of a k-partition and what went wrong inside it.
    Cell { level: usize, cell: usize, inner: Box<Witness> },
    /// A structural violation of a k-partition.
    Structure { level: usize, reason: String, cell: Option<usize>, tuple: Option<Edge> },
    /// A sub-polyad `S ⊆ P` (its parts) whose relative density is out of
    /// band.
    SubPolyad { parts: Vec<Vec<Edge>>, cliques: usize, density: Rational, low: Rational, high: Rational },
    /// A polyad of a partition (by the ids of its cells one level down).
    Polyad { cells: Vec<usize>, inner: Box<Witness> },
    /// Accumulated clique mass of irregular polyads against its limit.
    Mass { irregular: usize, limit: Rational, first: Box<Witness> },
    /// Free-form evidence.
    Message(String),
}

/// Verdict plus evidence and statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityReport {
    pub verdict: bool,
    pub witness: Option<Witness>,
    pub edits_used: usize,
    pub mode: ReportMode,
    pub notes: Vec<String>,
}

impl RegularityReport {
    pub fn pass(mode: ReportMode) -> Self {
        RegularityReport { verdict: true, witness: None, edits_used: 0, mode, notes: Vec::new() }
    }

    pub fn fail(mode: ReportMode, witness: Witness) -> Self {
        RegularityReport { verdict: false, witness: Some(witness), edits_used: 0, mode, notes: Vec::new() }
    }

    pub fn with_edits(mut self, edits: usize) -> Self {
        self.edits_used = edits;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_combination_takes_weaker() {
        assert_eq!(ReportMode::Exact.combine(ReportMode::Certificate), ReportMode::Certificate);
        assert_eq!(ReportMode::Certificate.combine(ReportMode::Heuristic), ReportMode::Heuristic);
        assert_eq!(ReportMode::Exact.combine(ReportMode::Exact), ReportMode::Exact);
    }
}
