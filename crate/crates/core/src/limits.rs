//! Enumeration caps shared by the exhaustive checkers.

/// Size limits above which exact checkers refuse to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest `|A| + |B|` for an exact pair check.
    pub pair_sides: usize,
    /// Largest number of polyad edges for an exact sub-polyad enumeration.
    pub polyad_edges: usize,
    /// Largest `e(G)` for exhaustive edit search.
    pub search_edges: usize,
    /// Largest number of candidate edit sets tried per pair in edit search.
    pub search_candidates: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { pair_sides: 32, polyad_edges: 18, search_edges: 12, search_candidates: 2_000_000 }
    }
}
