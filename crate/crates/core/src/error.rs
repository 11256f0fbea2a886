use alloc::string::String;

use crate::hypergraph::Edge;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid layout: {0}")]
    InvalidLayout(String),
    #[error("invalid edge {edge:?}: {reason}")]
    InvalidEdge { edge: Edge, reason: &'static str },
    #[error("vertex {0} is not in the expected class")]
    SubsetOutOfClass(u32),
    #[error("edge {0:?} is not an edge of the polyad part")]
    EdgeNotInPart(Edge),
    #[error("edge {0:?} is not a clique of the underlying polyad")]
    UnderlieViolation(Edge),
    #[error("partitions are over different universes ({0} vs {1})")]
    UniverseMismatch(usize, usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("cell {0} is not a cell of the partition at the required level")]
    CellNotInPartition(usize),
    #[error("pair with {left}+{right} vertices exceeds the exact enumeration cap {cap}")]
    SidesTooLarge { left: usize, right: usize, cap: usize },
    #[error("instance too large: {0}")]
    InstanceTooLarge(String),
    #[error("edit certificate uses {used} edits, budget is {budget}")]
    BudgetExceeded { used: usize, budget: usize },
    #[error("invalid edit certificate: {0}")]
    InvalidCertificate(String),
    #[error("bipartite graphs are not edge-disjoint")]
    NotEdgeDisjoint,
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("subset of size {size} is smaller than the required {required}")]
    SubsetTooSmall { size: usize, required: String },
    #[error("not a complex: {0}")]
    NotAComplex(String),
    #[error("exponent is not an exact non-negative power of two: {0}")]
    NonIntegerExponent(String),
    #[error("assertion failed: {0}")]
    AssertionFailed(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("class mismatch: {0}")]
    ClassMismatch(String),
    #[error("overlapping edge {0:?}")]
    OverlapDetected(Edge),
    #[error("{0} is not divisible by 2^{1}")]
    Divisibility(usize, usize),
    #[error("index {index} out of range (chain length {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("component {0} is outside [0,1]")]
    ComponentOutOfRange(usize),
    #[error("size precondition: {0}")]
    SizePrecondition(String),
}

impl Error {
    /// True for errors that come from an enumeration cap rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::SidesTooLarge { .. } | Error::InstanceTooLarge(_))
    }
}
