//! ⟨δ⟩-regularity: pairs, partitioned bipartite graphs, ⟨δ⟩-good
//! k-partitions and ⟨δ⟩-regular partitions of k-graphs.
//!
//! A pair `(A, B)` is ⟨δ⟩-regular when every `A' ⊆ A`, `B' ⊆ B` with
//! `|A'| ≥ δ|A|` and `|B'| ≥ δ|B|` has `d(A', B') ≥ ½·d(A, B)`. Size bounds
//! are taken literally, so the least admissible size is `⌈δ|A|⌉`.

mod kpartition;
mod pair;
mod partition;

#[cfg(test)]
mod tests;

pub(crate) use kpartition::AuxSides;
pub use kpartition::{is_good_partition, is_kgraph_delta_regular_partition, union_regularity_check};
pub use pair::{is_pair_delta_regular, pair_violation, pair_violation_sized, PairViolation};
pub use partition::{edit_budget, find_edit_certificate, is_vertex_partition_delta_regular, EditCertificate, EditMode};
