//! Set partitions, approximate refinement and hierarchical k-partitions.

mod decompose;
mod generate;
mod hierarchy;
mod set;

pub use decompose::{decompose_compose, PartitionPolyad};
pub use generate::{random_kpartition, random_split, random_vertex_parts};
pub use hierarchy::{Cell, KPartition};
pub use set::{ApproxRefineReport, BestUnion, Partition, VertexPartition};
