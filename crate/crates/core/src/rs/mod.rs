//! Rödl–Schacht regularity: (ε,d)-regularity in polyads, ε-regular and
//! f-equitable partitions, complexes with the dense counting comparison
//! and slicing, and the reduction to graph ⟨δ⟩-regularity.

mod complex;
mod density_fn;
mod partition;
mod polyad;
mod reduction;

pub use complex::{dense_counting_check, slice_complex, Complex, DenseCountingReport};
pub use density_fn::DensityFn;
pub use partition::{cell_graph, d_zero, infer_arity, is_eps_regular_partition, is_f_equitable};
pub use polyad::{is_eps_regular_in_polyad, is_eps_regular_in_polyad_sampled};
pub use reduction::{k_reduction_check, ImplicationStatus, KReductionReport};
