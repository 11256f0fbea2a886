//! Exact combinatorics for the regularity of k-partite k-uniform hypergraphs.
//!
//! The crate is `no_std` (it needs `alloc`) and purely functional: every
//! value is immutable after construction and every check is a pure function
//! of its inputs. Densities and thresholds are exact rationals throughout.
//!
//! Modules:
//! - [`hypergraph`]: vertex layouts, k-graphs, polyads and their clique sets,
//!   bipartite auxiliary graphs.
//! - [`partition`]: set partitions, exact and approximate refinement, the
//!   hierarchical k-partitions and their decomposition into polyads.
//! - [`delta`]: ⟨δ⟩-regularity of pairs, vertex partitions and k-partitions.
//! - [`rs`]: (ε,d)-regularity in polyads, ε-regular and f-equitable
//!   partitions, complexes and the dense counting comparator.
//! - [`growth`]: exact power-of-two towers for the Ackermann-scale growth
//!   functions and the inequalities relating them.
//! - [`construct`]: instance generators (tight-cycle pasting, inductive
//!   assembly, the triangle-free counterexample, blow-ups).
#![no_std]

extern crate alloc;

pub mod construct;
pub mod delta;
pub mod error;
pub mod growth;
pub mod hypergraph;
pub mod limits;
pub mod partition;
pub mod rational;
pub mod report;
pub mod rs;
pub mod sample;

pub use error::{Error, Result};
pub use hypergraph::{BipartiteGraph, Edge, KGraph, Polyad, Vertex, VertexLayout};
pub use partition::{KPartition, Partition};
pub use rational::Rational;
pub use report::{RegularityReport, ReportMode, Witness};
