//! k-partite k-graphs, polyads and bipartite auxiliary graphs.

pub(crate) mod aux;
mod bipartite;
mod edge;
pub(crate) mod kgraph;
mod layout;
mod polyad;

pub use aux::{aux_graph, aux_graph_restricted, AuxGraph, CompositeVertex, LeftSide};
pub use bipartite::BipartiteGraph;
pub use edge::Edge;
pub use kgraph::{relative_density, KGraph};
pub use layout::{Vertex, VertexLayout};
pub use polyad::Polyad;
