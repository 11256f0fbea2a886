//! Instance generators: the tight-cycle pasting, the k-graph built from a
//! bipartite graph on a product side, a structural stand-in for the core
//! edge-partition construction with the inductive assembly on top of it, and
//! the triangle-free tripartite graph whose pairs are all ⟨δ⟩-regular,
//! with blow-ups and the convex-decomposition check behind them.

mod assemble;
mod bipartite;
mod convex;
mod counterexample;
mod cycle;
mod provider;

pub use assemble::{
    assemble_inductive, cycle_ground_sets, cycle_instance, required_chain_len, toy_vertex_chain, CycleInstance,
    EquipartitionChain, GrowthIndexMaps, IndexMaps, ToyIndexMaps,
};
pub use bipartite::{hypergraph_from_bipartite, hypergraph_from_pairs};
pub use convex::{convex_decompose, pair_density_property, verify_blowup_regularity, BlowupRegularityReport, ConvexTerm};
pub use counterexample::{blow_up, counterexample_gen, triangles, BlowUpMap, Counterexample, CLASS_PAIRS};
pub use cycle::{cycle_edge, cycle_edge_layout, cycle_layout, ground_set, paste_cycle, tight_cycle};
pub use provider::{check_provider_output, CorePartitionProvider, StubProvider};
