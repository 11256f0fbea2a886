//! The shared JSON formats: instances, complexes and hierarchical partitions.
//!
//! Files always use dense vertex ids (class by class, in position order).
//! Graphs whose layout is not contiguous, such as pasted tight cycles, are
//! relabelled on the way out through a [`DenseIds`] map.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

use regforge_core::partition::Cell;
use regforge_core::rs::Complex;
use regforge_core::{Edge, KGraph, KPartition, Vertex, VertexLayout};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Largest total vertex count accepted from a file.
pub const MAX_VERTICES: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassSpec {
    pub label: String,
    pub size: usize,
}

/// Where a generated artifact came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub generator: String,
    pub version: String,
    pub seed: u64,
    pub params: BTreeMap<String, String>,
}

impl Provenance {
    pub fn new(generator: &str, seed: u64, params: impl IntoIterator<Item = (&'static str, String)>) -> Self {
        Provenance {
            generator: generator.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        }
    }
}

/// `{ "k", "classes", "edges" }`, optionally with a provenance header, the
/// lower levels of a complex and generator annotations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    pub k: usize,
    pub classes: Vec<ClassSpec>,
    pub edges: Vec<Vec<Vertex>>,
    /// Levels `2, …, k−1` of a complex whose top level is `edges`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lower_levels: Vec<Vec<Vec<Vertex>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotations: Option<serde_json::Value>,
}

/// Map from layout ids to dense file ids.
#[derive(Debug, Clone)]
pub struct DenseIds {
    ids: BTreeMap<Vertex, Vertex>,
}

impl DenseIds {
    pub fn new(layout: &VertexLayout) -> Self {
        let ids = (0..layout.num_classes())
            .flat_map(|i| layout.class(i).iter().copied())
            .enumerate()
            .map(|(d, v)| (v, d as Vertex))
            .collect();
        DenseIds { ids }
    }

    pub fn get(&self, v: Vertex) -> Vertex {
        self.ids[&v]
    }

    pub fn edge(&self, e: &Edge) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = e.vertices().iter().map(|&v| self.get(v)).collect();
        out.sort_unstable();
        out
    }

    /// Sorted dense edge list.
    pub fn edges<'a>(&self, edges: impl IntoIterator<Item = &'a Edge>) -> Vec<Vec<Vertex>> {
        let mut out: Vec<Vec<Vertex>> = edges.into_iter().map(|e| self.edge(e)).collect();
        out.sort();
        out
    }

    pub fn vertices(&self, vs: &[Vertex]) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = vs.iter().map(|&v| self.get(v)).collect();
        out.sort_unstable();
        out
    }
}

fn class_specs(layout: &VertexLayout) -> Vec<ClassSpec> {
    (0..layout.num_classes()).map(|i| ClassSpec { label: layout.label(i).to_string(), size: layout.class_size(i) }).collect()
}

/// The contiguous layout described by class specs.
pub fn layout_of(classes: &[ClassSpec]) -> Result<Arc<VertexLayout>, CliError> {
    let total = classes.iter().try_fold(0usize, |acc, c| acc.checked_add(c.size));
    match total {
        Some(n) if n <= MAX_VERTICES => {}
        _ => return Err(CliError::Cap(format!("more than {MAX_VERTICES} vertices"))),
    }
    Ok(Arc::new(VertexLayout::contiguous(classes.iter().map(|c| (c.label.clone(), c.size)))?))
}

fn edge_set(edges: &[Vec<Vertex>]) -> BTreeSet<Edge> {
    edges.iter().map(|e| Edge::new(e.clone())).collect()
}

fn check_distinct(edges: &[Vec<Vertex>]) -> Result<(), CliError> {
    let mut seen = BTreeSet::new();
    for e in edges {
        let edge = Edge::new(e.clone());
        if edge.len() != e.len() {
            return Err(CliError::Input(format!("edge {e:?} repeats a vertex")));
        }
        if !seen.insert(edge) {
            return Err(CliError::Input(format!("edge {e:?} is listed twice")));
        }
    }
    Ok(())
}

impl InstanceFile {
    /// An instance for `g`, relabelled to dense ids.
    pub fn from_graph(g: &KGraph) -> Self {
        let ids = DenseIds::new(g.layout());
        InstanceFile {
            provenance: None,
            k: g.k(),
            classes: class_specs(g.layout()),
            edges: ids.edges(g.edges()),
            lower_levels: Vec::new(),
            annotations: None,
        }
    }

    pub fn from_complex(c: &Complex) -> Self {
        let ids = DenseIds::new(c.layout());
        let k = c.k();
        let levels: Vec<Vec<Vec<Vertex>>> = (2..k).map(|r| ids.edges(c.level(r))).collect();
        let (top, lower) = levels.split_last().map(|(t, l)| (t.clone(), l.to_vec())).unwrap_or_default();
        InstanceFile {
            provenance: None,
            k: k.saturating_sub(1),
            classes: class_specs(c.layout()),
            edges: top,
            lower_levels: lower,
            annotations: None,
        }
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = Some(p);
        self
    }

    pub fn with_annotations(mut self, a: serde_json::Value) -> Self {
        self.annotations = Some(a);
        self
    }

    pub fn layout(&self) -> Result<Arc<VertexLayout>, CliError> {
        layout_of(&self.classes)
    }

    pub fn to_graph(&self) -> Result<KGraph, CliError> {
        if !self.lower_levels.is_empty() {
            return Err(CliError::Input("a complex was given where a k-graph was expected".into()));
        }
        check_distinct(&self.edges)?;
        Ok(KGraph::new(self.layout()?, self.k, edge_set(&self.edges))?)
    }

    /// The complex `lower_levels ++ [edges]` on the classes; `k` is the
    /// uniformity of the top level, one less than the number of classes.
    pub fn to_complex(&self) -> Result<Complex, CliError> {
        if self.k + 1 != self.classes.len() || self.lower_levels.len() + 3 != self.classes.len() {
            return Err(CliError::Input(format!(
                "a complex on {} classes needs k = {} and {} lower levels",
                self.classes.len(),
                self.classes.len().saturating_sub(1),
                self.classes.len().saturating_sub(3)
            )));
        }
        let mut levels = Vec::with_capacity(self.classes.len());
        for l in self.lower_levels.iter().chain(std::iter::once(&self.edges)) {
            check_distinct(l)?;
            levels.push(edge_set(l));
        }
        Ok(Complex::new(self.layout()?, levels)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellSpec {
    pub polyad: Vec<usize>,
    pub edges: Vec<Vec<Vertex>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelSpec {
    pub s: usize,
    pub cells: Vec<CellSpec>,
}

/// `{ "rank", "vertex_parts", "levels": [{ "s", "cells" }] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionFile {
    pub rank: usize,
    pub vertex_parts: Vec<Vec<Vertex>>,
    pub levels: Vec<LevelSpec>,
}

impl PartitionFile {
    pub fn from_kpartition(p: &KPartition) -> Self {
        let ids = DenseIds::new(p.layout());
        PartitionFile {
            rank: p.rank(),
            vertex_parts: p.vertex_parts().parts().iter().map(|part| ids.vertices(part)).collect(),
            levels: (2..=p.rank())
                .map(|s| LevelSpec {
                    s,
                    cells: p.level(s).iter().map(|c| CellSpec { polyad: c.polyad.clone(), edges: ids.edges(&c.edges) }).collect(),
                })
                .collect(),
        }
    }

    /// Parses against a contiguous layout and validates the hierarchy.
    pub fn to_kpartition(&self, layout: Arc<VertexLayout>) -> Result<KPartition, CliError> {
        if self.rank == 0 || self.levels.len() + 1 != self.rank {
            return Err(CliError::Input(format!("rank {} with {} levels", self.rank, self.levels.len())));
        }
        let mut levels = Vec::with_capacity(self.levels.len());
        for (i, l) in self.levels.iter().enumerate() {
            if l.s != i + 2 {
                return Err(CliError::Input(format!("level {} is labelled s = {}", i + 2, l.s)));
            }
            let mut cells = Vec::with_capacity(l.cells.len());
            for c in &l.cells {
                check_distinct(&c.edges)?;
                cells.push(Cell::new(c.polyad.clone(), edge_set(&c.edges)));
            }
            levels.push(cells);
        }
        Ok(KPartition::checked(layout, self.vertex_parts.clone(), levels)?)
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use regforge_core::construct::{cycle_layout, tight_cycle};

    #[test]
    fn round_trip_instance() {
        let l = Arc::new(VertexLayout::uniform(3, 2));
        let g = KGraph::new(l, 3, [Edge::from([0, 2, 4]), Edge::from([1, 3, 5])]).unwrap();
        let f = InstanceFile::from_graph(&g);
        assert_eq!(f.edges, vec![vec![0, 2, 4], vec![1, 3, 5]]);
        let back: InstanceFile = serde_json::from_str(&to_json_string(&f)).unwrap();
        assert_eq!(back.to_graph().unwrap(), g);
    }

    #[test]
    fn non_contiguous_layouts_are_relabelled() {
        let l = cycle_layout(2, 1).unwrap();
        let g = tight_cycle(2).unwrap().relayout(l).unwrap();
        let f = InstanceFile::from_graph(&g);
        // Classes {0, 2} and {1, 3} become {0, 1} and {2, 3}.
        assert_eq!(f.edges, vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);
        assert!(f.to_graph().is_ok());
    }

    #[test]
    fn rejects_unknown_fields_and_repeats() {
        assert!(serde_json::from_str::<InstanceFile>(r#"{"k":2,"classes":[],"edges":[],"extra":1}"#).is_err());
        let f: InstanceFile =
            serde_json::from_str(r#"{"k":2,"classes":[{"label":"A","size":1},{"label":"B","size":1}],"edges":[[0,1],[1,0]]}"#)
                .unwrap();
        assert!(matches!(f.to_graph(), Err(CliError::Input(_))));
    }

    #[test]
    fn partition_round_trip() {
        let l = Arc::new(VertexLayout::uniform(3, 2));
        let p = KPartition::trivial(l.clone(), 2);
        let f = PartitionFile::from_kpartition(&p);
        assert_eq!(f.levels.len(), 1);
        assert_eq!(f.to_kpartition(l).unwrap(), p);
    }
}
