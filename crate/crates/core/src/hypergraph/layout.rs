use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

use super::Edge;

pub type Vertex = u32;

const ABSENT: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
struct VertexClass {
    label: String,
    vertices: Vec<Vertex>,
}

/// Ordered vertex classes over a universe of ids `0..universe`.
///
/// Instance layouts are contiguous (ids grouped by class, dense from 0);
/// layouts derived by restriction keep the ids of the universe they came
/// from, so vertices never get renumbered when moving between a graph and
/// its sub-structures. Class and in-class position lookups are O(1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexLayout {
    classes: Vec<VertexClass>,
    universe: usize,
    class_of: Vec<u32>,
    position: Vec<u32>,
}

impl VertexLayout {
    /// Contiguous layout: class `i` owns the next `size_i` ids.
    pub fn contiguous<S: Into<String>>(classes: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut next = 0u32;
        let mut out = Vec::new();
        for (label, size) in classes {
            if size == 0 {
                return Err(Error::InvalidLayout("class sizes must be at least 1".into()));
            }
            let vertices: Vec<Vertex> = (next..next + size as u32).collect();
            next += size as u32;
            out.push((label.into(), vertices));
        }
        Self::from_classes(next as usize, out)
    }

    /// `k` classes of `n` vertices labelled `V1..Vk`.
    pub fn uniform(k: usize, n: usize) -> Self {
        Self::contiguous((1..=k).map(|i| (format!("V{i}"), n))).expect("n >= 1")
    }

    /// Layout with explicit (possibly non-contiguous, possibly empty)
    /// classes inside the universe `0..universe`.
    pub fn from_classes<S: Into<String>>(
        universe: usize,
        classes: impl IntoIterator<Item = (S, Vec<Vertex>)>,
    ) -> Result<Self> {
        let mut class_of = vec![ABSENT; universe];
        let mut position = vec![ABSENT; universe];
        let mut out = Vec::new();
        for (ci, (label, mut vertices)) in classes.into_iter().enumerate() {
            vertices.sort_unstable();
            for (p, &v) in vertices.iter().enumerate() {
                let slot = class_of
                    .get_mut(v as usize)
                    .ok_or_else(|| Error::InvalidLayout(format!("vertex {v} outside universe {universe}")))?;
                if *slot != ABSENT {
                    return Err(Error::InvalidLayout(format!("vertex {v} appears in two classes")));
                }
                *slot = ci as u32;
                position[v as usize] = p as u32;
            }
            out.push(VertexClass { label: label.into(), vertices });
        }
        Ok(VertexLayout { classes: out, universe, class_of, position })
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn num_vertices(&self) -> usize {
        self.classes.iter().map(|c| c.vertices.len()).sum()
    }

    pub fn class(&self, i: usize) -> &[Vertex] {
        &self.classes[i].vertices
    }

    pub fn label(&self, i: usize) -> &str {
        &self.classes[i].label
    }

    pub fn class_size(&self, i: usize) -> usize {
        self.classes[i].vertices.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.vertices.len()).collect()
    }

    pub fn class_of(&self, v: Vertex) -> Option<usize> {
        match self.class_of.get(v as usize) {
            Some(&c) if c != ABSENT => Some(c as usize),
            _ => None,
        }
    }

    /// Index of `v` within its class.
    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.class_of(v).map(|_| self.position[v as usize] as usize)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.class_of(v).is_some()
    }

    /// All vertices, class by class.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.classes.iter().flat_map(|c| c.vertices.iter().copied())
    }

    /// Ids are `0..n` grouped by class in class order.
    pub fn is_contiguous(&self) -> bool {
        self.vertices().enumerate().all(|(i, v)| i as u32 == v) && self.num_vertices() == self.universe
    }

    /// Class index of every vertex of `e`, or `None` if a vertex is outside
    /// the layout.
    pub fn classes_of(&self, e: &Edge) -> Option<Vec<usize>> {
        e.vertices().iter().map(|&v| self.class_of(v)).collect()
    }

    /// True when `e` is a proper set meeting every class at most once.
    pub fn is_crossing(&self, e: &Edge) -> bool {
        if !e.is_proper() {
            return false;
        }
        match self.classes_of(e) {
            Some(mut cs) => {
                cs.sort_unstable();
                cs.windows(2).all(|w| w[0] != w[1])
            }
            None => false,
        }
    }

    /// The vertices of a crossing edge ordered by class index.
    pub fn class_ordered(&self, e: &Edge) -> Vec<Vertex> {
        let mut vs: Vec<(usize, Vertex)> =
            e.vertices().iter().map(|&v| (self.class_of(v).unwrap_or(usize::MAX), v)).collect();
        vs.sort_unstable();
        vs.into_iter().map(|(_, v)| v).collect()
    }

    /// Sub-layout keeping only the given classes (in the given order).
    pub fn select(&self, classes: &[usize]) -> Result<Self> {
        let mut out = Vec::new();
        for &c in classes {
            if c >= self.num_classes() {
                return Err(Error::InvalidLayout(format!("class {c} out of range")));
            }
            out.push((self.classes[c].label.clone(), self.classes[c].vertices.clone()));
        }
        Self::from_classes(self.universe, out)
    }

    /// Replaces every class by the given subset of it.
    pub fn restrict(&self, subsets: &[Vec<Vertex>]) -> Result<Self> {
        if subsets.len() != self.num_classes() {
            return Err(Error::InvalidLayout(format!(
                "expected {} subsets, got {}",
                self.num_classes(),
                subsets.len()
            )));
        }
        for (i, s) in subsets.iter().enumerate() {
            if let Some(&v) = s.iter().find(|&&v| self.class_of(v) != Some(i)) {
                return Err(Error::SubsetOutOfClass(v));
            }
        }
        Self::from_classes(
            self.universe,
            self.classes.iter().zip(subsets).map(|(c, s)| (c.label.clone(), s.clone())),
        )
    }

    /// Adds a class at the end.
    pub fn with_class(&self, label: &str, vertices: Vec<Vertex>) -> Result<Self> {
        let universe = vertices.iter().map(|&v| v as usize + 1).max().unwrap_or(0).max(self.universe);
        let mut out: Vec<(String, Vec<Vertex>)> =
            self.classes.iter().map(|c| (c.label.clone(), c.vertices.clone())).collect();
        out.push((label.into(), vertices));
        Self::from_classes(universe, out)
    }
}
