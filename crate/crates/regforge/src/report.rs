//! JSON views of checker verdicts and growth reports.

use std::collections::BTreeMap;

use regforge_core::growth::{InequalityCheck, InequalityReport};
use regforge_core::{Edge, RegularityReport, Vertex, Witness};
use serde::Serialize;
use serde_json::{json, Map, Value};

fn edge(e: &Edge) -> Vec<Vertex> {
    e.vertices().to_vec()
}

pub fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::Pair { aux_class, parts, left, right, density, threshold } => json!({
            "kind": "pair",
            "aux_class": aux_class,
            "parts": [parts.0, parts.1],
            "left": left,
            "right": right,
            "density": density.to_string(),
            "threshold": threshold.to_string(),
        }),
        Witness::Cell { level, cell, inner } => json!({
            "kind": "cell",
            "level": level,
            "cell": cell,
            "inner": witness_json(inner),
        }),
        Witness::Structure { level, reason, cell, tuple } => json!({
            "kind": "structure",
            "level": level,
            "reason": reason,
            "cell": cell,
            "tuple": tuple.as_ref().map(edge),
        }),
        Witness::SubPolyad { parts, cliques, density, low, high } => json!({
            "kind": "sub_polyad",
            "parts": parts.iter().map(|p| p.iter().map(edge).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "cliques": cliques,
            "density": density.to_string(),
            "low": low.to_string(),
            "high": high.to_string(),
        }),
        Witness::Polyad { cells, inner } => json!({
            "kind": "polyad",
            "cells": cells,
            "inner": witness_json(inner),
        }),
        Witness::Mass { irregular, limit, first } => json!({
            "kind": "mass",
            "irregular": irregular,
            "limit": limit.to_string(),
            "first": witness_json(first),
        }),
        Witness::Message(m) => json!({ "kind": "message", "message": m }),
    }
}

/// The report printed by `check`.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub command: &'static str,
    pub notion: String,
    pub params: BTreeMap<String, String>,
    pub verdict: bool,
    pub witness: Option<Value>,
    pub mode: String,
    pub edits: usize,
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
    /// Notion-specific fields, merged into the top-level object.
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl CheckReport {
    pub fn new(notion: &str, params: BTreeMap<String, String>, r: &RegularityReport) -> Self {
        CheckReport {
            command: "check",
            notion: notion.to_string(),
            params,
            verdict: r.verdict,
            witness: r.witness.as_ref().map(witness_json),
            mode: r.mode.as_str().to_string(),
            edits: r.edits_used,
            notes: r.notes.clone(),
            elapsed_ms: 0,
            extra: Map::new(),
        }
    }
}

fn check_json(c: &InequalityCheck) -> Value {
    json!({
        "name": c.name,
        "k": c.k,
        "i": c.i,
        "status": c.status.as_str(),
        "detail": c.detail,
    })
}

/// The report printed by `growth --verify`.
pub fn inequality_json(k_max: u32, i_max: u64, r: &InequalityReport) -> Value {
    let count = |s: &str| r.checks.iter().filter(|c| c.status.as_str() == s).count();
    json!({
        "command": "growth-verify",
        "k_max": k_max,
        "i_max": i_max,
        "verdict": r.all_pass(),
        "summary": { "pass": count("pass"), "fail": count("fail"), "undecided": count("undecided") },
        "checks": r.checks.iter().map(check_json).collect::<Vec<_>>(),
    })
}
