use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_regforge"));
    c.env_remove("REGFORGE_CAP_BITS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

fn bipartite(n: usize, edges: &[(u32, u32)]) -> Value {
    json!({
        "k": 2,
        "classes": [{"label": "A", "size": n}, {"label": "B", "size": n}],
        "edges": edges.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
    })
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn complete_bipartite_with_classes_passes() {
    let dir = TempDir::new().unwrap();
    let edges: Vec<(u32, u32)> = (0..4).flat_map(|a| (4..8).map(move |b| (a, b))).collect();
    let inst = write(&dir, "k44.json", &bipartite(4, &edges));
    let o = run(&["check", s(&inst), "--notion", "delta", "--delta", "1/4"]);
    assert_eq!(o.status.code(), Some(0));
    let r = stdout_json(&o);
    assert_eq!(r["verdict"], true);
    assert_eq!(r["witness"], Value::Null);
    assert_eq!(r["mode"], "exact");
    assert_eq!(r["params"]["delta"], "1/4");
    assert!(r["elapsed_ms"].is_u64());
}

#[test]
fn block_diagonal_fails_with_witness() {
    let dir = TempDir::new().unwrap();
    let edges = [(0, 4), (0, 5), (1, 4), (1, 5), (2, 6), (2, 7), (3, 6), (3, 7)];
    let inst = write(&dir, "blocks.json", &bipartite(4, &edges));
    let out = dir.path().join("report.json");
    let o = run(&["check", s(&inst), "--delta", "1/2", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["verdict"], false);
    let w = &r["witness"];
    assert_eq!(w["kind"], "pair");
    assert_eq!(w["density"], "0");
    assert_eq!(w["threshold"], "1/4");
    // Two rows against the two columns of the other block.
    let left: Vec<u32> = w["left"].as_array().unwrap().iter().map(|v| v[0].as_u64().unwrap() as u32).collect();
    let right: Vec<u32> = w["right"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap() as u32).collect();
    assert_eq!((left.len(), right.len()), (2, 2));
    assert!(left.iter().all(|a| right.iter().all(|b| !edges.contains(&(*a, *b)))));
}

#[test]
fn explicit_partition_and_certificate() {
    let dir = TempDir::new().unwrap();
    // Complete 2+2 minus one edge: one pair, fixed by adding the edge back.
    let inst = write(&dir, "g.json", &bipartite(2, &[(0, 2), (0, 3), (1, 2)]));
    let part = write(&dir, "p.json", &json!({"rank": 1, "vertex_parts": [[0, 1], [2, 3]], "levels": []}));
    let cert = write(&dir, "c.json", &json!({"edits": [{"added": [[1, 3]]}]}));
    let plain = run(&["check", s(&inst), s(&part), "--delta", "1/2"]);
    assert_eq!(plain.status.code(), Some(1), "{}", String::from_utf8_lossy(&plain.stdout));
    let fixed = run(&["check", s(&inst), s(&part), "--delta", "1/2", "--edits", "certificate", "--certificate", s(&cert)]);
    // ⌊½·3⌋ = 1 edit is within budget.
    assert_eq!(fixed.status.code(), Some(0), "{}", String::from_utf8_lossy(&fixed.stdout));
    let r = stdout_json(&fixed);
    assert_eq!(r["mode"], "certificate");
    // The edit set is applied to both auxiliary graphs.
    assert_eq!(r["edits"], 2);
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["check", s(&bad), "--delta", "1/4"]).status.code(), Some(2));
    let inst = write(&dir, "g.json", &bipartite(2, &[(0, 2)]));
    assert_eq!(run(&["check", s(&inst), "--delta", "0.25"]).status.code(), Some(2));
    assert_eq!(run(&["check", s(&inst)]).status.code(), Some(2));
    let wrong = write(&dir, "w.json", &json!({"k": 2, "classes": [{"label": "A", "size": 2}], "edges": [[0, 1]]}));
    assert_eq!(run(&["check", s(&wrong), "--delta", "1/4"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn cap_override_exits_three() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "g.json", &bipartite(4, &[(0, 4), (1, 5)]));
    let o = bin().args(["check", s(&inst), "--delta", "1/4"]).env("REGFORGE_CAP_BITS", "6").output().unwrap();
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    let ok = bin().args(["check", s(&inst), "--delta", "1/4"]).env("REGFORGE_CAP_BITS", "8").output().unwrap();
    assert_ne!(ok.status.code(), Some(3));
}

#[test]
fn rs_single_polyad() {
    let dir = TempDir::new().unwrap();
    let edges: Vec<(u32, u32)> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
    let full = write(&dir, "full.json", &bipartite(3, &edges));
    let empty = write(&dir, "empty.json", &bipartite(3, &[]));
    assert_eq!(run(&["check", s(&full), "--notion", "rs", "--eps", "1/10", "--d", "1"]).status.code(), Some(0));
    assert_eq!(run(&["check", s(&empty), "--notion", "rs", "--eps", "1/10", "--d", "0"]).status.code(), Some(0));
    assert_eq!(run(&["check", s(&full), "--notion", "rs", "--eps", "1/10", "--d", "0"]).status.code(), Some(1));
}

#[test]
fn counting_report_fields() {
    let dir = TempDir::new().unwrap();
    let c = dir.path().join("complex.json");
    let g = run(&["gen", "complex", "--classes", "3", "--n", "12", "--densities", "1/2", "--seed", "3", "--out", s(&c)]);
    assert_eq!(g.status.code(), Some(0));
    let o = run(&["check", s(&c), "--notion", "counting", "--gamma", "1/5", "--densities", "1/2"]);
    assert!(matches!(o.status.code(), Some(0 | 1)));
    let r = stdout_json(&o);
    for key in ["band_low", "band_high", "count", "exceptional_edges"] {
        assert!(!r[key].is_null(), "{key}");
    }
    // 1/8·12³ = 216 predicted triangles, band ±20%.
    assert_eq!(r["band_low"], "864/5");
    assert_eq!(r["band_high"], "1296/5");
    assert_eq!(r["mode"], "heuristic");
}

fn gen_twice(args: &[&str]) -> (Vec<u8>, Vec<u8>) {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let mut full: Vec<&str> = args.to_vec();
        full.extend(["--out", s(p)]);
        assert_eq!(run(&full).status.code(), Some(0), "{args:?}");
    }
    (std::fs::read(a).unwrap(), std::fs::read(b).unwrap())
}

#[test]
fn counterexample_is_triangle_free_and_reproducible() {
    let (a, b) = gen_twice(&["gen", "counterexample", "--k", "8", "--q", "1/2", "--delta", "2/5", "--seed", "7"]);
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["provenance"]["seed"], 7);
    assert_eq!(v["provenance"]["params"]["q"], "1/2");
    let edges: std::collections::BTreeSet<(u64, u64)> =
        v["edges"].as_array().unwrap().iter().map(|e| (e[0].as_u64().unwrap(), e[1].as_u64().unwrap())).collect();
    for x in 0..8 {
        for y in 8..16 {
            for z in 16..24 {
                assert!(!(edges.contains(&(x, y)) && edges.contains(&(x, z)) && edges.contains(&(y, z))));
            }
        }
    }
    assert_eq!(v["annotations"]["triangles_after"], 0);
}

#[test]
fn cycle_has_six_components_for_three_graphs() {
    let (a, b) = gen_twice(&["gen", "cycle", "--k", "3", "--s", "1", "--seed", "1"]);
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    let comps = v["annotations"]["components"].as_array().unwrap();
    assert_eq!(comps.len(), 6);
    let total: usize = comps.iter().map(|c| c["edges"].as_array().unwrap().len()).sum();
    assert_eq!(total, v["edges"].as_array().unwrap().len());
    // (2k/2^k)·2^{−s} = 6/8·1/2.
    assert_eq!(v["annotations"]["density"], "3/8");
}

#[test]
fn assemble_needs_toy_maps_beyond_graphs() {
    let (a, b) = gen_twice(&["gen", "assemble", "--k", "3", "--s", "2", "--toy", "--seed", "4"]);
    assert_eq!(a, b);
    let v: Value = serde_json::from_slice(&a).unwrap();
    let levels = v["annotations"]["levels"].as_array().unwrap();
    assert_eq!(levels.iter().map(|l| l["parts"].as_array().unwrap().len()).collect::<Vec<_>>(), [2, 4]);
    let o = run(&["gen", "assemble", "--k", "3", "--s", "1", "--seed", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn growth_listing() {
    let o = run(&["growth", "2", "1..3"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "A_2(1) = 1\nA_2(2) = 2\nA_2(3) = 3\n");
    let o = run(&["growth", "--delta", "1..3"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "δ_1 = 2^{-8}\nδ_2 = 2^{-64}\nδ_3 = 2^{-512}\n");
    let o = run(&["growth", "--function", "ack", "2", "4", "--json"]);
    let v = stdout_json(&o);
    assert_eq!(v[0]["value"], "65536");
    assert_eq!(run(&["growth", "2"]).status.code(), Some(2));
}

#[test]
fn growth_verify_reports_every_check() {
    let o = run(&["growth", "--verify", "3"]);
    let v = stdout_json(&o);
    let checks = v["checks"].as_array().unwrap();
    let failing: Vec<&Value> = checks.iter().filter(|c| c["status"] == "fail").collect();
    // Only A_2(i) ≥ Ack_2(i) fails: A_2 is the identity.
    assert!(failing.iter().all(|c| c["name"] == "a-dominates-ack" && c["k"] == 2));
    assert_eq!(o.status.code(), Some(if failing.is_empty() { 0 } else { 1 }));
    assert!(checks.iter().any(|c| c["name"] == "a-dominates-ack" && c["k"] == 3 && c["status"] == "pass"));
}

#[test]
fn suite_with_config_and_csv() {
    let dir = TempDir::new().unwrap();
    let cfg = write(
        &dir,
        "suite.json",
        &json!({"experiments": [
            {"name": "tri", "kind": "counterexample", "params": {"k": "5", "q": "1/2", "delta": "1/4"}, "seeds": [1, 2, 3]},
            {"name": "cyc", "kind": "cycle", "params": {"k": "2", "s": "2"}, "seeds": [9]}
        ]}),
    );
    let csv = dir.path().join("rows.csv");
    let o = run(&["suite", s(&cfg), "--jobs", "3", "--csv", s(&csv)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let r = stdout_json(&o);
    assert_eq!(r["summary"]["instances"], 4);
    let seeds: Vec<u64> = r["rows"].as_array().unwrap().iter().map(|x| x["seed"].as_u64().unwrap()).collect();
    assert_eq!(seeds, [1, 2, 3, 9]);
    let text = std::fs::read_to_string(csv).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with("experiment,kind,seed,verdict,elapsed_ms,detail\n"));
}
