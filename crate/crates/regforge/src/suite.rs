//! Batches of seeded experiments run across a thread pool.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use regforge_core::delta::is_pair_delta_regular;
use regforge_core::growth::verify_inequalities;
use regforge_core::limits::Caps;
use regforge_core::rs::{dense_counting_check, Complex};
use regforge_core::sample::bernoulli;
use regforge_core::{BipartiteGraph, KGraph, Rational, VertexLayout};
use serde::{Deserialize, Serialize};

use crate::cli::{AssembleArgs, CounterexampleArgs, CycleArgs};
use crate::commands::{gen_assemble, gen_counterexample, gen_cycle};
use crate::error::CliError;
use crate::params::parse_rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// Triangle-free counterexample; passes when no triangle survives.
    Counterexample,
    /// Tight-cycle pasting; passes when the pasted density is exact.
    Cycle,
    /// Inductive assembly; passes when every structural check holds.
    Assemble,
    /// Growth inequalities; passes when every check passes.
    GrowthVerify,
    /// Random bipartite pair; the verdict is its ⟨δ⟩-regularity.
    PairRandom,
    /// Random 3-complex; the verdict is whether its clique count is in band.
    DenseCounting,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Experiment {
    pub name: String,
    pub kind: Kind,
    /// Values are strings; rationals are written `p/q`.
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
}

fn default_seeds() -> Vec<u64> {
    vec![0]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub experiments: Vec<Experiment>,
}

impl SuiteConfig {
    /// A small suite covering every kind.
    pub fn builtin() -> Self {
        let exp = |name: &str, kind, params: &[(&str, &str)], seeds: Vec<u64>| Experiment {
            name: name.to_string(),
            kind,
            params: params.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            seeds,
        };
        SuiteConfig {
            experiments: vec![
                exp("counterexample", Kind::Counterexample, &[("k", "8"), ("q", "1/2"), ("delta", "2/5"), ("m", "2")], (1..=4).collect()),
                exp("cycle-k3", Kind::Cycle, &[("k", "3"), ("s", "1")], (1..=2).collect()),
                exp("assemble-k3", Kind::Assemble, &[("k", "3"), ("s", "2")], (1..=2).collect()),
                exp("growth-k3", Kind::GrowthVerify, &[("k", "3"), ("i", "3")], vec![0]),
                exp("pair-6x6", Kind::PairRandom, &[("n", "6"), ("p", "1/2"), ("delta", "1/4")], (1..=8).collect()),
                exp("counting-n10", Kind::DenseCounting, &[("n", "10"), ("d", "1/2"), ("gamma", "1/5")], (1..=4).collect()),
            ],
        }
    }
}

/// Outcome for one (experiment, seed).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub experiment: String,
    pub kind: Kind,
    pub seed: u64,
    pub verdict: bool,
    pub detail: BTreeMap<String, String>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub pass: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: &'static str,
    pub config: SuiteConfig,
    pub rows: Vec<Row>,
    pub summary: Summary,
    pub verdict: bool,
}

struct Params<'a>(&'a BTreeMap<String, String>);

impl Params<'_> {
    fn usize(&self, key: &str, default: usize) -> Result<usize, CliError> {
        match self.0.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| CliError::Input(format!("parameter {key} = `{v}` is not an integer"))),
        }
    }

    fn rational(&self, key: &str, default: &str) -> Result<Rational, CliError> {
        let v = self.0.get(key).map_or(default, String::as_str);
        parse_rational(v).map_err(|e| CliError::Input(format!("parameter {key}: {e}")))
    }

    fn flag(&self, key: &str, default: bool) -> Result<bool, CliError> {
        match self.0.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| CliError::Input(format!("parameter {key} = `{v}` is not true or false"))),
        }
    }
}

type Detail = BTreeMap<String, String>;

fn detail<const N: usize>(pairs: [(&str, String); N]) -> Detail {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn run_one(e: &Experiment, seed: u64, caps: &Caps) -> Result<(bool, Detail), CliError> {
    let p = Params(&e.params);
    match e.kind {
        Kind::Counterexample => {
            let args = CounterexampleArgs {
                k: p.usize("k", 8)?,
                q: p.rational("q", "1/2")?,
                delta: p.rational("delta", "2/5")?,
                m: p.usize("m", 1)?,
                seed,
                out: None,
            };
            let f = gen_counterexample(&args)?;
            let a = f.annotations.as_ref().expect("generator annotations");
            let after = a["triangles_after"].as_u64().unwrap_or(u64::MAX);
            let g = f.to_graph()?;
            Ok((
                after == 0,
                detail([
                    ("triangles_before", a["triangles_before"].to_string()),
                    ("triangles_after", after.to_string()),
                    ("edges", g.edge_count().to_string()),
                    ("in_window", a["in_window"].to_string()),
                ]),
            ))
        }
        Kind::Cycle => {
            let (k, s) = (p.usize("k", 3)?, p.usize("s", 1)?);
            let n = e.params.get("n").map(|_| p.usize("n", 0)).transpose()?;
            let f = gen_cycle(&CycleArgs { k, s, n, seed, out: None })?;
            let g = f.to_graph()?;
            let expected = Rational::new((2 * k).into(), (num_bigint::BigInt::from(1) << (k + s)).clone());
            let components = f.annotations.as_ref().and_then(|a| a["components"].as_array().map(Vec::len)).unwrap_or(0);
            Ok((
                g.density() == expected && components == 2 * k,
                detail([
                    ("density", g.density().to_string()),
                    ("expected", expected.to_string()),
                    ("components", components.to_string()),
                ]),
            ))
        }
        Kind::Assemble => {
            let args = AssembleArgs {
                k: p.usize("k", 3)?,
                s: p.usize("s", 2)?,
                n: e.params.get("n").map(|_| p.usize("n", 0)).transpose()?,
                toy: p.flag("toy", true)?,
                seed,
                out: None,
            };
            let f = gen_assemble(&args)?;
            let parts = f.annotations.as_ref().and_then(|a| a["levels"].as_array().map(|l| l.len())).unwrap_or(0);
            Ok((parts == args.s, detail([("levels", parts.to_string()), ("part_density", f.to_graph()?.density().to_string())])))
        }
        Kind::GrowthVerify => {
            let k = u32::try_from(p.usize("k", 3)?).map_err(|_| CliError::Input("k too large".into()))?;
            let r = verify_inequalities(k, p.usize("i", 3)? as u64)?;
            let failed: Vec<String> = r.failures().map(|c| format!("{}(k={:?},i={:?})", c.name, c.k, c.i)).collect();
            Ok((r.all_pass(), detail([("checks", r.checks.len().to_string()), ("failed", failed.join(" "))])))
        }
        Kind::PairRandom => {
            let n = p.usize("n", 6)?;
            let (prob, delta) = (p.rational("p", "1/2")?, p.rational("delta", "1/4")?);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut bg = BipartiteGraph::new(n, n);
            for a in 0..n {
                for b in 0..n {
                    if bernoulli(&mut rng, &prob) {
                        bg.insert(a, b);
                    }
                }
            }
            let layout = Arc::new(VertexLayout::uniform(2, n));
            let g = KGraph::from_bipartite(layout, &bg)?;
            let r = is_pair_delta_regular(&g, &delta, caps)?;
            Ok((r.verdict, detail([("edges", g.edge_count().to_string()), ("density", g.density().to_string())])))
        }
        Kind::DenseCounting => {
            let n = p.usize("n", 10)?;
            let (d, gamma) = (p.rational("d", "1/2")?, p.rational("gamma", "1/5")?);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = Complex::random(Arc::new(VertexLayout::uniform(3, n)), std::slice::from_ref(&d), &mut rng)?;
            let r = dense_counting_check(&c, &gamma, &[d])?;
            Ok((
                r.in_band,
                detail([
                    ("count", r.count.to_string()),
                    ("band_low", r.band_low.to_string()),
                    ("band_high", r.band_high.to_string()),
                ]),
            ))
        }
    }
}

/// Runs every (experiment, seed) on `jobs` threads; rows come back in
/// config order regardless of scheduling.
pub fn run_suite(config: SuiteConfig, jobs: usize, caps: &Caps) -> Result<RunReport, CliError> {
    let tasks: Vec<(&Experiment, u64)> = config.experiments.iter().flat_map(|e| e.seeds.iter().map(move |&s| (e, s))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Input(format!("thread pool: {e}")))?;
    let rows: Vec<Row> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(e, seed)| {
                let start = Instant::now();
                let (verdict, detail) = match run_one(e, seed, caps) {
                    Ok(v) => v,
                    Err(err) => (false, detail([("error", err.to_string())])),
                };
                Row {
                    experiment: e.name.clone(),
                    kind: e.kind,
                    seed,
                    verdict,
                    detail,
                    elapsed_ms: start.elapsed().as_millis() as u64,
                }
            })
            .collect()
    });
    let pass = rows.iter().filter(|r| r.verdict).count();
    let summary = Summary { instances: rows.len(), pass, fail: rows.len() - pass };
    Ok(RunReport { command: "suite", verdict: summary.fail == 0, config, rows, summary })
}

/// One CSV line per row; `detail` is flattened to `key=value` pairs joined by `;`.
pub fn rows_csv(rows: &[Row]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Input(format!("csv: {e}"));
    w.write_record(["experiment", "kind", "seed", "verdict", "elapsed_ms", "detail"]).map_err(io)?;
    for r in rows {
        let kind = serde_json::to_value(r.kind).expect("kind serializes");
        let flat: Vec<String> = r.detail.iter().map(|(k, v)| format!("{k}={v}")).collect();
        w.write_record([
            r.experiment.as_str(),
            kind.as_str().unwrap_or_default(),
            &r.seed.to_string(),
            &r.verdict.to_string(),
            &r.elapsed_ms.to_string(),
            &flat.join(";"),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_keep_config_order_across_thread_counts() {
        let cfg = SuiteConfig {
            experiments: vec![Experiment {
                name: "pairs".into(),
                kind: Kind::PairRandom,
                params: BTreeMap::new(),
                seeds: (0..12).collect(),
            }],
        };
        let a = run_suite(cfg.clone(), 1, &Caps::default()).unwrap();
        let b = run_suite(cfg, 4, &Caps::default()).unwrap();
        let strip = |r: &RunReport| r.rows.iter().map(|x| (x.seed, x.verdict, x.detail.clone())).collect::<Vec<_>>();
        assert_eq!(strip(&a), strip(&b));
        assert_eq!(a.rows.iter().map(|r| r.seed).collect::<Vec<_>>(), (0..12).collect::<Vec<_>>());
    }

    #[test]
    fn csv_has_one_line_per_row() {
        let cfg = SuiteConfig {
            experiments: vec![Experiment {
                name: "c".into(),
                kind: Kind::Counterexample,
                params: [("k".to_string(), "4".to_string())].into(),
                seeds: vec![1, 2],
            }],
        };
        let r = run_suite(cfg, 2, &Caps::default()).unwrap();
        let text = rows_csv(&r.rows).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().nth(1).unwrap().starts_with("c,counterexample,1,true,"));
    }

    #[test]
    fn bad_params_become_failed_rows() {
        let cfg = SuiteConfig {
            experiments: vec![Experiment {
                name: "bad".into(),
                kind: Kind::Counterexample,
                params: [("q".to_string(), "0.5".to_string())].into(),
                seeds: vec![1],
            }],
        };
        let r = run_suite(cfg, 1, &Caps::default()).unwrap();
        assert!(!r.verdict);
        assert!(r.rows[0].detail["error"].contains("p/q"));
    }
}
