//! Implementations of `check`, `gen` and `growth`.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use regforge_core::construct::{
    assemble_inductive, blow_up, counterexample_gen, cycle_edge, cycle_ground_sets, cycle_instance, required_chain_len,
    toy_vertex_chain, triangles, GrowthIndexMaps, IndexMaps, StubProvider, ToyIndexMaps, CLASS_PAIRS,
};
use regforge_core::delta::{is_kgraph_delta_regular_partition, EditCertificate, EditMode};
use regforge_core::growth::{
    a_fn, a_star, ack, alpha_fn, c_fn, delta_fn, e_fn, m_fn, t_fn, verify_inequalities, GrowthValue,
};
use regforge_core::limits::Caps;
use regforge_core::rs::{dense_counting_check, is_eps_regular_in_polyad, is_eps_regular_partition, k_reduction_check, Complex};
use regforge_core::{Edge, KGraph, KPartition, Polyad, Rational, RegularityReport, Vertex, VertexLayout, Witness};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::cli::{
    AssembleArgs, CheckArgs, ComplexArgs, CounterexampleArgs, CycleArgs, EditsArg, GenCommand, GrowthArgs, GrowthFn, Notion,
};
use crate::error::CliError;
use crate::format::{read_json, to_json_string, DenseIds, InstanceFile, PartitionFile, Provenance};
use crate::params::{caps_from_env, parse_range};
use crate::report::{inequality_json, CheckReport};

/// What a command prints and whether it counts as a pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    pub fn pass(text: String) -> Self {
        Outcome { text, passed: true }
    }

    /// 0 on pass, 1 on a failed verdict.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EditSpec {
    #[serde(default)]
    added: Vec<Vec<Vertex>>,
    #[serde(default)]
    removed: Vec<Vec<Vertex>>,
}

/// One edit set, or one per class.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateFile {
    edits: Vec<EditSpec>,
}

fn edges_of(v: &[Vec<Vertex>]) -> BTreeSet<Edge> {
    v.iter().map(|e| Edge::new(e.clone())).collect()
}

fn edit_modes(args: &CheckArgs) -> Result<Vec<EditMode>, CliError> {
    match (args.edits, &args.certificate) {
        (EditsArg::Perfect, None) => Ok(vec![EditMode::Perfect]),
        (EditsArg::Search, None) => Ok(vec![EditMode::Search]),
        (EditsArg::Certificate, Some(path)) | (EditsArg::Perfect, Some(path)) => {
            let file: CertificateFile = read_json(path)?;
            if file.edits.is_empty() {
                return Err(CliError::Input("certificate lists no edit sets".into()));
            }
            Ok(file
                .edits
                .iter()
                .map(|e| EditMode::Certificate(EditCertificate { added: edges_of(&e.added), removed: edges_of(&e.removed) }))
                .collect())
        }
        (EditsArg::Certificate, None) => Err(CliError::Input("--edits certificate needs --certificate".into())),
        (EditsArg::Search, Some(_)) => Err(CliError::Input("--certificate cannot be combined with --edits search".into())),
    }
}

fn require<'a>(v: &'a Option<Rational>, flag: &str, notion: Notion) -> Result<&'a Rational, CliError> {
    v.as_ref().ok_or_else(|| CliError::Input(format!("--notion {} needs --{flag}", notion.as_str())))
}

fn load_partition(path: Option<&Path>, g: &KGraph) -> Result<KPartition, CliError> {
    match path {
        Some(p) => read_json::<PartitionFile>(p)?.to_kpartition(g.layout().clone()),
        None => {
            if g.k() < 2 {
                return Err(CliError::Input("a partition needs k ≥ 2".into()));
            }
            Ok(KPartition::trivial(g.layout().clone(), g.k() - 1))
        }
    }
}

pub fn check(args: &CheckArgs) -> Result<Outcome, CliError> {
    let caps = caps_from_env()?;
    let start = Instant::now();
    let file: InstanceFile = read_json(&args.instance)?;
    let mut params = BTreeMap::new();
    params.insert("instance".to_string(), args.instance.display().to_string());
    params.insert(
        "partition".to_string(),
        args.partition.as_ref().map_or_else(|| "classes".to_string(), |p| p.display().to_string()),
    );
    let mut report = match args.notion {
        Notion::Delta => check_delta(args, &file, &caps, &mut params)?,
        Notion::Rs => check_rs(args, &file, &caps, &mut params)?,
        Notion::Counting => check_counting(args, &file, &mut params)?,
        Notion::Reduction => check_reduction(args, &file, &caps, &mut params)?,
    };
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(Outcome { passed: report.verdict, text: to_json_string(&report) })
}

fn check_delta(
    args: &CheckArgs,
    file: &InstanceFile,
    caps: &Caps,
    params: &mut BTreeMap<String, String>,
) -> Result<CheckReport, CliError> {
    let delta = require(&args.delta, "delta", args.notion)?;
    let g = file.to_graph()?;
    let p = load_partition(args.partition.as_deref(), &g)?;
    let modes = edit_modes(args)?;
    params.insert("delta".into(), delta.to_string());
    params.insert("edits".into(), if args.certificate.is_some() { "certificate" } else { edits_name(args.edits) }.into());
    let r = is_kgraph_delta_regular_partition(&g, &p, delta, &modes, caps)?;
    Ok(CheckReport::new("delta", std::mem::take(params), &r))
}

fn edits_name(e: EditsArg) -> &'static str {
    match e {
        EditsArg::Perfect => "perfect",
        EditsArg::Search => "search",
        EditsArg::Certificate => "certificate",
    }
}

fn check_rs(args: &CheckArgs, file: &InstanceFile, caps: &Caps, params: &mut BTreeMap<String, String>) -> Result<CheckReport, CliError> {
    let eps = require(&args.eps, "eps", args.notion)?;
    let g = file.to_graph()?;
    params.insert("eps".into(), eps.to_string());
    let r = match &args.partition {
        Some(path) => {
            if args.d.is_some() {
                return Err(CliError::Input("--d applies only to the single-polyad check (no partition)".into()));
            }
            let p = read_json::<PartitionFile>(path)?.to_kpartition(g.layout().clone())?;
            is_eps_regular_partition(&g, &p, eps, caps)?
        }
        None => {
            if g.layout().num_classes() != g.k() {
                return Err(CliError::Input("the single-polyad check needs a k-graph on k classes".into()));
            }
            if let Some(d) = &args.d {
                params.insert("d".into(), d.to_string());
            }
            let polyad = Polyad::complete(g.layout().clone())?;
            is_eps_regular_in_polyad(&g, &polyad, eps, args.d.as_ref(), caps)?
        }
    };
    Ok(CheckReport::new("rs", std::mem::take(params), &r))
}

fn check_counting(args: &CheckArgs, file: &InstanceFile, params: &mut BTreeMap<String, String>) -> Result<CheckReport, CliError> {
    let gamma = require(&args.gamma, "gamma", args.notion)?;
    if args.partition.is_some() {
        return Err(CliError::Input("--notion counting takes a complex and no partition".into()));
    }
    let c = file.to_complex()?;
    params.insert("gamma".into(), gamma.to_string());
    params.insert("densities".into(), args.densities.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
    let d = dense_counting_check(&c, gamma, &args.densities)?;
    let verdict = d.in_band && d.extension_holds;
    let base = if verdict {
        RegularityReport::pass(d.mode)
    } else {
        RegularityReport::fail(d.mode, Witness::Message(format!("count {} against band [{}, {}]", d.count, d.band_low, d.band_high)))
    };
    let mut report = CheckReport::new("counting", std::mem::take(params), &base.with_note("the counting bound applies only above an unspecified size"));
    let extra: [(&str, Value); 10] = [
        ("band_low", d.band_low.to_string().into()),
        ("band_high", d.band_high.to_string().into()),
        ("count", d.count.into()),
        ("predicted", d.predicted.to_string().into()),
        ("in_band", d.in_band.into()),
        ("extension_low", d.extension_low.to_string().into()),
        ("extension_high", d.extension_high.to_string().into()),
        ("exceptional_edges", d.exceptional_edges.into()),
        ("exceptional_limit", d.exceptional_limit.to_string().into()),
        ("extension_holds", d.extension_holds.into()),
    ];
    report.extra = extra.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    Ok(report)
}

fn check_reduction(
    args: &CheckArgs,
    file: &InstanceFile,
    caps: &Caps,
    params: &mut BTreeMap<String, String>,
) -> Result<CheckReport, CliError> {
    let delta = require(&args.delta, "delta", args.notion)?;
    let g = file.to_graph()?;
    let p = load_partition(args.partition.as_deref(), &g)?;
    params.insert("delta".into(), delta.to_string());
    let r = k_reduction_check(&g, &p, delta, caps)?;
    let mut base = r.conclusion.clone();
    base.verdict = r.status != regforge_core::rs::ImplicationStatus::Violated;
    base.notes.extend(r.notes.iter().cloned());
    let mut report = CheckReport::new("reduction", std::mem::take(params), &base);
    report.extra.insert("status".into(), r.status.as_str().into());
    report.extra.insert("f_equitable".into(), r.f_equitable.into());
    report.extra.insert("density_condition".into(), r.density_condition.into());
    report.extra.insert("conclusion".into(), r.conclusion.verdict.into());
    Ok(report)
}

fn render(file: &InstanceFile) -> Outcome {
    Outcome::pass(to_json_string(file))
}

pub fn gen(cmd: &GenCommand) -> Result<Outcome, CliError> {
    match cmd {
        GenCommand::Counterexample(a) => gen_counterexample(a).map(|f| render(&f)),
        GenCommand::Cycle(a) => gen_cycle(a).map(|f| render(&f)),
        GenCommand::Assemble(a) => gen_assemble(a).map(|f| render(&f)),
        GenCommand::Complex(a) => gen_complex(a).map(|f| render(&f)),
    }
}

pub fn gen_counterexample(a: &CounterexampleArgs) -> Result<InstanceFile, CliError> {
    if a.m == 0 {
        return Err(CliError::Input("--m must be at least 1".into()));
    }
    let c = counterexample_gen(&a.delta, &a.q, a.k, a.seed)?;
    let (g, _) = blow_up(&c.graph, a.m)?;
    let provenance = Provenance::new(
        "counterexample",
        a.seed,
        [("k", a.k.to_string()), ("q", a.q.to_string()), ("delta", a.delta.to_string()), ("m", a.m.to_string())],
    );
    let densities: Map<String, Value> = CLASS_PAIRS
        .iter()
        .map(|&(x, y)| {
            let sub = g.induced(&pair_classes(g.layout(), x, y)).map(|h| h.density().to_string());
            (format!("{x}-{y}"), sub.map(Value::from).unwrap_or(Value::Null))
        })
        .collect();
    let annotations = json!({
        "triangles_before": c.triangles_before,
        "removed": c.removed,
        "triangles_after": triangles(&g)?.len(),
        "in_window": c.in_window,
        "warnings": c.warnings,
        "pair_densities": densities,
    });
    Ok(InstanceFile::from_graph(&g).with_provenance(provenance).with_annotations(annotations))
}

/// Classes `x` and `y` in full, the third class empty.
fn pair_classes(l: &VertexLayout, x: usize, y: usize) -> Vec<Vec<Vertex>> {
    (0..l.num_classes()).map(|i| if i == x || i == y { l.class(i).to_vec() } else { Vec::new() }).collect()
}

fn chain_size(k: usize, s: usize, n: Option<usize>, maps: &dyn IndexMaps) -> Result<(usize, usize), CliError> {
    if k < 2 || s == 0 {
        return Err(CliError::Input("need k ≥ 2 and s ≥ 1".into()));
    }
    let m = required_chain_len(k, s, maps).ok_or_else(|| {
        CliError::Input(format!("the index maps for k = {k}, s = {s} exceed any materialisable chain; use --toy"))
    })?;
    if m > 24 {
        return Err(CliError::Cap(format!("a vertex chain of length {m} needs classes of 2^{} vertices", m - 1)));
    }
    let least = 1usize << (m - 1);
    let n = n.unwrap_or(least.max(2));
    if !n.is_multiple_of(least) {
        return Err(CliError::Input(format!("class size {n} is not a multiple of 2^{}", m - 1)));
    }
    Ok((m, n))
}

pub fn gen_cycle(a: &CycleArgs) -> Result<InstanceFile, CliError> {
    let maps = ToyIndexMaps::default();
    let (m, n) = chain_size(a.k, a.s, a.n, &maps)?;
    let k = a.k;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let ground = cycle_ground_sets(k, n);
    let chain = toy_vertex_chain(2 * k * n, &ground, m, &mut rng)?;
    let inst = cycle_instance(k, a.s, n, chain, &mut StubProvider::new(a.seed), &maps)?;
    let ids = DenseIds::new(inst.graph.layout());
    let components: Vec<Value> = inst
        .pieces
        .iter()
        .enumerate()
        .map(|(x, h)| {
            json!({
                "cycle_edge": cycle_edge(k, x).vertices(),
                "density": h.density().to_string(),
                "edges": ids.edges(h.edges()),
            })
        })
        .collect();
    let provenance =
        Provenance::new("cycle", a.seed, [("k", k.to_string()), ("s", a.s.to_string()), ("n", n.to_string()), ("index_maps", "toy".into())]);
    let annotations = json!({
        "ground_sets": ground.iter().map(|g| ids.vertices(g)).collect::<Vec<_>>(),
        "components": components,
        "density": inst.graph.density().to_string(),
        "provider_certifies_hardness": false,
    });
    Ok(InstanceFile::from_graph(&inst.graph).with_provenance(provenance).with_annotations(annotations))
}

pub fn gen_assemble(a: &AssembleArgs) -> Result<InstanceFile, CliError> {
    let toy = ToyIndexMaps::default();
    let maps: &dyn IndexMaps = if a.toy { &toy } else { &GrowthIndexMaps };
    let (m, n) = chain_size(a.k, a.s, a.n, maps)?;
    let layout = Arc::new(VertexLayout::uniform(a.k, n));
    let ground: Vec<Vec<Vertex>> = (0..a.k).map(|i| layout.class(i).to_vec()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let chain = toy_vertex_chain(layout.universe(), &ground, m, &mut rng)?;
    let out = assemble_inductive(layout, a.s, &chain, &mut StubProvider::new(a.seed), maps)?;
    let levels: Vec<Value> = out
        .levels
        .iter()
        .enumerate()
        .map(|(j, parts)| {
            json!({
                "j": j + 1,
                "parts": parts.iter().map(|h| h.edges().iter().map(|e| e.vertices().to_vec()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let provenance = Provenance::new(
        "assemble",
        a.seed,
        [
            ("k", a.k.to_string()),
            ("s", a.s.to_string()),
            ("n", n.to_string()),
            ("index_maps", if a.toy { "toy" } else { "growth" }.into()),
        ],
    );
    let annotations = json!({
        "vertex_chain": chain.iter().map(|p| p.parts().to_vec()).collect::<Vec<_>>(),
        "levels": levels,
        "provider_certifies_hardness": false,
    });
    let first = &out.levels[a.s - 1][0];
    Ok(InstanceFile::from_graph(first).with_provenance(provenance).with_annotations(annotations))
}

pub fn gen_complex(a: &ComplexArgs) -> Result<InstanceFile, CliError> {
    if a.classes < 3 || a.n == 0 {
        return Err(CliError::Input("a complex needs at least 3 classes of at least 1 vertex".into()));
    }
    let layout = Arc::new(VertexLayout::uniform(a.classes, a.n));
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let c = Complex::random(layout, &a.densities, &mut rng)?;
    let provenance = Provenance::new(
        "complex",
        a.seed,
        [
            ("classes", a.classes.to_string()),
            ("n", a.n.to_string()),
            ("densities", a.densities.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")),
        ],
    );
    Ok(InstanceFile::from_complex(&c).with_provenance(provenance))
}

/// `(label, values)` rows for the listing form of `growth`.
pub fn growth_values(f: GrowthFn, k: Option<u32>, range: std::ops::RangeInclusive<u64>) -> Result<Vec<(String, GrowthValue)>, CliError> {
    let need_k = || k.ok_or_else(|| CliError::Input("this function needs K before the range".into()));
    let mut out = Vec::new();
    for x in range {
        let gx = GrowthValue::from(x);
        let row = match f {
            GrowthFn::A => (format!("A_{}({x})", need_k()?), a_fn(need_k()?, &gx)?),
            GrowthFn::AStar => (format!("A*_{}({x})", need_k()?), a_star(need_k()?, &gx)?),
            GrowthFn::Ack => (format!("Ack_{}({x})", need_k()?), ack(need_k()?, &gx)?),
            GrowthFn::M => (format!("m_{}({x})", need_k()?), m_fn(need_k()?, x)?),
            GrowthFn::T => (format!("t({x})"), t_fn(x)?),
            GrowthFn::E => (format!("e({x})"), e_fn(x).into()),
            GrowthFn::Delta | GrowthFn::Alpha | GrowthFn::C => {
                let kx = u32::try_from(x).map_err(|_| CliError::Input(format!("k = {x} is too large")))?;
                if kx == 0 {
                    return Err(CliError::Input("k must be at least 1".into()));
                }
                match f {
                    GrowthFn::Delta => (format!("δ_{x}"), delta_fn(kx).into()),
                    GrowthFn::Alpha => (format!("α_{x}"), alpha_fn(kx).into()),
                    _ => (format!("c_{x}"), c_fn(kx).into()),
                }
            }
        };
        out.push(row);
    }
    Ok(out)
}

pub fn growth(a: &GrowthArgs) -> Result<Outcome, CliError> {
    if let Some(k_max) = a.verify {
        if !a.args.is_empty() || a.delta.is_some() {
            return Err(CliError::Input("--verify takes no other arguments".into()));
        }
        if k_max < 2 || a.max_i == 0 {
            return Err(CliError::Input("--verify needs K ≥ 2 and --max-i ≥ 1".into()));
        }
        let r = verify_inequalities(k_max, a.max_i)?;
        return Ok(Outcome { passed: r.all_pass(), text: to_json_string(&inequality_json(k_max, a.max_i, &r)) });
    }
    let (f, k, range) = match (&a.delta, a.args.as_slice()) {
        (Some(r), []) => (GrowthFn::Delta, None, r.clone()),
        (Some(_), _) => return Err(CliError::Input("--delta takes only a range".into())),
        (None, [r]) if !takes_k(a.function) => (a.function, None, parse_range(r).map_err(CliError::Input)?),
        (None, [k, r]) if takes_k(a.function) => {
            let k: u32 = k.parse().map_err(|_| CliError::Input(format!("`{k}` is not a valid k")))?;
            (a.function, Some(k), parse_range(r).map_err(CliError::Input)?)
        }
        _ => {
            let shape = if takes_k(a.function) { "K RANGE" } else { "RANGE" };
            return Err(CliError::Input(format!("expected {shape}")));
        }
    };
    let rows = growth_values(f, k, range)?;
    let text = if a.json {
        let v: Vec<Value> = rows
            .iter()
            .map(|(label, v)| json!({ "value_of": label, "value": v.to_string(), "exact": v.exact().is_some() }))
            .collect();
        to_json_string(&v)
    } else {
        rows.iter().map(|(label, v)| format!("{label} = {v}\n")).collect()
    };
    Ok(Outcome::pass(text))
}

fn takes_k(f: GrowthFn) -> bool {
    matches!(f, GrowthFn::A | GrowthFn::AStar | GrowthFn::Ack | GrowthFn::M)
}

