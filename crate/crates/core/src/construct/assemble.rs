use alloc::collections::BTreeSet;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;

use super::bipartite::hypergraph_from_bipartite;
use super::cycle::{cycle_edge_layout, ground_set, paste_cycle};
use super::provider::{check_provider_output, CorePartitionProvider};
use crate::error::{Error, Result};
use crate::growth::{a_fn, a_star, m_fn, GrowthValue};
use crate::hypergraph::{BipartiteGraph, Edge, KGraph, Vertex, VertexLayout};
use crate::partition::Partition;

/// Index maps choosing which levels of the lower-uniformity chain and of the
/// vertex chain feed step `j` of the assembly for uniformity `k`.
pub trait IndexMaps {
    /// Level of the (k−1)-graph chain used at step `j`; `None` if not representable.
    fn f_index(&self, k: usize, j: usize) -> Option<usize>;
    /// Level of the vertex chain used at step `j`; `None` if not representable.
    fn v_index(&self, k: usize, j: usize) -> Option<usize>;
    fn is_toy(&self) -> bool;
}

/// The growth-function maps `j ↦ (A_k*(j), A_k(j))`. Beyond `k = 2` they
/// exceed every chain that fits in memory.
#[derive(Debug, Clone, Copy, Default)]
pub struct GrowthIndexMaps;

fn as_index(v: Result<GrowthValue>) -> Option<usize> {
    v.ok()?.exact()?.to_u64().and_then(|x| usize::try_from(x).ok())
}

impl IndexMaps for GrowthIndexMaps {
    fn f_index(&self, k: usize, j: usize) -> Option<usize> {
        as_index(a_star(k as u32, &GrowthValue::from(j as u64)))
    }

    fn v_index(&self, k: usize, j: usize) -> Option<usize> {
        as_index(a_fn(k as u32, &GrowthValue::from(j as u64)))
    }

    fn is_toy(&self) -> bool {
        false
    }
}

impl GrowthIndexMaps {
    /// Chain length `m_k(s)` the maps call for.
    pub fn chain_len(&self, k: usize, s: usize) -> Result<GrowthValue> {
        m_fn(k as u32, s as u64)
    }
}

/// Monotone stand-in maps `j ↦ (j + f_shift, j + v_shift)` for desk-scale runs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ToyIndexMaps {
    pub f_shift: usize,
    pub v_shift: usize,
}

impl IndexMaps for ToyIndexMaps {
    fn f_index(&self, _k: usize, j: usize) -> Option<usize> {
        Some(j + self.f_shift)
    }

    fn v_index(&self, _k: usize, j: usize) -> Option<usize> {
        Some(j + self.v_shift)
    }

    fn is_toy(&self) -> bool {
        true
    }
}

/// Vertex-chain length needed to assemble `s` levels at uniformity `k`.
pub fn required_chain_len(k: usize, s: usize, maps: &dyn IndexMaps) -> Option<usize> {
    if k == 2 {
        return Some(s + 1);
    }
    let s_prime = maps.f_index(k, s)?;
    Some(required_chain_len(k - 1, s_prime, maps)?.max(maps.v_index(k, s)?))
}

/// Successively refined equipartitions `H_1 ≻ ⋯ ≻ H_s` of `V_1 × ⋯ × V_k`;
/// `levels[j−1]` holds the `2^j` k-graphs of `H_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquipartitionChain {
    pub layout: Arc<VertexLayout>,
    pub levels: Vec<Vec<KGraph>>,
}

impl EquipartitionChain {
    /// Checks `|H_j| = 2^j`, that each `H_j` is an equipartition of all
    /// crossing k-sets with parts of density `2^{−j}`, and `H_{j+1} ≺ H_j`.
    pub fn validate(&self) -> Result<()> {
        let total: BigUint = self.layout.sizes().iter().map(|&n| BigUint::from(n)).product();
        let fail = |msg: alloc::string::String| Err(Error::AssertionFailed(msg));
        let mut prev: Option<Vec<&BTreeSet<Edge>>> = None;
        for (j, level) in self.levels.iter().enumerate() {
            let lv = j + 1;
            if level.len() != 1 << lv {
                return fail(format!("level {lv} has {} parts", level.len()));
            }
            let mut seen = BTreeSet::new();
            for h in level {
                if **h.layout() != *self.layout {
                    return fail(format!("level {lv} has a part on another layout"));
                }
                if BigUint::from(h.edge_count()) << lv != total {
                    return fail(format!("level {lv} has a part with {} edges, not a 2^-{lv} fraction", h.edge_count()));
                }
                for e in h.edges() {
                    if !seen.insert(e) {
                        return fail(format!("level {lv} parts overlap in {e:?}"));
                    }
                }
            }
            if let Some(prev) = &prev {
                for h in level {
                    if !prev.iter().any(|p| h.edges().is_subset(p)) {
                        return fail(format!("level {lv} does not refine level {j}"));
                    }
                }
            }
            prev = Some(level.iter().map(KGraph::edges).collect());
        }
        Ok(())
    }
}

/// Builds `H_1 ≻ ⋯ ≻ H_s` by induction on `k`, following the inductive
/// construction: for `k = 2` the provider runs on `(V_1, V_2)` with chains
/// `V_1(𝒱_2), …, V_1(𝒱_{s+1})` and `V_2(𝒱_1), …, V_2(𝒱_s)`; for `k ≥ 3` the
/// (k−1)-level chain `F_1 ≻ ⋯ ≻ F_{s'}` (with `s' = f(s)`) is built first and
/// the provider runs on `(V_1 × ⋯ × V_{k−1}, V_k)` with chains `F_{f(j)}` and
/// `V_k(𝒱_{v(j)})`. Every provider call is checked against its contract.
///
/// `chain` lists `𝒱_1 ≻ ⋯ ≻ 𝒱_m`, each refining the classes.
pub fn assemble_inductive(
    layout: Arc<VertexLayout>,
    s: usize,
    chain: &[Partition],
    provider: &mut dyn CorePartitionProvider,
    maps: &dyn IndexMaps,
) -> Result<EquipartitionChain> {
    let k = layout.num_classes();
    if k < 2 || s == 0 {
        return Err(Error::InvalidArgument("assembly needs k ≥ 2 classes and s ≥ 1".into()));
    }
    let sizes = layout.sizes();
    if sizes.iter().any(|&n| n != sizes[0]) {
        return Err(Error::PreconditionUnmet("classes must have equal sizes".into()));
    }
    check_chain(&layout, chain)?;
    let levels = assemble_rec(&layout, s, chain, provider, maps)?;
    let out = EquipartitionChain { layout, levels };
    out.validate()?;
    Ok(out)
}

fn check_chain(layout: &VertexLayout, chain: &[Partition]) -> Result<()> {
    let classes = Partition::new(layout.universe(), (0..layout.num_classes()).map(|i| layout.class(i).to_vec()).collect())?;
    for (i, p) in chain.iter().enumerate() {
        let parent = if i == 0 { &classes } else { &chain[i - 1] };
        if !p.refines(parent)? {
            return Err(Error::PreconditionUnmet(format!("chain level {} does not refine its predecessor", i + 1)));
        }
        if !p.is_equitable() {
            return Err(Error::PreconditionUnmet(format!("chain level {} is not equitable", i + 1)));
        }
    }
    Ok(())
}

fn out_of_range(index: Option<usize>, len: usize) -> Error {
    Error::IndexOutOfRange { index: index.unwrap_or(usize::MAX), len }
}

fn level_at(chain: &[Partition], idx: Option<usize>) -> Result<&Partition> {
    match idx {
        Some(i) if (1..=chain.len()).contains(&i) => Ok(&chain[i - 1]),
        _ => Err(out_of_range(idx, chain.len())),
    }
}

/// `V_i(𝒱)` as a partition of positions in class `i`.
fn class_restriction(p: &Partition, layout: &VertexLayout, i: usize) -> Result<Partition> {
    let parts = p
        .parts()
        .iter()
        .filter(|part| layout.class_of(part[0]) == Some(i))
        .map(|part| part.iter().map(|&v| layout.position(v).unwrap() as u32).collect())
        .collect();
    Partition::new(layout.class_size(i), parts)
}

/// Restriction of a vertex partition to the given classes (ids unchanged).
fn classes_restriction(p: &Partition, layout: &VertexLayout) -> Result<Partition> {
    let parts = p.parts().iter().filter(|part| layout.contains(part[0])).cloned().collect();
    Partition::new(p.universe(), parts)
}

/// Mixed-radix index of a crossing set of `layout`.
fn product_index(layout: &VertexLayout, e: &Edge) -> usize {
    layout.class_ordered(e).iter().enumerate().fold(0, |acc, (j, &v)| acc * layout.class_size(j) + layout.position(v).unwrap())
}

fn assemble_rec(
    layout: &Arc<VertexLayout>,
    s: usize,
    chain: &[Partition],
    provider: &mut dyn CorePartitionProvider,
    maps: &dyn IndexMaps,
) -> Result<Vec<Vec<KGraph>>> {
    let k = layout.num_classes();
    let (left_chain, right_chain, left_len) = if k == 2 {
        let left = (1..=s).map(|j| class_restriction(level_at(chain, Some(j + 1))?, layout, 0)).collect::<Result<Vec<_>>>()?;
        let right = (1..=s).map(|j| class_restriction(level_at(chain, Some(j))?, layout, 1)).collect::<Result<Vec<_>>>()?;
        (left, right, layout.class_size(0))
    } else {
        let s_prime = maps.f_index(k, s).ok_or_else(|| out_of_range(None, chain.len()))?;
        let sub_layout = Arc::new(layout.select(&(0..k - 1).collect::<Vec<_>>())?);
        let sub_chain = chain.iter().map(|p| classes_restriction(p, &sub_layout)).collect::<Result<Vec<_>>>()?;
        let f = assemble_rec(&sub_layout, s_prime, &sub_chain, provider, maps)?;
        let left_len: usize = (0..k - 1).map(|j| layout.class_size(j)).product();
        let mut left = Vec::with_capacity(s);
        let mut right = Vec::with_capacity(s);
        for j in 1..=s {
            let fj = maps.f_index(k, j);
            let level = match fj {
                Some(i) if (1..=f.len()).contains(&i) => &f[i - 1],
                _ => return Err(out_of_range(fj, f.len())),
            };
            let parts = level.iter().map(|g| g.edges().iter().map(|e| product_index(&sub_layout, e) as u32).collect()).collect();
            left.push(Partition::new(left_len, parts)?);
            right.push(class_restriction(level_at(chain, maps.v_index(k, j))?, layout, k - 1)?);
        }
        (left, right, left_len)
    };
    let right_len = layout.class_size(k - 1);
    let out = provider.provide(left_len, right_len, &left_chain, &right_chain)?;
    check_provider_output(&out, left_len, right_len, s)?;
    out.iter()
        .map(|g| {
            g.parts()
                .iter()
                .map(|part| {
                    let pairs = part.iter().map(|&x| (x as usize / right_len, x as usize % right_len));
                    hypergraph_from_bipartite(layout.clone(), &BipartiteGraph::from_pairs(left_len, right_len, pairs))
                })
                .collect()
        })
        .collect()
}

/// Desk-scale vertex chain over the given ground sets: level `i` splits every
/// ground set into `2^{i−1}` random equal parts, each refining the last.
pub fn toy_vertex_chain<R: Rng + ?Sized>(universe: usize, ground_sets: &[Vec<Vertex>], m: usize, rng: &mut R) -> Result<Vec<Partition>> {
    let mut parts: Vec<Vec<Vertex>> = ground_sets.to_vec();
    for g in &parts {
        if m > 0 && g.len() % (1 << (m - 1)) != 0 {
            return Err(Error::Divisibility(g.len(), m - 1));
        }
    }
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        if i > 0 {
            parts = parts
                .into_iter()
                .flat_map(|mut p| {
                    p.shuffle(rng);
                    let back = p.split_off(p.len() / 2);
                    [p, back]
                })
                .collect();
        }
        out.push(Partition::new(universe, parts.iter().map(|p| { let mut p = p.clone(); p.sort_unstable(); p }).collect())?);
    }
    Ok(out)
}

/// A pasted tight-cycle instance and its pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleInstance {
    pub graph: KGraph,
    /// `pieces[x]` is the k-graph placed on the cycle edge starting at `x`.
    pub pieces: Vec<KGraph>,
    /// The vertex chain over the 2k ground sets.
    pub chain: Vec<Partition>,
}

/// Pastes, along the tight 2k-cycle, one part of `H_s` assembled on each
/// cycle edge `{x, …, x+k−1}` from the chain restricted to those ground sets.
pub fn cycle_instance(
    k: usize,
    s: usize,
    n: usize,
    chain: Vec<Partition>,
    provider: &mut dyn CorePartitionProvider,
    maps: &dyn IndexMaps,
) -> Result<CycleInstance> {
    let mut pieces = Vec::with_capacity(2 * k);
    for x in 0..2 * k {
        let layout = cycle_edge_layout(k, n, x)?;
        let sub_chain = chain.iter().map(|p| classes_restriction(p, &layout)).collect::<Result<Vec<_>>>()?;
        let h = assemble_inductive(layout, s, &sub_chain, provider, maps)?;
        pieces.push(h.levels[s - 1][0].clone());
    }
    let graph = paste_cycle(k, n, &pieces)?;
    Ok(CycleInstance { graph, pieces, chain })
}

/// The 2k ground sets `V^0, …, V^{2k−1}` of size `n`.
pub fn cycle_ground_sets(k: usize, n: usize) -> Vec<Vec<Vertex>> {
    (0..2 * k).map(|h| ground_set(n, h)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::StubProvider;
    use crate::rational::ratio;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn run(k: usize, s: usize, n: usize, seed: u64) -> EquipartitionChain {
        let layout = Arc::new(VertexLayout::uniform(k, n));
        let maps = ToyIndexMaps::default();
        let m = required_chain_len(k, s, &maps).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ground: Vec<Vec<Vertex>> = (0..k).map(|i| layout.class(i).to_vec()).collect();
        let chain = toy_vertex_chain(layout.universe(), &ground, m, &mut rng).unwrap();
        assemble_inductive(layout, s, &chain, &mut StubProvider::new(seed), &maps).unwrap()
    }

    #[test]
    fn two_levels_for_graphs() {
        let c = run(2, 2, 8, 1);
        assert_eq!(c.levels.iter().map(Vec::len).collect::<Vec<_>>(), [2, 4]);
        assert!(c.levels[1].iter().all(|h| h.density() == ratio(1, 4)));
    }

    #[test]
    fn three_graphs() {
        let c = run(3, 2, 4, 2);
        assert_eq!(c.levels.len(), 2);
        assert!(c.levels[1].iter().all(|h| h.density() == ratio(1, 4)));
    }

    #[test]
    fn short_chain_is_out_of_range() {
        let layout = Arc::new(VertexLayout::uniform(2, 4));
        let chain = alloc::vec![Partition::new(8, alloc::vec![alloc::vec![0, 1, 2, 3], alloc::vec![4, 5, 6, 7]]).unwrap()];
        let r = assemble_inductive(layout, 1, &chain, &mut StubProvider::new(0), &ToyIndexMaps::default());
        assert!(matches!(r, Err(Error::IndexOutOfRange { index: 2, len: 1 })));
    }

    #[test]
    fn growth_maps_overflow_for_three_graphs() {
        let maps = GrowthIndexMaps;
        assert_eq!(maps.f_index(2, 1), None);
        assert_eq!(maps.v_index(2, 3), Some(3));
        assert_eq!(maps.f_index(3, 1), None);
        assert!(maps.chain_len(3, 1).unwrap().exact().is_none());
    }

    #[test]
    fn pasted_cycle_density() {
        let (k, s, n) = (3, 1, 4);
        let maps = ToyIndexMaps::default();
        let m = required_chain_len(k, s, &maps).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let chain = toy_vertex_chain(2 * k * n, &cycle_ground_sets(k, n), m, &mut rng).unwrap();
        let inst = cycle_instance(k, s, n, chain, &mut StubProvider::new(5), &maps).unwrap();
        assert_eq!(inst.graph.density(), ratio(6, 8) * ratio(1, 2));
    }
}
