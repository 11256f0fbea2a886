use alloc::format;
use alloc::vec::Vec;

use rand::Rng;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, KGraph, Polyad};
use crate::limits::Caps;
use crate::rational::{self, Rational};
use crate::report::{RegularityReport, ReportMode, Witness};

/// Bitmask view of a polyad: its edges numbered `0..m`, every clique as the
/// mask of its (r−1)-subsets, and whether the clique is an edge of `H`.
pub(crate) struct MaskedPolyad {
    pub edges: Vec<Edge>,
    pub cliques: Vec<(u64, bool)>,
}

impl MaskedPolyad {
    pub fn new(h_edges: &[&Edge], p: &Polyad, cap: usize) -> Result<Self> {
        let edges: Vec<Edge> = p.union_edges().cloned().collect();
        if edges.len() > cap.min(63) {
            return Err(Error::InstanceTooLarge(format!(
                "polyad has {} edges, exact enumeration allows {}",
                edges.len(),
                cap.min(63)
            )));
        }
        let mut sorted: Vec<(Edge, usize)> = edges.iter().cloned().zip(0..).collect();
        sorted.sort();
        let bit = |e: &Edge| sorted.binary_search_by(|(x, _)| x.cmp(e)).ok().map(|i| sorted[i].1);
        for e in h_edges {
            if !p.is_clique(e) {
                return Err(Error::UnderlieViolation((*e).clone()));
            }
        }
        let cliques = p
            .cliques()
            .edges()
            .iter()
            .map(|c| {
                let mask = c.vertices().iter().fold(0u64, |m, &v| m | 1 << bit(&c.without(v)).unwrap());
                (mask, h_edges.binary_search(&c).is_ok())
            })
            .collect();
        Ok(MaskedPolyad { edges, cliques })
    }

    /// `(|K(S)|, |H ∩ K(S)|)` for the sub-polyad given by a mask.
    pub fn counts(&self, s: u64) -> (usize, usize) {
        self.cliques.iter().filter(|(m, _)| m & !s == 0).fold((0, 0), |(k, h), &(_, hit)| (k + 1, h + hit as usize))
    }

    pub fn parts_of(&self, p: &Polyad, s: u64) -> Vec<Vec<Edge>> {
        (0..p.arity())
            .map(|i| {
                self.edges
                    .iter()
                    .enumerate()
                    .filter(|(j, e)| s >> j & 1 == 1 && p.part(i).contains(*e))
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect()
    }
}

/// Extreme densities over the sub-polyads that pass the size test.
struct Extremes {
    min: Option<(Rational, u64, usize)>,
    max: Option<(Rational, u64, usize)>,
}

impl Extremes {
    fn push(&mut self, d: Rational, s: u64, k: usize) {
        if self.min.as_ref().is_none_or(|(m, _, _)| d < *m) {
            self.min = Some((d.clone(), s, k));
        }
        if self.max.as_ref().is_none_or(|(m, _, _)| d > *m) {
            self.max = Some((d, s, k));
        }
    }
}

/// Core of the (ε,d)-regularity check over a stream of sub-polyad masks.
fn check_masks(
    mp: &MaskedPolyad,
    p: &Polyad,
    eps: &Rational,
    d: Option<&Rational>,
    masks: impl Iterator<Item = u64>,
    mode: ReportMode,
) -> RegularityReport {
    let total = mp.cliques.len();
    let floor = eps * rational::int(total);
    let mut ext = Extremes { min: None, max: None };
    for s in masks {
        let (k, hits) = mp.counts(s);
        if rational::int(k) < floor {
            continue;
        }
        let dens = rational::frac(hits, k);
        if let Some(d) = d {
            if (&dens - d).abs() > *eps {
                let w = Witness::SubPolyad {
                    parts: mp.parts_of(p, s),
                    cliques: k,
                    density: dens,
                    low: d - eps,
                    high: d + eps,
                };
                return RegularityReport::fail(mode, w);
            }
        } else {
            ext.push(dens, s, k);
        }
    }
    if let (Some((lo, _, _)), Some((hi, s, k))) = (ext.min, ext.max) {
        let two_eps = eps * rational::int(2);
        if &hi - &lo > two_eps {
            let high = &lo + &two_eps;
            let w = Witness::SubPolyad { parts: mp.parts_of(p, s), cliques: k, density: hi, low: lo, high };
            return RegularityReport::fail(mode, w);
        }
    }
    RegularityReport::pass(mode)
}

fn h_edges(h: &KGraph) -> Vec<&Edge> {
    h.edges().iter().collect()
}

/// `H ⊆ K(P)` is (ε,d)-regular in `P` when every `S ⊆ P` (a subgraph of each
/// part) with `|K(S)| ≥ ε|K(P)|` has `d_H(S) = d ± ε`. With `d = None` the
/// check asks whether some `d` works, i.e. whether those densities span at
/// most `2ε`. Exhaustive over all `2^{e(P)}` sub-polyads.
pub fn is_eps_regular_in_polyad(
    h: &KGraph,
    p: &Polyad,
    eps: &Rational,
    d: Option<&Rational>,
    caps: &Caps,
) -> Result<RegularityReport> {
    let hs = h_edges(h);
    eps_regular_edges(&hs, p, eps, d, caps)
}

pub(crate) fn eps_regular_edges(
    hs: &[&Edge],
    p: &Polyad,
    eps: &Rational,
    d: Option<&Rational>,
    caps: &Caps,
) -> Result<RegularityReport> {
    let mp = MaskedPolyad::new(hs, p, caps.polyad_edges)?;
    let m = mp.edges.len();
    Ok(check_masks(&mp, p, eps, d, 0..1u64 << m, ReportMode::Exact))
}

/// Sampled variant for polyads above the exact cap: `samples` uniformly
/// random sub-polyads (plus `P` itself). A pass is only evidence.
pub fn is_eps_regular_in_polyad_sampled<R: Rng + ?Sized>(
    h: &KGraph,
    p: &Polyad,
    eps: &Rational,
    d: Option<&Rational>,
    samples: usize,
    rng: &mut R,
) -> Result<RegularityReport> {
    let hs = h_edges(h);
    let mp = MaskedPolyad::new(&hs, p, 63)?;
    let m = mp.edges.len();
    let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let masks: Vec<u64> = core::iter::once(full).chain((0..samples).map(|_| rng.random::<u64>() & full)).collect();
    Ok(check_masks(&mp, p, eps, d, masks.into_iter(), ReportMode::Heuristic))
}

/// Every `S ⊆ P` with `|K(S)| ≥ δ|K(P)|` has `d_H(S) ≥ θ·d_H(P)`; the first
/// failing sub-polyad is returned.
pub(crate) fn one_sided_in_polyad(
    hs: &[&Edge],
    p: &Polyad,
    delta: &Rational,
    theta: &Rational,
    caps: &Caps,
) -> Result<Option<Witness>> {
    let mp = MaskedPolyad::new(hs, p, caps.polyad_edges)?;
    let m = mp.edges.len();
    let total = mp.cliques.len();
    let hits_all = mp.cliques.iter().filter(|c| c.1).count();
    let need = theta * rational::frac(hits_all, total);
    let floor = delta * rational::int(total);
    for s in 0..1u64 << m {
        let (k, hits) = mp.counts(s);
        if rational::int(k) < floor {
            continue;
        }
        let dens = rational::frac(hits, k);
        if dens < need {
            return Ok(Some(Witness::SubPolyad {
                parts: mp.parts_of(p, s),
                cliques: k,
                density: dens,
                low: need.clone(),
                high: rational::int(1),
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::VertexLayout;
    use crate::rational::{int, ratio};
    use alloc::sync::Arc;
    use rand::SeedableRng;

    /// Oracle: unrolled definition with explicit part subsets.
    fn oracle(h: &KGraph, p: &Polyad, eps: &Rational, d: &Rational) -> bool {
        let edges: Vec<Edge> = p.union_edges().cloned().collect();
        let kp = p.cliques().edge_count();
        for s in 0u32..1 << edges.len() {
            let parts = (0..p.arity())
                .map(|i| {
                    edges
                        .iter()
                        .enumerate()
                        .filter(|(j, e)| s >> j & 1 == 1 && p.part(i).contains(*e))
                        .map(|(_, e)| e.clone())
                        .collect()
                })
                .collect();
            let sub = Polyad::new(p.layout().clone(), parts).unwrap();
            let ks = sub.cliques();
            if rational::int(ks.edge_count()) < eps * rational::int(kp) {
                continue;
            }
            let dens = crate::hypergraph::relative_density(h, &sub);
            if (&dens - d).abs() > *eps {
                return false;
            }
        }
        true
    }

    fn complete3() -> (Arc<VertexLayout>, Polyad) {
        let l = Arc::new(VertexLayout::uniform(3, 2));
        (l.clone(), Polyad::complete(l).unwrap())
    }

    #[test]
    fn full_and_empty() {
        let (l, p) = complete3();
        let full = p.cliques();
        let empty = KGraph::empty(l, 3);
        for eps in [ratio(1, 10), ratio(1, 2)] {
            assert!(is_eps_regular_in_polyad(&full, &p, &eps, Some(&int(1)), &Caps::default()).unwrap().verdict);
            assert!(is_eps_regular_in_polyad(&empty, &p, &eps, Some(&int(0)), &Caps::default()).unwrap().verdict);
        }
    }

    #[test]
    fn half_triangles_match_oracle() {
        let (l, p) = complete3();
        let all: Vec<Edge> = p.cliques().edges().iter().cloned().collect();
        for mask in [0b1010_0101u32, 0b0000_1111, 0b1001_0110, 0b1100_0011] {
            let h = KGraph::new(l.clone(), 3, all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e.clone()))
                .unwrap();
            for eps in [ratio(1, 8), ratio(1, 4), ratio(1, 2)] {
                let d = ratio(1, 2);
                let fast = is_eps_regular_in_polyad(&h, &p, &eps, Some(&d), &Caps::default()).unwrap().verdict;
                assert_eq!(fast, oracle(&h, &p, &eps, &d), "mask {mask:b} eps {eps}");
            }
        }
    }

    #[test]
    fn sampled_mode_is_heuristic() {
        let (_, p) = complete3();
        let full = p.cliques();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let r = is_eps_regular_in_polyad_sampled(&full, &p, &ratio(1, 10), Some(&int(1)), 50, &mut rng).unwrap();
        assert!(r.verdict);
        assert_eq!(r.mode, ReportMode::Heuristic);
    }

    #[test]
    fn cap_and_underlie() {
        let l = Arc::new(VertexLayout::uniform(3, 3));
        let p = Polyad::complete(l.clone()).unwrap();
        let h = KGraph::empty(l.clone(), 3);
        assert!(matches!(
            is_eps_regular_in_polyad(&h, &p, &ratio(1, 2), None, &Caps::default()),
            Err(Error::InstanceTooLarge(_))
        ));
        let small = Arc::new(VertexLayout::uniform(3, 2));
        let q = Polyad::from_union(small.clone(), [Edge::pair(0, 2)]).unwrap();
        let h = KGraph::new(small, 3, [Edge::from([0, 2, 4])]).unwrap();
        assert!(matches!(
            is_eps_regular_in_polyad(&h, &q, &ratio(1, 2), None, &Caps::default()),
            Err(Error::UnderlieViolation(_))
        ));
    }

    #[test]
    fn two_polyad_is_rectangle_control() {
        // For a 2-polyad the sub-polyads are vertex-subset rectangles.
        let l = Arc::new(VertexLayout::uniform(2, 3));
        let p = Polyad::complete(l.clone()).unwrap();
        let h = KGraph::new(l.clone(), 2, [Edge::pair(0, 3), Edge::pair(1, 4), Edge::pair(2, 5)]).unwrap();
        let eps = ratio(1, 3);
        let d = ratio(1, 3);
        let fast = is_eps_regular_in_polyad(&h, &p, &eps, Some(&d), &Caps::default()).unwrap().verdict;
        // Oracle: enumerate the vertex-subset rectangles directly.
        let mut regular = true;
        for a in 1u32..8 {
            for b in 1u32..8 {
                let xs: Vec<u32> = (0..3).filter(|i| a >> i & 1 == 1).collect();
                let ys: Vec<u32> = (0..3).filter(|i| b >> i & 1 == 1).map(|i| i + 3).collect();
                let k = xs.len() * ys.len();
                if rational::int(k) < &eps * int(9) {
                    continue;
                }
                let hits = xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).filter(|&(x, y)| y == x + 3).count();
                if (rational::frac(hits, k) - &d).abs() > eps {
                    regular = false;
                }
            }
        }
        assert_eq!(fast, regular);
    }
}
