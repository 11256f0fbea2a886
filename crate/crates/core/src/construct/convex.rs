use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::counterexample::blow_up;
use crate::delta::pair_violation_sized;
use crate::error::{Error, Result};
use crate::hypergraph::{BipartiteGraph, Edge, KGraph, Vertex};
use crate::limits::Caps;
use crate::rational::{self, Rational};

/// One term `w·y` of a convex decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexTerm {
    pub weight: Rational,
    pub vector: Vec<bool>,
}

/// Writes `x ∈ [0,1]^n` as a convex combination of binary vectors.
///
/// With `N = ‖x‖₁` integral every vector has `N` ones. Otherwise `x` is padded
/// with one coordinate `⌈N⌉ − N`, decomposed, and the padding dropped, so
/// every vector has `⌊N⌋` or `⌈N⌉` ones and their weighted mean is `N`.
/// Each step takes the indicator `y` of the `⌈N⌉` largest coordinates of the
/// remaining vector `z` (lowest index on ties) and removes the largest
/// multiple `λ` of it keeping `(z − λy)/(1 − λ)` inside `[0,1]^n`; at least one
/// fractional coordinate becomes binary per step, so there are at most
/// `n + 1` terms.
pub fn convex_decompose(x: &[Rational]) -> Result<Vec<ConvexTerm>> {
    let (zero, one) = (Rational::zero(), Rational::one());
    if let Some(i) = x.iter().position(|c| *c < zero || *c > one) {
        return Err(Error::ComponentOutOfRange(i));
    }
    let n = x.len();
    let norm: Rational = x.iter().sum();
    let mut z = x.to_vec();
    if !norm.is_integer() {
        z.push(norm.ceil() - &norm);
    }
    let target = rational::floor_usize(&z.iter().sum());
    let mut remaining = one.clone();
    let mut terms = Vec::new();
    loop {
        let mut order: Vec<usize> = (0..z.len()).collect();
        order.sort_by(|&a, &b| z[b].cmp(&z[a]).then(a.cmp(&b)));
        let mut y = alloc::vec![false; z.len()];
        for &i in &order[..target] {
            y[i] = true;
        }
        let min_in = order[..target].iter().map(|&i| z[i].clone()).min().unwrap_or_else(|| one.clone());
        let max_out = order[target..].iter().map(|&i| z[i].clone()).max().unwrap_or_else(|| zero.clone());
        let lambda = core::cmp::min(min_in, &one - max_out);
        if lambda >= one {
            terms.push(ConvexTerm { weight: remaining, vector: y[..n].to_vec() });
            break;
        }
        terms.push(ConvexTerm { weight: &remaining * &lambda, vector: y[..n].to_vec() });
        for (zi, &yi) in z.iter_mut().zip(&y) {
            let shifted = if yi { &*zi - &lambda } else { zi.clone() };
            *zi = shifted / (&one - &lambda);
        }
        remaining *= &one - &lambda;
        if terms.len() > n + 1 {
            return Err(Error::AssertionFailed(format!("decomposition exceeded {} terms", n + 1)));
        }
    }
    Ok(terms)
}

/// Outcome of the blow-up density check for one pair `(S, T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupRegularityReport {
    /// `e_G(S, T)` counted directly.
    pub edges: usize,
    /// `(1 − δ)·d(V̄_a, V̄_b)·|S|·|T|`.
    pub target: Rational,
    /// `e_G(S, T) ≥ target`.
    pub bound_holds: bool,
    /// `e_G(S, T) = m²·sᵀAt = m²·Σ α_i β_j s_iᵀ A t_j`, exactly.
    pub identity_holds: bool,
    pub terms: usize,
    /// Term pairs whose base subsets are both at least `δk` and which
    /// still fall below `(1 − δ)·d·‖s_i‖₁‖t_j‖₁`.
    pub term_failures: usize,
    /// Term pairs with a base subset smaller than `δk`, where the base
    /// property says nothing.
    pub terms_outside_window: usize,
    /// Identity holds, every term is in the window and none fails: the bound
    /// follows from the base property alone.
    pub chain_verdict: bool,
}

fn fraction_vector(sub: &[Vertex], class: &[Vertex], blocks: &[Vec<Vertex>], m: usize) -> Vec<Rational> {
    class
        .iter()
        .map(|&v| {
            let hits = blocks[v as usize].iter().filter(|u| sub.binary_search(u).is_ok()).count();
            rational::frac(hits, m)
        })
        .collect()
}

fn bilinear(a: &[Vec<bool>], s: &[Rational], t: &[Rational]) -> Rational {
    let mut total = Rational::zero();
    for (i, row) in a.iter().enumerate() {
        for (j, &bit) in row.iter().enumerate() {
            if bit {
                total += &s[i] * &t[j];
            }
        }
    }
    total
}

/// Blows `g0` up by `m` and checks `d(S, T) ≥ (1 − δ)·d(V̄_a, V̄_b)` for
/// `S ⊆ V̄_a`, `T ⊆ V̄_b`, both through a direct count and through the chain
/// `e(S,T) = m²·Σ α_i β_j s_iᵀ A t_j` over convex decompositions of the
/// fractional block vectors `s`, `t`.
pub fn verify_blowup_regularity(
    g0: &KGraph,
    m: usize,
    pair: (usize, usize),
    s: &[Vertex],
    t: &[Vertex],
    delta: &Rational,
) -> Result<BlowupRegularityReport> {
    let base = g0.layout();
    let (a, b) = pair;
    if g0.k() != 2 || a == b || a >= base.num_classes() || b >= base.num_classes() {
        return Err(Error::InvalidArgument("expected a 2-graph and two distinct classes".into()));
    }
    let (g, map) = blow_up(g0, m)?;
    let layout = g.layout();
    let mut s = s.to_vec();
    let mut t = t.to_vec();
    s.sort_unstable();
    s.dedup();
    t.sort_unstable();
    t.dedup();
    for (set, class) in [(&s, a), (&t, b)] {
        if let Some(&v) = set.iter().find(|&&v| layout.class_of(v) != Some(class)) {
            return Err(Error::SubsetOutOfClass(v));
        }
        let min = delta * rational::int(layout.class_size(class));
        if rational::int(set.len()) < min {
            return Err(Error::SubsetTooSmall { size: set.len(), required: format!("{min}") });
        }
    }
    let (ca, cb) = (base.class(a), base.class(b));
    let adj: Vec<Vec<bool>> = ca.iter().map(|&u| cb.iter().map(|&v| g0.contains(&Edge::pair(u, v))).collect()).collect();
    let base_edges = adj.iter().flatten().filter(|&&x| x).count();
    let density = rational::frac(base_edges, ca.len() * cb.len());

    let edges = s.iter().map(|&u| t.iter().filter(|&&v| g.contains(&Edge::pair(u, v))).count()).sum::<usize>();
    let size_product = rational::int(s.len() * t.len());
    let keep = rational::int(1) - delta;
    let target = &keep * &density * &size_product;
    let bound_holds = rational::int(edges) >= target;

    let sv = fraction_vector(&s, ca, &map.blocks, m);
    let tv = fraction_vector(&t, cb, &map.blocks, m);
    let m2 = rational::int(m * m);
    let ds = convex_decompose(&sv)?;
    let dt = convex_decompose(&tv)?;
    let as_rational = |y: &[bool]| -> Vec<Rational> { y.iter().map(|&b| rational::int(b as usize)).collect() };
    let window_a = delta * rational::int(ca.len());
    let window_b = delta * rational::int(cb.len());
    let mut chain = Rational::zero();
    let (mut term_failures, mut outside) = (0, 0);
    for si in &ds {
        let ys = as_rational(&si.vector);
        let ns = rational::int(si.vector.iter().filter(|&&x| x).count());
        for tj in &dt {
            let yt = as_rational(&tj.vector);
            let nt = rational::int(tj.vector.iter().filter(|&&x| x).count());
            let value = bilinear(&adj, &ys, &yt);
            chain += &si.weight * &tj.weight * &value;
            if ns < window_a || nt < window_b {
                outside += 1;
            } else if value < &keep * &density * &ns * &nt {
                term_failures += 1;
            }
        }
    }
    let direct = rational::int(edges);
    let identity_holds = direct == &m2 * bilinear(&adj, &sv, &tv) && direct == &m2 * chain;
    Ok(BlowupRegularityReport {
        edges,
        target,
        bound_holds,
        identity_holds,
        terms: ds.len() * dt.len(),
        term_failures,
        terms_outside_window: outside,
        chain_verdict: identity_holds && outside == 0 && term_failures == 0,
    })
}

/// Whether every `S ⊆ V_a`, `T ⊆ V_b` with `|S| ≥ δ|V_a|`, `|T| ≥ δ|V_b|` has
/// `d(S, T) ≥ θ·d(V_a, V_b)`, checked exhaustively.
pub fn pair_density_property(g0: &KGraph, pair: (usize, usize), delta: &Rational, theta: &Rational, caps: &Caps) -> Result<bool> {
    let (a, b) = pair;
    let l = g0.layout();
    let (na, nb) = (l.class_size(a), l.class_size(b));
    let pairs = (0..na).flat_map(|i| (0..nb).map(move |j| (i, j)));
    let bg = BipartiteGraph::from_pairs(na, nb, pairs.filter(|&(i, j)| g0.contains(&Edge::pair(l.class(a)[i], l.class(b)[j]))));
    let (ia, ib): (Vec<usize>, Vec<usize>) = ((0..na).collect(), (0..nb).collect());
    let min_a = rational::ceil_times(delta, na);
    let min_b = rational::ceil_times(delta, nb);
    Ok(pair_violation_sized(&bg, &ia, &ib, min_a, min_b, theta, caps)?.is_none())
}
