use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::{BipartiteGraph, KGraph};
use crate::limits::Caps;
use crate::rational::{self, Rational};
use crate::report::{RegularityReport, ReportMode, Witness};

/// Subsets `A' ⊆ A`, `B' ⊆ B` of admissible size whose density is below the
/// threshold. Indices refer to the sides of the graph that was checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairViolation {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub edges: usize,
    pub density: Rational,
    pub threshold: Rational,
}

fn check_delta(delta: &Rational) -> Result<()> {
    if !delta.is_positive_fraction() {
        return Err(Error::InvalidArgument(alloc::format!("δ = {delta} is not in (0, 1]")));
    }
    Ok(())
}

trait UnitInterval {
    fn is_positive_fraction(&self) -> bool;
}

impl UnitInterval for Rational {
    fn is_positive_fraction(&self) -> bool {
        *self > Rational::zero() && *self <= rational::int(1)
    }
}

/// Checks the pair `(A, B)` of `g` (given as index lists into its sides):
/// every `A' ⊆ A`, `B' ⊆ B` with `|A'| ≥ δ|A|` and `|B'| ≥ δ|B|` must have
/// `d(A', B') ≥ θ·d(A, B)`. Returns the first violation found.
///
/// Only subsets of the minimal admissible sizes `⌈δ|A|⌉`, `⌈δ|B|⌉` are
/// examined: for a fixed `B'` the sparsest `A'` of size at least `a` is made
/// of the `a` lowest-degree vertices, and shrinking a set to its
/// lowest-degree members never raises its average. The smaller side is
/// enumerated as a word-sized bitmask, one fixed-weight combination at a
/// time.
pub fn pair_violation(
    g: &BipartiteGraph,
    a: &[usize],
    b: &[usize],
    delta: &Rational,
    theta: &Rational,
    caps: &Caps,
) -> Result<Option<PairViolation>> {
    check_delta(delta)?;
    let min_a = rational::ceil_times(delta, a.len());
    let min_b = rational::ceil_times(delta, b.len());
    pair_violation_sized(g, a, b, min_a, min_b, theta, caps)
}

/// [`pair_violation`] with the least admissible subset sizes given
/// directly. Sizes above a side's size leave nothing to check.
pub fn pair_violation_sized(
    g: &BipartiteGraph,
    a: &[usize],
    b: &[usize],
    min_a: usize,
    min_b: usize,
    theta: &Rational,
    caps: &Caps,
) -> Result<Option<PairViolation>> {
    if a.is_empty() || b.is_empty() || min_a > a.len() || min_b > b.len() {
        return Ok(None);
    }
    if a.len() + b.len() > caps.pair_sides {
        return Err(Error::SidesTooLarge { left: a.len(), right: b.len(), cap: caps.pair_sides });
    }
    let swap = b.len() > a.len();
    let (rows_idx, cols_idx) = if swap { (b, a) } else { (a, b) };
    if cols_idx.len() > 63 {
        return Err(Error::InstanceTooLarge(alloc::format!("pair side of {} vertices", cols_idx.len())));
    }
    let rows: Vec<u64> = rows_idx
        .iter()
        .map(|&r| {
            cols_idx.iter().enumerate().fold(0u64, |m, (j, &c)| {
                let hit = if swap { g.has_edge(c, r) } else { g.has_edge(r, c) };
                m | (u64::from(hit) << j)
            })
        })
        .collect();
    let e: usize = rows.iter().map(|r| r.count_ones() as usize).sum();
    if e == 0 {
        return Ok(None);
    }
    let (nr, nc) = (rows.len(), cols_idx.len());
    let (r0, c0) = if swap { (min_b, min_a) } else { (min_a, min_b) };
    let (r0, c0) = (r0.max(1), c0.max(1));
    // Least edge count an (r0 × c0) block may carry.
    let threshold = theta * rational::frac(e, nr * nc);
    let needed = (&threshold * rational::int(r0 * c0)).ceil().to_integer().to_usize().unwrap_or(usize::MAX);
    if needed == 0 {
        return Ok(None);
    }
    let mut hist = vec![0usize; c0 + 1];
    let mut mask: u64 = (1u64 << c0) - 1;
    let limit = 1u64 << nc;
    while mask < limit {
        hist.iter_mut().for_each(|h| *h = 0);
        for r in &rows {
            hist[(r & mask).count_ones() as usize] += 1;
        }
        let mut left = r0;
        let mut sum = 0;
        for (d, &cnt) in hist.iter().enumerate() {
            let take = cnt.min(left);
            sum += take * d;
            left -= take;
            if left == 0 {
                break;
            }
        }
        if sum < needed {
            let mut order: Vec<usize> = (0..nr).collect();
            order.sort_by_key(|&i| ((rows[i] & mask).count_ones(), i));
            let mut pick_rows: Vec<usize> = order[..r0].iter().map(|&i| rows_idx[i]).collect();
            pick_rows.sort_unstable();
            let pick_cols: Vec<usize> = (0..nc).filter(|&j| mask >> j & 1 == 1).map(|j| cols_idx[j]).collect();
            let (left, right) = if swap { (pick_cols, pick_rows) } else { (pick_rows, pick_cols) };
            return Ok(Some(PairViolation {
                left,
                right,
                edges: sum,
                density: rational::frac(sum, r0 * c0),
                threshold,
            }));
        }
        // Next combination of the same weight.
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    Ok(None)
}

/// Checks a 2-graph on two classes as one pair, with threshold `½·d`.
pub fn is_pair_delta_regular(g: &KGraph, delta: &Rational, caps: &Caps) -> Result<RegularityReport> {
    let bg = bipartite_of(g)?;
    let a: Vec<usize> = (0..bg.left_len()).collect();
    let b: Vec<usize> = (0..bg.right_len()).collect();
    Ok(match pair_violation(bg, &a, &b, delta, &rational::half(), caps)? {
        None => RegularityReport::pass(ReportMode::Exact),
        Some(v) => RegularityReport::fail(ReportMode::Exact, pair_witness(g.layout(), None, (0, 0), v)),
    })
}

pub(crate) fn bipartite_of(g: &KGraph) -> Result<&BipartiteGraph> {
    g.bipartite_view()
        .ok_or_else(|| Error::InvalidArgument("expected a 2-graph on exactly two classes".into()))
}

/// Witness for a violation in a plain bipartite 2-graph (sides are the two
/// classes, indexed by position).
pub(crate) fn pair_witness(
    layout: &Arc<crate::hypergraph::VertexLayout>,
    aux_class: Option<usize>,
    parts: (usize, usize),
    v: PairViolation,
) -> Witness {
    let (l, r) = (layout.class(0), layout.class(1));
    Witness::Pair {
        aux_class,
        parts,
        left: v.left.iter().map(|&i| vec![l[i]]).collect(),
        right: v.right.iter().map(|&i| r[i]).collect(),
        density: v.density,
        threshold: v.threshold,
    }
}
