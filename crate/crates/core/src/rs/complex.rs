use alloc::collections::BTreeSet;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::ToPrimitive;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hypergraph::kgraph::{combinations, product};
use crate::hypergraph::{Edge, KGraph, Polyad, Vertex, VertexLayout};
use crate::limits::Caps;
use crate::rational::{self, Rational};
use crate::report::{RegularityReport, ReportMode, Witness};
use crate::sample::bernoulli;

use super::polyad::eps_regular_edges;
use super::DensityFn;

/// Largest `∏ n_i` the counting check will enumerate.
const MAX_COUNT_PRODUCT: u64 = 1 << 27;

/// A k-complex on `k` classes: levels `P^(2), …, P^(k−1)` with each level
/// inside the clique set of the one below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    layout: Arc<VertexLayout>,
    levels: Vec<BTreeSet<Edge>>,
}

impl Complex {
    /// `levels[0]` is `P^(2)`; there must be `k − 2` levels for `k` classes.
    pub fn new(layout: Arc<VertexLayout>, levels: Vec<BTreeSet<Edge>>) -> Result<Self> {
        let k = layout.num_classes();
        if k < 2 || levels.len() + 2 != k {
            return Err(Error::NotAComplex(format!("{} levels for {k} classes", levels.len())));
        }
        for (i, level) in levels.iter().enumerate() {
            let r = i + 2;
            for e in level {
                if e.len() != r || !layout.is_crossing(e) {
                    return Err(Error::NotAComplex(format!("{e:?} is not a crossing {r}-set")));
                }
                if r >= 3 && e.vertices().iter().any(|&v| !levels[i - 1].contains(&e.without(v))) {
                    return Err(Error::NotAComplex(format!("{e:?} is not a clique of level {}", r - 1)));
                }
            }
        }
        Ok(Complex { layout, levels })
    }

    /// Level `r` is random inside the cliques of level `r − 1`, each clique
    /// kept with probability `d_r` (`densities = [d_2, …, d_{k−1}]`).
    pub fn random<R: Rng + ?Sized>(layout: Arc<VertexLayout>, densities: &[Rational], rng: &mut R) -> Result<Self> {
        let k = layout.num_classes();
        if densities.len() + 2 != k {
            return Err(Error::ArityMismatch(format!("{} densities for {k} classes", densities.len())));
        }
        let mut levels: Vec<BTreeSet<Edge>> = Vec::new();
        for (i, d) in densities.iter().enumerate() {
            let r = i + 2;
            let mut level = BTreeSet::new();
            for cls in combinations(k, r) {
                for vs in product(cls.iter().map(|&c| layout.class(c).to_vec()).collect()) {
                    let e = Edge::new(vs);
                    let clique = r == 2 || e.vertices().iter().all(|&v| levels[i - 1].contains(&e.without(v)));
                    if clique && bernoulli(rng, d) {
                        level.insert(e);
                    }
                }
            }
            levels.push(level);
        }
        Complex::new(layout, levels)
    }

    pub fn layout(&self) -> &Arc<VertexLayout> {
        &self.layout
    }

    pub fn k(&self) -> usize {
        self.layout.num_classes()
    }

    /// `P^(r)` for `2 ≤ r ≤ k − 1`.
    pub fn level(&self, r: usize) -> &BTreeSet<Edge> {
        &self.levels[r - 2]
    }

    /// The top level as a k-polyad (the complete 2-polyad when `k = 2`).
    pub fn top_polyad(&self) -> Result<Polyad> {
        match self.levels.last() {
            None => Polyad::complete(self.layout.clone()),
            Some(top) => Polyad::from_union(self.layout.clone(), top.iter().cloned()),
        }
    }

    /// `K(P)`, the cliques of the top level.
    pub fn cliques(&self) -> Result<KGraph> {
        Ok(self.top_polyad()?.cliques())
    }

    /// The sub-complex on the given classes.
    pub fn restrict_classes(&self, classes: &[usize]) -> Result<Complex> {
        let layout = Arc::new(self.layout.select(classes)?);
        let levels = self
            .levels
            .iter()
            .take(classes.len().saturating_sub(2))
            .map(|l| l.iter().filter(|e| e.vertices().iter().all(|&v| layout.contains(v))).cloned().collect())
            .collect();
        Complex::new(layout, levels)
    }

    /// `(f, d_2, …, d_{k−1})`-regularity: for every `r` and every `r`
    /// classes, `P^(r)` there is `(f(d_0), d_r)`-regular in `P^(r−1)` there.
    pub fn is_f_regular(&self, f: &DensityFn, densities: &[Rational], caps: &Caps) -> Result<RegularityReport> {
        let k = self.k();
        if densities.len() + 2 != k {
            return Err(Error::ArityMismatch(format!("{} densities for {k} classes", densities.len())));
        }
        let Some(d0) = densities.iter().min() else {
            return Ok(RegularityReport::pass(ReportMode::Exact));
        };
        let eps = f.eval(d0);
        for r in 2..k {
            for cls in combinations(k, r) {
                let sub = self.restrict_classes(&cls)?;
                let polyad = match r {
                    2 => Polyad::complete(sub.layout.clone())?,
                    _ => Polyad::from_union(sub.layout.clone(), sub.level(r - 1).iter().cloned())?,
                };
                let layer: Vec<&Edge> =
                    self.level(r).iter().filter(|e| e.vertices().iter().all(|&v| sub.layout.contains(v))).collect();
                let rep = eps_regular_edges(&layer, &polyad, &eps, Some(&densities[r - 2]), caps)?;
                if let Some(w) = rep.witness {
                    let msg = format!("level {r} on classes {cls:?}: {w:?}");
                    return Ok(RegularityReport::fail(ReportMode::Exact, Witness::Message(msg)));
                }
            }
        }
        Ok(RegularityReport::pass(ReportMode::Exact))
    }
}

/// Clique count of a complex against the dense counting prediction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseCountingReport {
    pub count: usize,
    pub predicted: Rational,
    pub band_low: Rational,
    pub band_high: Rational,
    pub in_band: bool,
    /// Predicted band for `|K(P, e)|`, `e` an edge of the top part missing
    /// the last class.
    pub extension_low: Rational,
    pub extension_high: Rational,
    pub exceptional_edges: usize,
    pub exceptional_limit: Rational,
    pub extension_holds: bool,
    /// Always heuristic: the counting lemma only applies above an
    /// unspecified size threshold.
    pub mode: ReportMode,
}

/// Counts `K(P)` exactly and compares it with
/// `(1 ± γ)·∏ d_i^{C(k,i)}·∏ n_i`; for the edges `e` of the top part missing
/// the last class compares `|K(P, e)|` with `(1 ± γ)·∏ d_i^{C(k−1,i−1)}·n_k`
/// and counts the exceptions against `γ·|P_k|`.
pub fn dense_counting_check(p: &Complex, gamma: &Rational, densities: &[Rational]) -> Result<DenseCountingReport> {
    let k = p.k();
    if k < 3 {
        return Err(Error::InvalidArgument("dense counting needs k ≥ 3".into()));
    }
    if densities.len() + 2 != k {
        return Err(Error::ArityMismatch(format!("{} densities for {k} classes", densities.len())));
    }
    let sizes = p.layout.sizes();
    let product_size: u64 = sizes.iter().map(|&n| n as u64).product();
    if product_size > MAX_COUNT_PRODUCT {
        return Err(Error::InstanceTooLarge(format!("∏ n_i = {product_size} exceeds {MAX_COUNT_PRODUCT}")));
    }
    let polyad = p.top_polyad()?;
    let count = polyad.cliques().edge_count();
    let mut factor = rational::int(1);
    let mut ext_factor = rational::int(1);
    for (j, d) in densities.iter().enumerate() {
        let i = (j + 2) as u64;
        factor *= rational::pow(d, rational::binomial(k as u64, i).to_u64().unwrap());
        ext_factor *= rational::pow(d, rational::binomial(k as u64 - 1, i - 1).to_u64().unwrap());
    }
    let predicted = &factor * rational::int(product_size as usize);
    let one = rational::int(1);
    let band_low = &predicted * (&one - gamma);
    let band_high = &predicted * (&one + gamma);
    let c = rational::int(count);
    let in_band = band_low <= c && c <= band_high;
    let ext = &ext_factor * rational::int(sizes[k - 1]);
    let extension_low = &ext * (&one - gamma);
    let extension_high = &ext * (&one + gamma);
    let top = polyad.part(k - 1);
    let mut exceptional_edges = 0;
    for e in top {
        let n = rational::int(polyad.cliques_containing(e)?.len());
        if n < extension_low || n > extension_high {
            exceptional_edges += 1;
        }
    }
    let exceptional_limit = gamma * rational::int(top.len());
    Ok(DenseCountingReport {
        count,
        predicted,
        band_low,
        band_high,
        in_band,
        extension_low,
        extension_high,
        exceptional_edges,
        extension_holds: rational::int(exceptional_edges) <= exceptional_limit,
        exceptional_limit,
        mode: ReportMode::Heuristic,
    })
}

/// The induced complex `P[V_1, …, V_{k−1}, V'_k]` for `V'_k ⊆ V_k` with
/// `|V'_k| ≥ δ|V_k|`.
pub fn slice_complex(p: &Complex, v_prime: &[Vertex], delta: &Rational) -> Result<Complex> {
    let k = p.k();
    let last = k - 1;
    if let Some(&v) = v_prime.iter().find(|&&v| p.layout.class_of(v) != Some(last)) {
        return Err(Error::SubsetOutOfClass(v));
    }
    let required = delta * rational::int(p.layout.class_size(last));
    if rational::int(v_prime.len()) < required {
        return Err(Error::SubsetTooSmall { size: v_prime.len(), required: format!("{required}") });
    }
    let mut subsets: Vec<Vec<Vertex>> = (0..last).map(|i| p.layout.class(i).to_vec()).collect();
    subsets.push(v_prime.to_vec());
    let layout = Arc::new(p.layout.restrict(&subsets)?);
    let levels = p
        .levels
        .iter()
        .map(|l| l.iter().filter(|e| e.vertices().iter().all(|&v| layout.contains(v))).cloned().collect())
        .collect();
    Complex::new(layout, levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::rational::{int, ratio};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn complete(k: usize, n: usize) -> Complex {
        let l = Arc::new(VertexLayout::uniform(k, n));
        let ones: Vec<Rational> = (2..k).map(|_| int(1)).collect();
        Complex::random(l, &ones, &mut ChaCha8Rng::seed_from_u64(0)).unwrap()
    }

    #[test]
    fn complete_complex_counts_exactly() {
        let p = complete(3, 4);
        let r = dense_counting_check(&p, &ratio(1, 100), &[int(1)]).unwrap();
        assert_eq!(r.count, 64);
        assert_eq!(r.predicted, int(64));
        assert!(r.in_band && r.extension_holds);
        let p4 = complete(4, 2);
        let r = dense_counting_check(&p4, &ratio(0, 1), &[int(1), int(1)]).unwrap();
        assert_eq!(r.count, 16);
        assert!(r.in_band);
    }

    #[test]
    fn empty_top_level() {
        let l = Arc::new(VertexLayout::uniform(3, 3));
        let p = Complex::new(l, vec![BTreeSet::new()]).unwrap();
        let r = dense_counting_check(&p, &ratio(1, 5), &[ratio(1, 2)]).unwrap();
        assert_eq!(r.count, 0);
        assert!(!r.in_band);
        let r = dense_counting_check(&p, &ratio(1, 5), &[int(0)]).unwrap();
        assert!(r.in_band);
    }

    #[test]
    fn containment_is_validated() {
        let l = Arc::new(VertexLayout::uniform(4, 1));
        let level2: BTreeSet<Edge> = [Edge::pair(0, 1), Edge::pair(0, 2)].into();
        let level3: BTreeSet<Edge> = [Edge::from([0, 1, 2])].into();
        assert!(matches!(Complex::new(l.clone(), vec![level2.clone(), level3]), Err(Error::NotAComplex(_))));
        let mut full2 = level2;
        full2.insert(Edge::pair(1, 2));
        assert!(Complex::new(l, vec![full2, [Edge::from([0, 1, 2])].into()]).is_ok());
    }

    #[test]
    fn slicing() {
        let p = complete(3, 4);
        let v3 = p.layout().class(2).to_vec();
        assert_eq!(slice_complex(&p, &v3, &ratio(1, 2)).unwrap(), p);
        let half = slice_complex(&p, &v3[..2], &ratio(1, 2)).unwrap();
        assert_eq!(half.cliques().unwrap().edge_count(), 32);
        assert!(matches!(slice_complex(&p, &v3[..1], &ratio(1, 2)), Err(Error::SubsetTooSmall { .. })));
        assert_eq!(slice_complex(&p, &[0], &ratio(1, 2)), Err(Error::SubsetOutOfClass(0)));
    }

    #[test]
    fn complete_complex_is_regular() {
        let p = complete(3, 2);
        let f = DensityFn::new(ratio(1, 2), 1);
        assert!(p.is_f_regular(&f, &[int(1)], &Caps::default()).unwrap().verdict);
    }
}
