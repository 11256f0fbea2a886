use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

const ABSENT: u32 = u32::MAX;

/// A partition of a ground set of ids inside `0..universe` into non-empty
/// disjoint parts. Parts keep the order they were given in; elements in a
/// part are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    part_of: Vec<u32>,
    parts: Vec<Vec<u32>>,
}

/// A partition of the vertex set of a layout.
pub type VertexPartition = Partition;

impl Partition {
    pub fn new(universe: usize, parts: Vec<Vec<u32>>) -> Result<Self> {
        let mut part_of = vec![ABSENT; universe];
        let mut out = Vec::with_capacity(parts.len());
        for (pi, mut part) in parts.into_iter().enumerate() {
            if part.is_empty() {
                return Err(Error::InvalidPartition(format!("part {pi} is empty")));
            }
            part.sort_unstable();
            for &x in &part {
                let slot = part_of
                    .get_mut(x as usize)
                    .ok_or_else(|| Error::InvalidPartition(format!("element {x} outside universe {universe}")))?;
                if *slot != ABSENT {
                    return Err(Error::InvalidPartition(format!("element {x} is in two parts")));
                }
                *slot = pi as u32;
            }
            out.push(part);
        }
        Ok(Partition { part_of, parts: out })
    }

    /// Parts from a label per element of `0..labels.len()`, numbered by first
    /// occurrence.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut ids: Vec<Option<usize>> = Vec::new();
        let mut parts: Vec<Vec<u32>> = Vec::new();
        for (x, &l) in labels.iter().enumerate() {
            if ids.len() <= l {
                ids.resize(l + 1, None);
            }
            let id = *ids[l].get_or_insert_with(|| {
                parts.push(Vec::new());
                parts.len() - 1
            });
            parts[id].push(x as u32);
        }
        Partition::new(labels.len(), parts).expect("labels give a partition")
    }

    /// Every element of `0..n` alone.
    pub fn singletons(n: usize) -> Self {
        Partition::new(n, (0..n as u32).map(|x| vec![x]).collect()).unwrap()
    }

    /// One part holding `0..n` (`n ≥ 1`).
    pub fn whole(n: usize) -> Self {
        Partition::new(n, vec![(0..n as u32).collect()]).unwrap()
    }

    pub fn universe(&self) -> usize {
        self.part_of.len()
    }

    /// Number of covered elements.
    pub fn ground_size(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, i: usize) -> &[u32] {
        &self.parts[i]
    }

    pub fn parts(&self) -> &[Vec<u32>] {
        &self.parts
    }

    pub fn part_of(&self, x: u32) -> Option<usize> {
        match self.part_of.get(x as usize) {
            Some(&p) if p != ABSENT => Some(p as usize),
            _ => None,
        }
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    fn same_ground(&self, other: &Partition) -> Result<()> {
        let covered = |p: &Partition| p.part_of.iter().map(|&x| x != ABSENT).collect::<Vec<_>>();
        if self.universe() != other.universe() || covered(self) != covered(other) {
            return Err(Error::UniverseMismatch(self.ground_size(), other.ground_size()));
        }
        Ok(())
    }

    /// `self ≺ p`: every part of `self` lies inside a part of `p`.
    pub fn refines(&self, p: &Partition) -> Result<bool> {
        self.same_ground(p)?;
        Ok(self.parts.iter().all(|q| {
            let target = p.part_of(q[0]);
            q.iter().all(|&x| p.part_of(x) == target)
        }))
    }

    /// Part sizes differ by at most one.
    pub fn is_equitable(&self) -> bool {
        let min = self.parts.iter().map(Vec::len).min().unwrap_or(0);
        let max = self.parts.iter().map(Vec::len).max().unwrap_or(0);
        max - min <= 1
    }

    /// `|Q ∩ P|` for every part `P` of `p`, `Q` being part `qi` of `self`.
    fn intersections(&self, qi: usize, p: &Partition) -> Vec<usize> {
        let mut counts = vec![0; p.len()];
        for &x in &self.parts[qi] {
            counts[p.part_of(x).unwrap()] += 1;
        }
        counts
    }

    /// `self ≺_β p`: the parts `Q` of `self` that are not β-contained in any
    /// part of `p` (`|Q ∖ P| ≤ β|Q|`) have total size at most `β·n`.
    pub fn approx_refines(&self, p: &Partition, beta: &Rational) -> Result<ApproxRefineReport> {
        self.same_ground(p)?;
        let mut assignment = Vec::with_capacity(self.len());
        let mut bad_mass = 0;
        for (qi, q) in self.parts.iter().enumerate() {
            let counts = self.intersections(qi, p);
            // The best candidate has the largest intersection; ties go to the
            // lowest part id.
            let (best, &inter) = counts.iter().enumerate().rev().max_by_key(|(_, &c)| c).unwrap();
            let outside = q.len() - inter;
            if rational::int(outside) <= beta * rational::int(q.len()) {
                assignment.push(Some(best));
            } else {
                assignment.push(None);
                bad_mass += q.len();
            }
        }
        let verdict = rational::int(bad_mass) <= beta * rational::int(self.ground_size());
        Ok(ApproxRefineReport { verdict, bad_mass, assignment })
    }

    /// For `self ≺_{1/2} p` with `p` equitable, checks `|self| ≥ ½|p|`.
    pub fn refinement_size_bound(&self, p: &Partition) -> Result<bool> {
        if !p.is_equitable() {
            return Err(Error::PreconditionUnmet("the coarse partition is not equitable".into()));
        }
        if !self.approx_refines(p, &rational::half())?.verdict {
            return Err(Error::PreconditionUnmet("the partition is not a 1/2-approximate refinement".into()));
        }
        Ok(2 * self.len() >= p.len())
    }

    /// For `self ≺_δ p`: a part `P*` of `p` and the union `Q*` of the parts
    /// of `self` that are δ-contained in it, chosen to minimise
    /// `|P* △ Q*| / |P*|` (lowest id on ties). The ratio is then at most 3δ.
    pub fn best_union_approx(&self, p: &Partition, delta: &Rational) -> Result<BestUnion> {
        let report = self.approx_refines(p, delta)?;
        if !report.verdict {
            return Err(Error::PreconditionUnmet("the partition is not a δ-approximate refinement".into()));
        }
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); p.len()];
        for (qi, a) in report.assignment.iter().enumerate() {
            if let Some(pi) = a {
                members[*pi].push(qi);
            }
        }
        let mut best: Option<BestUnion> = None;
        for (pi, qs) in members.into_iter().enumerate() {
            let inside: usize = qs.iter().map(|&qi| self.intersections(qi, p)[pi]).sum();
            let union_size: usize = qs.iter().map(|&qi| self.parts[qi].len()).sum();
            let sym_diff = (p.parts[pi].len() - inside) + (union_size - inside);
            let cand = BestUnion { part: pi, union_parts: qs, sym_diff };
            let better = match &best {
                None => true,
                Some(b) => cand.ratio(p) < b.ratio(p),
            };
            if better {
                best = Some(cand);
            }
        }
        let best = best.ok_or_else(|| Error::PreconditionUnmet("empty partition".into()))?;
        if best.ratio(p) > rational::int(3) * delta {
            return Err(Error::AssertionFailed(format!(
                "|P △ Q| = {} exceeds 3δ|P| for the best part {}",
                best.sym_diff, best.part
            )));
        }
        Ok(best)
    }
}

/// Outcome of an approximate refinement check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxRefineReport {
    pub verdict: bool,
    /// Total size of the parts not β-contained in any coarse part.
    pub bad_mass: usize,
    /// Coarse part each fine part is β-contained in, if any.
    pub assignment: Vec<Option<usize>>,
}

/// A coarse part and the union of fine parts approximating it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestUnion {
    pub part: usize,
    pub union_parts: Vec<usize>,
    pub sym_diff: usize,
}

impl BestUnion {
    fn ratio(&self, p: &Partition) -> Rational {
        rational::frac(self.sym_diff, p.part(self.part).len())
    }
}
