use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Source of successively refined edge equipartitions `G_1 ≻ ⋯ ≻ G_s` of
/// `L × R` with `|G_j| = 2^j`, given refinement chains of both sides.
///
/// Pairs `(a, b)` of `L × R` are numbered `a·|R| + b`; chain partitions are
/// over side indices. The chains have length `s`.
pub trait CorePartitionProvider {
    fn provide(&mut self, left_len: usize, right_len: usize, left_chain: &[Partition], right_chain: &[Partition]) -> Result<Vec<Partition>>;

    /// Whether outputs carry the lower-bound guarantee of the genuine construction.
    fn certifies_hardness(&self) -> bool {
        false
    }
}

/// Structural stand-in: `G_1` halves `L × R` at random and every later level
/// halves each part at random. It ignores the side chains.
#[derive(Debug, Clone)]
pub struct StubProvider {
    rng: ChaCha8Rng,
}

impl StubProvider {
    pub fn new(seed: u64) -> Self {
        StubProvider { rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl CorePartitionProvider for StubProvider {
    fn provide(&mut self, left_len: usize, right_len: usize, left_chain: &[Partition], right_chain: &[Partition]) -> Result<Vec<Partition>> {
        let s = left_chain.len();
        if right_chain.len() != s {
            return Err(Error::InvalidArgument(format!("side chains have lengths {s} and {}", right_chain.len())));
        }
        let total = left_len * right_len;
        if s >= usize::BITS as usize || !total.is_multiple_of(1usize << s) {
            return Err(Error::Divisibility(total, s));
        }
        let mut parts: Vec<Vec<u32>> = alloc::vec![(0..total as u32).collect()];
        let mut out = Vec::with_capacity(s);
        for _ in 0..s {
            parts = parts
                .into_iter()
                .flat_map(|mut p| {
                    p.shuffle(&mut self.rng);
                    let back = p.split_off(p.len() / 2);
                    [p, back]
                })
                .collect();
            out.push(Partition::new(total, parts.clone())?);
        }
        Ok(out)
    }
}

/// Checks the provider contract: `s` levels over all of `L × R`, level `j`
/// an equipartition into `2^j` parts of density `2^{−j}`, each level refining
/// the previous one.
pub fn check_provider_output(out: &[Partition], left_len: usize, right_len: usize, s: usize) -> Result<()> {
    let total = left_len * right_len;
    let fail = |msg: alloc::string::String| Err(Error::AssertionFailed(msg));
    if out.len() != s {
        return fail(format!("provider returned {} levels, expected {s}", out.len()));
    }
    for (j, g) in out.iter().enumerate() {
        let level = j + 1;
        if g.universe() != total || g.ground_size() != total {
            return fail(format!("level {level} does not cover all {total} pairs"));
        }
        if g.len() != 1 << level {
            return fail(format!("level {level} has {} parts, expected {}", g.len(), 1usize << level));
        }
        if g.sizes().iter().any(|&sz| sz << level != total) {
            return fail(format!("level {level} is not an equipartition of density 2^-{level}"));
        }
        if j > 0 && !g.refines(&out[j - 1])? {
            return fail(format!("level {level} does not refine level {j}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stub_halves() {
        let chain = alloc::vec![Partition::whole(4); 3];
        let mut p = StubProvider::new(1);
        let out = p.provide(4, 4, &chain[..1], &chain[..1]).unwrap();
        assert_eq!(out[0].sizes(), [8, 8]);
        let out = p.provide(4, 4, &chain, &chain).unwrap();
        check_provider_output(&out, 4, 4, 3).unwrap();
        assert!(!p.certifies_hardness());
        let odd = alloc::vec![Partition::whole(3); 1];
        assert!(matches!(p.provide(3, 1, &odd, &odd[..1]), Err(Error::Divisibility(3, 1))));
    }
}
