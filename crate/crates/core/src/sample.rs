//! Exact random choices driven by a seeded generator.

use num_traits::ToPrimitive;
use rand::Rng;

use crate::rational::Rational;

/// `true` with probability exactly `p` (clamped to `[0, 1]`). The
/// denominator of `p` must fit in a `u64`.
pub fn bernoulli<R: Rng + ?Sized>(rng: &mut R, p: &Rational) -> bool {
    let num = p.numer().to_i128().unwrap_or(0);
    let den = p.denom().to_u64().expect("denominator fits in u64");
    if num <= 0 {
        return false;
    }
    if num as u128 >= den as u128 {
        return true;
    }
    rng.random_range(0..den) < num as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use rand::SeedableRng;

    #[test]
    fn frequencies() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let hits = (0..10_000).filter(|_| bernoulli(&mut rng, &ratio(1, 4))).count();
        assert!((2300..2700).contains(&hits), "{hits}");
        assert!(!bernoulli(&mut rng, &ratio(0, 1)));
        assert!(bernoulli(&mut rng, &ratio(1, 1)));
    }
}
