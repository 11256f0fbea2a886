use crate::rational::{self, Rational};

/// `x ↦ c·(x/2)^e`, the only shape of density-regularity function needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityFn {
    pub coeff: Rational,
    pub exponent: u64,
}

impl DensityFn {
    pub fn new(coeff: Rational, exponent: u64) -> Self {
        DensityFn { coeff, exponent }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        &self.coeff * rational::pow(&(x * rational::half()), self.exponent)
    }

    /// `F_{k,γ}(x) = (γ³/12)·(x/2)^{2^{k+1}}`, the regularity needed by the
    /// dense counting lemma.
    pub fn dense_counting(k: u32, gamma: &Rational) -> Self {
        DensityFn::new(rational::pow(gamma, 3) * rational::ratio(1, 12), 1u64 << (k + 1))
    }

    /// `δ⁴·(x/2)^{2^{k+3}}`, the equitability assumed by the reduction to
    /// graph ⟨δ⟩-regularity.
    pub fn reduction(k: u32, delta: &Rational) -> Self {
        DensityFn::new(rational::pow(delta, 4), 1u64 << (k + 3))
    }

    /// `c·f` for a rational factor `c`.
    pub fn scaled(&self, c: &Rational) -> Self {
        DensityFn::new(&self.coeff * c, self.exponent)
    }
}
