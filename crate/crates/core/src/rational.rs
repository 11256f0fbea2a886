//! Exact rational helpers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: usize) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn half() -> Rational {
    ratio(1, 2)
}

/// `count / total` with `0/0 = 0`.
pub fn frac(count: usize, total: usize) -> Rational {
    if total == 0 {
        Rational::zero()
    } else {
        Rational::new(BigInt::from(count), BigInt::from(total))
    }
}

/// Smallest integer `m` with `m ≥ x·size`, clamped below at 0.
pub fn ceil_times(x: &Rational, size: usize) -> usize {
    let v = (x * int(size)).ceil();
    if v.is_negative() {
        0
    } else {
        v.to_integer().to_usize().unwrap_or(usize::MAX)
    }
}

/// Smallest integer `m ≥ 0` with `m ≥ c·√x·size` for `x ≥ 0`, `c ≥ 0`.
///
/// Equivalent to the least `m` with `m² ≥ c²·x·size²`, computed without
/// leaving the rationals.
pub fn ceil_sqrt_times(c: &Rational, x: &Rational, size: usize) -> usize {
    let target = c * c * x * int(size) * int(size);
    if !target.is_positive() {
        return 0;
    }
    // m = ceil(sqrt(p/q)) is the least m with m²·q ≥ p.
    let p = target.numer().magnitude().clone();
    let q = target.denom().magnitude().clone();
    let approx = (&p / &q).sqrt();
    let mut m = approx;
    while &m * &m * &q < p {
        m += BigUint::one();
    }
    m.to_usize().unwrap_or(usize::MAX)
}

/// Exact `n choose k` as a big integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Elementary symmetric polynomial `e_k(sizes)`: the number of k-sets that
/// meet each class at most once.
pub fn elementary_symmetric(sizes: &[usize], k: usize) -> BigUint {
    let mut e = alloc::vec![BigUint::zero(); k + 1];
    e[0] = BigUint::one();
    for &s in sizes {
        for j in (1..=k).rev() {
            let add = &e[j - 1] * BigUint::from(s);
            e[j] += add;
        }
    }
    e.swap_remove(k)
}

pub fn is_integral(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn floor_usize(x: &Rational) -> usize {
    x.floor().to_integer().to_usize().unwrap_or(0)
}

/// `x^e` for a non-negative integer exponent.
pub fn pow(x: &Rational, e: u64) -> Rational {
    let mut base = x.clone();
    let mut acc = Rational::one();
    let mut e = e;
    while e > 0 {
        if e.is_odd() {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_times_is_literal() {
        assert_eq!(ceil_times(&ratio(1, 2), 4), 2);
        assert_eq!(ceil_times(&ratio(1, 2), 5), 3);
        assert_eq!(ceil_times(&ratio(1, 4), 6), 2);
        assert_eq!(ceil_times(&ratio(1, 1), 7), 7);
    }

    #[test]
    fn ceil_sqrt() {
        // 2·√(1/16)·8 = 4
        assert_eq!(ceil_sqrt_times(&int(2), &ratio(1, 16), 8), 4);
        // 2·√(1/8)·4 = 2.828.. -> 3
        assert_eq!(ceil_sqrt_times(&int(2), &ratio(1, 8), 4), 3);
        assert_eq!(ceil_sqrt_times(&int(2), &Rational::zero(), 4), 0);
    }

    #[test]
    fn symmetric_counts() {
        assert_eq!(elementary_symmetric(&[2, 2, 2], 3), BigUint::from(8u32));
        assert_eq!(elementary_symmetric(&[2, 3, 4], 2), BigUint::from(26u32));
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
    }
}
