use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Values wider than this many bits stay symbolic.
pub const BUDGET_BITS: u64 = 1 << 20;

/// Exact non-negative integer or reciprocal of one, stored as a power-of-two tower.
///
/// Canonical forms for a budget `b`:
/// - `Int(n)` with `n < 2^{b+1}`;
/// - `Pow2 { exp, offset }` for `2^exp + offset ≥ 2^{b+1}`, with
///   `exp ≥ b+1` and `|offset| < 2^{b-2}`;
/// - `Recip(x)` for `1/x`, with `x ≥ 2` not a `Recip`.
///
/// Each value has exactly one canonical form, so equality is structural and
/// the order is decided by comparing exponents first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum TowerInt {
    Int(BigUint),
    Pow2 { exp: Box<TowerInt>, offset: BigInt },
    Recip(Box<TowerInt>),
}

impl From<u64> for TowerInt {
    fn from(n: u64) -> Self {
        TowerInt::Int(BigUint::from(n))
    }
}

impl TowerInt {
    pub fn zero() -> Self {
        TowerInt::from(0)
    }

    pub fn one() -> Self {
        TowerInt::from(1)
    }

    /// Canonical form of an integer under the default budget.
    pub fn from_biguint(n: BigUint) -> Self {
        Self::from_biguint_in(n, BUDGET_BITS).expect("integer too far from a power of two")
    }

    /// `2^exp` under the default budget.
    pub fn two_to(exp: &TowerInt) -> Option<Self> {
        exp.pow2_in(BUDGET_BITS)
    }

    pub fn is_int(&self) -> bool {
        matches!(self, TowerInt::Int(_))
    }

    pub fn is_recip(&self) -> bool {
        matches!(self, TowerInt::Recip(_))
    }

    pub fn as_biguint(&self) -> Option<&BigUint> {
        match self {
            TowerInt::Int(n) => Some(n),
            _ => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.as_biguint().and_then(|n| n.to_u64())
    }

    /// Number of nested `Pow2` nodes.
    pub fn depth(&self) -> usize {
        match self {
            TowerInt::Int(_) => 0,
            TowerInt::Pow2 { exp, .. } => 1 + exp.depth(),
            TowerInt::Recip(x) => x.depth(),
        }
    }

    /// `2^self` under the default budget.
    pub fn pow2(&self) -> Option<Self> {
        self.pow2_in(BUDGET_BITS)
    }

    /// `self + c` under the default budget; `None` if negative or unrepresentable.
    pub fn add_int(&self, c: &BigInt) -> Option<Self> {
        self.add_int_in(c, BUDGET_BITS)
    }

    /// Exact base-2 logarithm of a power of two.
    pub fn log2_exact(&self) -> Option<Self> {
        match self {
            TowerInt::Int(n) => {
                let tz = n.trailing_zeros()?;
                (n.bits() == tz + 1).then(|| TowerInt::from(tz))
            }
            TowerInt::Pow2 { exp, offset } if offset.is_zero() => Some((**exp).clone()),
            _ => None,
        }
    }

    /// `self / 2^j` for a power of two `self ≥ 2^j`.
    pub fn div_pow2(&self, j: u64) -> Option<Self> {
        let l = self.log2_exact()?;
        l.add_int(&-BigInt::from(j))?.pow2()
    }

    /// `self^m` for a power of two (or its reciprocal) and `m` a power of two or `self` an `Int`.
    pub fn powi(&self, m: u32) -> Option<Self> {
        match self {
            TowerInt::Recip(x) => x.powi(m)?.recip(),
            TowerInt::Int(n) => Self::from_biguint_in(n.pow(m), BUDGET_BITS),
            TowerInt::Pow2 { exp, offset } if offset.is_zero() && m.is_power_of_two() => {
                exp.add_int(&BigInt::from(m.trailing_zeros()))?.pow2()
            }
            _ => None,
        }
    }

    /// `1/self`; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        match self {
            TowerInt::Recip(x) => Some((**x).clone()),
            TowerInt::Int(n) if n.is_zero() => None,
            TowerInt::Int(n) if n.is_one() => Some(TowerInt::one()),
            _ => Some(TowerInt::Recip(Box::new(self.clone()))),
        }
    }

    /// Signed exact base-2 logarithm when it fits an integer.
    pub fn log2_signed(&self) -> Option<BigInt> {
        match self {
            TowerInt::Recip(x) => x.log2_signed().map(|l| -l),
            _ => Some(BigInt::from(self.log2_exact()?.as_biguint()?.clone())),
        }
    }

    /// Full value when its exponent is at most `max_bits`.
    pub fn to_biguint(&self, max_bits: u64) -> Option<BigUint> {
        match self {
            TowerInt::Int(n) => Some(n.clone()),
            TowerInt::Pow2 { exp, offset } => {
                let e = exp.to_biguint(max_bits)?.to_u64().filter(|&e| e <= max_bits)?;
                let v = BigInt::from(BigUint::one() << e) + offset;
                v.to_biguint()
            }
            TowerInt::Recip(_) => None,
        }
    }

    pub(crate) fn from_biguint_in(n: BigUint, budget: u64) -> Option<Self> {
        let bits = n.bits();
        if bits <= budget + 1 {
            return Some(TowerInt::Int(n));
        }
        let limit = BigUint::one() << (budget - 2);
        let e = bits - 1;
        let below = &n - (BigUint::one() << e);
        if below < limit {
            return Some(TowerInt::Pow2 { exp: Box::new(TowerInt::from(e)), offset: BigInt::from(below) });
        }
        let above = (BigUint::one() << (e + 1)) - &n;
        (above < limit).then(|| TowerInt::Pow2 { exp: Box::new(TowerInt::from(e + 1)), offset: -BigInt::from(above) })
    }

    pub(crate) fn pow2_in(&self, budget: u64) -> Option<Self> {
        match self {
            TowerInt::Int(e) => match e.to_u64() {
                Some(e) if e <= budget => Some(TowerInt::Int(BigUint::one() << e)),
                _ => Some(TowerInt::Pow2 { exp: Box::new(self.clone()), offset: BigInt::zero() }),
            },
            TowerInt::Pow2 { .. } => Some(TowerInt::Pow2 { exp: Box::new(self.clone()), offset: BigInt::zero() }),
            TowerInt::Recip(_) => None,
        }
    }

    pub(crate) fn add_int_in(&self, c: &BigInt, budget: u64) -> Option<Self> {
        match self {
            TowerInt::Int(n) => (BigInt::from(n.clone()) + c).to_biguint().and_then(|v| Self::from_biguint_in(v, budget)),
            TowerInt::Pow2 { exp, offset } => {
                let offset = offset + c;
                if offset.abs() >= BigInt::from(BigUint::one() << (budget - 2)) {
                    return None;
                }
                let boundary = TowerInt::from(budget + 1);
                if **exp == boundary && offset.sign() == Sign::Minus {
                    let v = BigInt::from(BigUint::one() << (budget + 1)) + offset;
                    return Some(TowerInt::Int(v.to_biguint()?));
                }
                Some(TowerInt::Pow2 { exp: exp.clone(), offset })
            }
            TowerInt::Recip(_) => None,
        }
    }
}

impl Ord for TowerInt {
    fn cmp(&self, other: &Self) -> Ordering {
        use TowerInt::*;
        match (self, other) {
            (Int(a), Int(b)) => a.cmp(b),
            (Int(_), Pow2 { .. }) => Ordering::Less,
            (Pow2 { .. }, Int(_)) => Ordering::Greater,
            (Pow2 { exp: x, offset: o }, Pow2 { exp: y, offset: p }) => x.cmp(y).then_with(|| o.cmp(p)),
            (Recip(a), Recip(b)) => b.cmp(a),
            (Recip(_), Int(n)) => {
                if n.is_zero() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            (Recip(_), Pow2 { .. }) => Ordering::Less,
            (Int(_), Recip(_)) | (Pow2 { .. }, Recip(_)) => other.cmp(self).reverse(),
        }
    }
}

impl PartialOrd for TowerInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Integers up to this many bits print in decimal.
const DECIMAL_BITS: u64 = 1024;

impl fmt::Display for TowerInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerInt::Int(n) if n.bits() <= DECIMAL_BITS => write!(f, "{n}"),
            TowerInt::Int(n) => match self.log2_exact() {
                Some(l) => write!(f, "2^{{{l}}}"),
                None => write!(f, "{n}"),
            },
            TowerInt::Pow2 { exp, offset } => {
                write!(f, "2^{{{exp}}}")?;
                match offset.sign() {
                    Sign::Plus => write!(f, " + {offset}"),
                    Sign::Minus => write!(f, " - {}", offset.abs()),
                    Sign::NoSign => Ok(()),
                }
            }
            TowerInt::Recip(x) => match x.log2_exact() {
                Some(l) => write!(f, "2^{{-{l}}}"),
                None => write!(f, "1/({x})"),
            },
        }
    }
}

impl fmt::Debug for TowerInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl TowerInt {
    pub fn to_expr_string(&self) -> String {
        format!("{self}")
    }
}
