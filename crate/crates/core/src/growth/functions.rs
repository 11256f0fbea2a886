use alloc::format;
use alloc::string::String;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use super::tower::TowerInt;
use crate::error::{Error, Result};

/// Largest argument for which `t` is expanded; beyond it only lower bounds are kept.
pub const T_CAP: u64 = 24;
/// Largest argument for which `A_k` is expanded recursively.
pub const A_CAP: u64 = 16;
/// Largest nesting of `Pow2` nodes produced while iterating `Ack_k`.
pub const DEPTH_CAP: usize = 64;
/// Largest iteration count attempted for `Ack_k`.
pub const ITER_CAP: u64 = 1 << 16;

/// A growth value: exact, or a named expression with an exact lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrowthValue {
    Exact(TowerInt),
    Bounded { expr: String, lower: TowerInt },
}

impl From<TowerInt> for GrowthValue {
    fn from(t: TowerInt) -> Self {
        GrowthValue::Exact(t)
    }
}

impl From<u64> for GrowthValue {
    fn from(n: u64) -> Self {
        GrowthValue::Exact(TowerInt::from(n))
    }
}

impl GrowthValue {
    pub fn exact(&self) -> Option<&TowerInt> {
        match self {
            GrowthValue::Exact(t) => Some(t),
            GrowthValue::Bounded { .. } => None,
        }
    }

    /// Exact value, or the proven lower bound.
    pub fn lower(&self) -> &TowerInt {
        match self {
            GrowthValue::Exact(t) => t,
            GrowthValue::Bounded { lower, .. } => lower,
        }
    }

    fn small(&self) -> Option<u64> {
        self.exact().and_then(TowerInt::to_u64)
    }

    fn bounded(expr: String, lower: TowerInt) -> Self {
        GrowthValue::Bounded { expr, lower }
    }

    /// Decides `self ≥ other` when the known bounds allow it.
    pub fn ge(&self, other: &GrowthValue) -> Option<bool> {
        match (self, other) {
            (GrowthValue::Exact(a), GrowthValue::Exact(b)) => Some(a >= b),
            (_, GrowthValue::Exact(b)) if self.lower() >= b => Some(true),
            (GrowthValue::Exact(a), GrowthValue::Bounded { lower, .. }) if a < lower => Some(false),
            _ => None,
        }
    }
}

impl fmt::Display for GrowthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthValue::Exact(t) => write!(f, "{t}"),
            GrowthValue::Bounded { expr, lower } => write!(f, "{expr} (≥ {lower})"),
        }
    }
}

fn symbolic_failure(what: &str) -> Error {
    Error::NonIntegerExponent(format!("{what} left the representable range"))
}

/// `e(i) = 2^{i+10}`.
pub fn e_fn(i: u64) -> TowerInt {
    TowerInt::from_biguint(BigUint::one() << (i + 10))
}

fn t_exact(i: u64) -> Result<TowerInt> {
    if i == 0 {
        return Err(Error::InvalidArgument("t is defined for i ≥ 1".into()));
    }
    let mut t = TowerInt::from_biguint(BigUint::one() << 200u32);
    for j in 1..i {
        let q = t
            .div_pow2(j + 10)
            .filter(|q| *q >= TowerInt::one())
            .ok_or_else(|| Error::NonIntegerExponent(format!("t({j})/e({j})")))?;
        t = q.pow2().ok_or_else(|| symbolic_failure("t"))?;
    }
    Ok(t)
}

/// `t(1) = 2^200`, `t(i+1) = 2^{t(i)/e(i)}`.
pub fn t_fn(i: u64) -> Result<GrowthValue> {
    t_of(&GrowthValue::from(i))
}

/// `t` at a possibly symbolic argument, using that `t` is increasing.
pub fn t_of(x: &GrowthValue) -> Result<GrowthValue> {
    match x.small() {
        Some(i) if i <= T_CAP => Ok(GrowthValue::Exact(t_exact(i)?)),
        _ => {
            let at = x.lower().to_u64().map_or(T_CAP, |l| l.min(T_CAP));
            Ok(GrowthValue::bounded(format!("t({x})"), t_exact(at)?))
        }
    }
}

/// `f*(i) = t(f(i))/e(i)` given the value `f(i) ≥ i`.
///
/// For a symbolic `i` the bound `t(f(i))/e(i) ≥ t(i)/e(i) ≥ t(i−1)` is used.
pub fn f_star(f_i: &GrowthValue, i: &GrowthValue) -> Result<GrowthValue> {
    let expr = || format!("t({f_i})/e({i})");
    match i.small() {
        Some(0) => Err(Error::InvalidArgument("f* is defined for i ≥ 1".into())),
        Some(i) if i < T_CAP => {
            let t = t_of(f_i)?;
            let div = |v: &TowerInt| {
                v.div_pow2(i + 10)
                    .filter(|q| *q >= TowerInt::one())
                    .ok_or_else(|| Error::NonIntegerExponent(format!("t({f_i})/e({i})")))
            };
            match &t {
                GrowthValue::Exact(v) => Ok(GrowthValue::Exact(div(v)?)),
                GrowthValue::Bounded { lower, .. } => Ok(GrowthValue::bounded(expr(), div(lower)?)),
            }
        }
        _ => {
            let at = i.lower().to_u64().map_or(T_CAP, |l| l.min(T_CAP + 1)) - 1;
            Ok(GrowthValue::bounded(expr(), t_exact(at.max(1))?))
        }
    }
}

/// `A_k(i)`: `A_2(i) = i`; for `k ≥ 3`, `A_k(1) = 2^{2^{3k+2}}` and
/// `A_k(i+1) = A_{k−1}(A_k*(i))`.
pub fn a_fn(k: u32, i: &GrowthValue) -> Result<GrowthValue> {
    if k < 2 {
        return Err(Error::InvalidArgument("A_k is defined for k ≥ 2".into()));
    }
    if k == 2 {
        return Ok(i.clone());
    }
    match i.small() {
        Some(0) => Err(Error::InvalidArgument("A_k is defined for i ≥ 1".into())),
        Some(1) => Ok(GrowthValue::Exact(a_base(k))),
        Some(j) if j <= A_CAP => {
            let prev = GrowthValue::from(j - 1);
            let star = f_star(&a_fn(k, &prev)?, &prev)?;
            let inner = a_fn(k - 1, &star)?;
            Ok(match inner {
                GrowthValue::Bounded { lower, .. } => GrowthValue::bounded(format!("A_{k}({j})"), lower),
                exact => exact,
            })
        }
        _ => {
            let lower = core::cmp::max(i.lower().clone(), a_base(k));
            Ok(GrowthValue::bounded(format!("A_{k}({i})"), lower))
        }
    }
}

fn a_base(k: u32) -> TowerInt {
    let exp = TowerInt::from_biguint(BigUint::one() << (3 * k as u64 + 2));
    TowerInt::two_to(&exp).expect("base case is representable")
}

/// `A_k*(i) = t(A_k(i))/e(i)`.
pub fn a_star(k: u32, i: &GrowthValue) -> Result<GrowthValue> {
    f_star(&a_fn(k, i)?, i)
}

/// `m_k(i) = A_2*(⋯(A_k*(i))⋯)`.
pub fn m_fn(k: u32, i: u64) -> Result<GrowthValue> {
    if k < 2 || i == 0 {
        return Err(Error::InvalidArgument("m_k(i) needs k ≥ 2 and i ≥ 1".into()));
    }
    let mut x = GrowthValue::from(i);
    for j in (2..=k).rev() {
        x = a_star(j, &x)?;
    }
    Ok(x)
}

/// `Ack_1(x) = 2^x`; `Ack_{k+1}(x)` is `Ack_k` composed `x` times, applied to 1.
pub fn ack(k: u32, x: &GrowthValue) -> Result<GrowthValue> {
    if k == 0 {
        return Err(Error::InvalidArgument("Ack_k is defined for k ≥ 1".into()));
    }
    if k == 1 {
        let lower = x.lower();
        let lifted = (lower.depth() < DEPTH_CAP).then(|| lower.pow2()).flatten();
        return Ok(match (x, lifted) {
            (GrowthValue::Exact(_), Some(v)) => GrowthValue::Exact(v),
            (_, Some(v)) => GrowthValue::bounded(format!("2^{{{x}}}"), v),
            (_, None) => GrowthValue::bounded(format!("2^{{{x}}}"), lower.add_int(&BigInt::one()).unwrap_or_else(|| lower.clone())),
        });
    }
    let (steps, exact) = match x.small() {
        Some(n) if n <= ITER_CAP => (n, true),
        _ => (x.lower().to_u64().map_or(ITER_CAP, |l| l.min(ITER_CAP)), false),
    };
    let mut y = GrowthValue::from(1);
    for _ in 0..steps {
        y = ack(k - 1, &y)?;
        if y.exact().is_none() {
            return Ok(GrowthValue::bounded(format!("Ack_{k}({x})"), y.lower().clone()));
        }
    }
    Ok(if exact { y } else { GrowthValue::bounded(format!("Ack_{k}({x})"), y.lower().clone()) })
}

fn recip_pow2_pow2(log_log: u64) -> TowerInt {
    let e = TowerInt::from_biguint(BigUint::one() << log_log);
    TowerInt::two_to(&e).and_then(|v| v.recip()).expect("representable")
}

/// `δ_k = 2^{−8^k}`.
pub fn delta_fn(k: u32) -> TowerInt {
    recip_pow2_pow2(3 * k as u64)
}

/// `α_k = 2^{−16^k}`.
pub fn alpha_fn(k: u32) -> TowerInt {
    recip_pow2_pow2(4 * k as u64)
}

/// `c = 2^{−32^k}`.
pub fn c_fn(k: u32) -> TowerInt {
    recip_pow2_pow2(5 * k as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn two_to(e: BigUint) -> TowerInt {
        TowerInt::two_to(&TowerInt::from_biguint(e)).unwrap()
    }

    #[test]
    fn ack_small_values() {
        let v = |k, x: u64| ack(k, &GrowthValue::from(x)).unwrap();
        assert_eq!(v(1, 3), GrowthValue::from(8));
        assert_eq!(v(2, 3), GrowthValue::from(16));
        assert_eq!(v(2, 4), GrowthValue::from(65536));
        assert_eq!(v(3, 3), GrowthValue::from(65536));
        assert_eq!(v(2, 0), GrowthValue::from(1));
        assert_eq!(v(2, 5).exact().unwrap(), &two_to(BigUint::from(65536u32)));
        assert!(v(3, 4).exact().is_none());
        assert!(v(3, 4).lower() > v(2, 5).lower());
    }

    #[test]
    fn t_values() {
        assert_eq!(t_fn(1).unwrap(), GrowthValue::Exact(two_to(BigUint::from(200u32))));
        let t2 = TowerInt::two_to(&TowerInt::from_biguint(BigUint::one() << 189u32)).unwrap();
        assert_eq!(t_fn(2).unwrap(), GrowthValue::Exact(t2));
        assert_eq!(e_fn(1), TowerInt::from(2048));
        assert!(t_fn(T_CAP + 1).unwrap().exact().is_none());
        assert!(matches!(t_fn(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn f_star_identity() {
        let one = GrowthValue::from(1);
        let s = f_star(&one, &one).unwrap();
        assert_eq!(s, GrowthValue::Exact(TowerInt::from_biguint(BigUint::one() << 189u32)));
        assert_eq!(a_star(2, &one).unwrap(), s);
        assert_eq!(m_fn(2, 1).unwrap(), s);
    }

    #[test]
    fn a_values() {
        for i in 1..=10 {
            assert_eq!(a_fn(2, &GrowthValue::from(i)).unwrap(), GrowthValue::from(i));
        }
        assert_eq!(a_fn(3, &GrowthValue::from(1)).unwrap(), GrowthValue::Exact(two_to(BigUint::from(2048u32))));
        let a32 = a_fn(3, &GrowthValue::from(2)).unwrap();
        assert!(a32.exact().is_none());
        assert!(a32.ge(&GrowthValue::from(4)).unwrap());
        assert!(m_fn(3, 1).unwrap().exact().is_none());
    }

    #[test]
    fn deltas() {
        assert_eq!(delta_fn(1).to_string(), "2^{-8}");
        assert_eq!(delta_fn(2).log2_signed(), Some(BigInt::from(-64)));
        assert_eq!(delta_fn(3).log2_signed(), Some(BigInt::from(-512)));
        assert_eq!(alpha_fn(1).log2_signed(), Some(BigInt::from(-16)));
        assert_eq!(c_fn(1).log2_signed(), Some(BigInt::from(-32)));
    }
}
