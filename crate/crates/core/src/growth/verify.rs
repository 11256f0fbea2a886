use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::functions::{a_fn, ack, delta_fn, f_star, m_fn, t_fn, GrowthValue};
use super::tower::TowerInt;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The stored lower bounds are not strong enough to decide.
    Undecided,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Undecided => "undecided",
        }
    }

    fn from_decision(d: Option<bool>) -> Self {
        match d {
            Some(true) => CheckStatus::Pass,
            Some(false) => CheckStatus::Fail,
            None => CheckStatus::Undecided,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityCheck {
    pub name: &'static str,
    pub k: Option<u32>,
    pub i: Option<u64>,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InequalityReport {
    pub checks: Vec<InequalityCheck>,
}

impl InequalityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &InequalityCheck> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }

    pub fn named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a InequalityCheck> {
        self.checks.iter().filter(move |c| c.name == name)
    }

    fn push(&mut self, name: &'static str, k: Option<u32>, i: Option<u64>, status: CheckStatus, detail: String) {
        self.checks.push(InequalityCheck { name, k, i, status, detail });
    }
}

fn log2_int(t: &TowerInt) -> Option<BigInt> {
    t.log2_signed()
}

/// Checks every recorded inequality among the growth functions for
/// `1 ≤ i ≤ i_max` and `2 ≤ k ≤ k_max`.
///
/// `A_k(i) ≥ Ack_k(i)` is checked for `i ≤ 3`. `f*(i) ≥ f(i)` is checked for
/// `f` the identity and for `f = A_k` at `i = 1`; for larger `i` both sides
/// of the latter are symbolic. `A_k(i+1) ≥ A_k(i)` is listed only where
/// decided.
pub fn verify_inequalities(k_max: u32, i_max: u64) -> Result<InequalityReport> {
    let mut r = InequalityReport::default();
    let two = BigInt::from(2);

    for i in 2..=i_max {
        let (cur, prev) = (t_fn(i)?, t_fn(i - 1)?);
        let status = match (cur.exact().and_then(log2_int_tower), prev.exact().and_then(log2_int_tower)) {
            (Some(lc), Some(lp)) => CheckStatus::from_decision(lp.add_int(&two).map(|lp4| lc >= lp4)),
            _ => CheckStatus::Undecided,
        };
        r.push("t-monotone", None, Some(i), status, format!("t({i}) = {cur} vs 4·t({}) = 4·{prev}", i - 1));
    }
    for i in 1..=i_max {
        let s = f_star(&GrowthValue::from(i), &GrowthValue::from(i));
        let status = match &s {
            Ok(GrowthValue::Exact(v)) => CheckStatus::from_decision(Some(v.log2_exact().is_some() && *v >= TowerInt::one())),
            Ok(_) => CheckStatus::Undecided,
            Err(_) => CheckStatus::Fail,
        };
        r.push("t-over-e-integral", None, Some(i), status, format!("t({i})/e({i}) = {}", show(&s)));
    }
    for i in 1..=i_max {
        let fi = GrowthValue::from(i);
        let s = f_star(&fi, &fi)?;
        r.push("f-star-dominates", Some(2), Some(i), CheckStatus::from_decision(s.ge(&fi)), format!("f = id: {s} ≥ {i}"));
    }
    for k in 3..=k_max {
        {
            let i = 1;
            let arg = GrowthValue::from(i);
            let fi = a_fn(k, &arg)?;
            let s = f_star(&fi, &arg)?;
            let status = CheckStatus::from_decision(s.ge(&fi));
            r.push("f-star-dominates", Some(k), Some(i), status, format!("f = A_{k}: {s} ≥ {fi}"));
        }
    }
    for k in 2..=k_max {
        for i in 1..=i_max.min(3) {
            let arg = GrowthValue::from(i);
            let (a, b) = (a_fn(k, &arg)?, ack(k, &arg)?);
            r.push("a-dominates-ack", Some(k), Some(i), CheckStatus::from_decision(a.ge(&b)), format!("A_{k}({i}) = {a} vs Ack_{k}({i}) = {b}"));
        }
    }
    for k in 2..=k_max {
        for i in 1..i_max {
            let (a, b) = (a_fn(k, &GrowthValue::from(i))?, a_fn(k, &GrowthValue::from(i + 1))?);
            let status = CheckStatus::from_decision(b.ge(&a));
            if status != CheckStatus::Undecided {
                r.push("a-monotone", Some(k), Some(i), status, format!("A_{k}({}) = {b} ≥ A_{k}({i}) = {a}", i + 1));
            }
        }
    }
    for k in 3..=k_max {
        let a = a_fn(k, &GrowthValue::from(1))?;
        let d4 = delta_fn(k).recip().and_then(|d| d.powi(4));
        let status = CheckStatus::from_decision(Some(d4.as_ref() == a.exact()));
        r.push("a-base-is-delta-power", Some(k), Some(1), status, format!("A_{k}(1) = {a}, δ_{k}^-4 = {}", d4.map(|d| d.to_expr_string()).unwrap_or_default()));
    }
    for k in 3..=k_max {
        let (dk, dk1) = (delta_log2(k), delta_log2(k - 1));
        let quarter = BigRational::new(dk.clone(), BigInt::from(4));
        let mid = BigRational::from_integer(&dk1 * 2);
        let rhs = BigRational::from_integer(BigInt::from(-64) + &dk1);
        let ok = quarter == mid && mid <= rhs && delta_log2(2) == BigInt::from(-64);
        r.push("delta-bound", Some(k), None, CheckStatus::from_decision(Some(ok)), format!("log2: {quarter} = {mid} ≤ {rhs}"));
    }
    for k in 3..=k_max {
        let a1 = a_fn(k, &GrowthValue::from(1))?;
        let la = a1.exact().and_then(log2_int);
        let (dk, dk1) = (delta_log2(k), delta_log2(k - 1));
        let status = match la {
            Some(la) => {
                let lhs = -BigRational::new(la, BigInt::from(6));
                let half = BigRational::new(dk.clone(), two.clone());
                let fourth = BigRational::from_integer(&dk1 * 4);
                let rhs = BigRational::from_integer(BigInt::from(-24) + &dk1);
                let parity = (&dk % &two).is_zero();
                CheckStatus::from_decision(Some(parity && lhs <= half && half == fourth && fourth <= rhs && delta_log2(1) * 3 == BigInt::from(-24)))
            }
            None => CheckStatus::Undecided,
        };
        r.push("t1-bound", Some(k), None, status, format!("log2 A_{k}(1) = {}, log2 δ_{k} = {dk}", a1));
    }
    for i in 1..=i_max {
        let m = m_fn(2, i)?;
        let target = GrowthValue::from(i + 1);
        r.push("m-lower", Some(2), Some(i), CheckStatus::from_decision(m.ge(&target)), format!("m_2({i}) = {m} ≥ {}", i + 1));
    }
    Ok(r)
}

fn log2_int_tower(t: &TowerInt) -> Option<TowerInt> {
    t.log2_exact()
}

fn delta_log2(k: u32) -> BigInt {
    log2_int(&delta_fn(k)).expect("δ_k is a power of two")
}

fn show(v: &Result<GrowthValue>) -> String {
    match v {
        Ok(v) => format!("{v}"),
        Err(e) => format!("error: {e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_shape() {
        let r = verify_inequalities(3, 3).unwrap();
        for name in ["t-monotone", "t-over-e-integral", "f-star-dominates", "delta-bound", "t1-bound", "m-lower", "a-base-is-delta-power"] {
            let mut it = r.named(name).peekable();
            assert!(it.peek().is_some(), "{name}");
            assert!(it.all(|c| c.status == CheckStatus::Pass), "{name}");
        }
        let dominance: Vec<_> = r.named("a-dominates-ack").collect();
        assert_eq!(dominance.len(), 6);
        for c in dominance {
            let expected = if c.k == Some(2) { CheckStatus::Fail } else { CheckStatus::Pass };
            assert_eq!(c.status, expected, "{}", c.detail);
        }
    }
}
