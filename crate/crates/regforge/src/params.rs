//! Command-line values: exact rationals, index ranges and enumeration caps.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::Zero;
use regforge_core::limits::Caps;
use regforge_core::Rational;

use crate::error::CliError;

/// Environment variable overriding the exact-enumeration caps.
pub const CAP_ENV: &str = "REGFORGE_CAP_BITS";

/// Parses `p/q` or an integer `p`. Decimal and exponent notation is rejected.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let valid = |t: &str| {
        let digits = t.strip_prefix('-').unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num) || !valid(den) {
        return Err(format!("`{s}` is not an exact rational; write it as p/q"));
    }
    let n: BigInt = num.parse().map_err(|e| format!("`{s}`: {e}"))?;
    let d: BigInt = den.parse().map_err(|e| format!("`{s}`: {e}"))?;
    if d.is_zero() {
        return Err(format!("`{s}` has a zero denominator"));
    }
    Ok(Rational::new(n, d))
}

/// A comma-separated list of rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>, String> {
    s.split(',').map(parse_rational).collect()
}

/// `a..b` or `a..=b` (both inclusive), or a single index `a`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let s = s.trim();
    let parse = |t: &str| t.trim().parse::<u64>().map_err(|e| format!("`{t}` in range `{s}`: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok(lo..=hi)
}

/// Default caps, with the pair and sub-polyad enumeration caps replaced by
/// the value of [`CAP_ENV`] when it is set.
pub fn caps_from_env() -> Result<Caps, CliError> {
    caps_from(std::env::var(CAP_ENV).ok().as_deref())
}

pub fn caps_from(value: Option<&str>) -> Result<Caps, CliError> {
    let mut caps = Caps::default();
    if let Some(v) = value {
        let n: usize = v.trim().parse().map_err(|_| CliError::Input(format!("{CAP_ENV}=`{v}` is not a non-negative integer")))?;
        caps.pair_sides = n;
        caps.polyad_edges = n.min(63);
    }
    Ok(caps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use regforge_core::rational::ratio;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/4"), Ok(ratio(1, 4)));
        assert_eq!(parse_rational("2/4"), Ok(ratio(1, 2)));
        assert_eq!(parse_rational("3"), Ok(ratio(3, 1)));
        assert_eq!(parse_rational(" -1/3 "), Ok(ratio(-1, 3)));
        for bad in ["0.25", "1e-2", "1/0", "", "/2", "a/b", "1/2/3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..3"), Ok(1..=3));
        assert_eq!(parse_range("1..=3"), Ok(1..=3));
        assert_eq!(parse_range("5"), Ok(5..=5));
        assert!(parse_range("3..1").is_err());
    }

    #[test]
    fn caps_override() {
        assert_eq!(caps_from(None).unwrap(), Caps::default());
        let c = caps_from(Some("12")).unwrap();
        assert_eq!((c.pair_sides, c.polyad_edges), (12, 12));
        assert!(caps_from(Some("many")).is_err());
    }
}
