//! Exact rationals used for ranks, dimensions, metrics and means.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Parses `"a/b"`, `"a"`, or a JSON-style decimal such as `"0.25"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches('-'), frac);
        let n: BigInt = digits.parse().map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let v = Q::new(n, d);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    Ok(Q::from_integer(n))
}

/// `"p/q"` text form; integers print without a denominator.
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

/// Exact rational value of a finite float.
pub fn from_f64(x: f64) -> Q {
    Q::from_float(x).expect("finite float")
}

/// Bracketing floats `lo <= sqrt(x) <= hi`, verified by exact squaring.
pub fn sqrt_bounds(x: &Q) -> (f64, f64) {
    assert!(!x.is_negative(), "square root of a negative rational");
    if x.is_zero() {
        return (0.0, 0.0);
    }
    let r = to_f64(x).sqrt();
    let mut lo = r;
    let mut hi = r;
    while lo > 0.0 && &(from_f64(lo) * from_f64(lo)) > x {
        lo = lo.next_down();
    }
    while &(from_f64(hi) * from_f64(hi)) < x {
        hi = hi.next_up();
    }
    (lo.max(0.0), hi)
}

/// Numerators over one shared denominator `L`, when `L` and every
/// numerator fit in `i64`.
pub fn common_scale<'a>(values: impl IntoIterator<Item = &'a Q>) -> Option<(Vec<i64>, i64)> {
    let parts: Vec<(i64, i64)> =
        values.into_iter().map(|v| Some((v.numer().to_i64()?, v.denom().to_i64()?))).collect::<Option<_>>()?;
    let mut l: i64 = 1;
    for &(_, d) in &parts {
        let g = l.gcd(&d);
        l = l.checked_mul(d / g)?;
    }
    let nums = parts.iter().map(|&(n, d)| n.checked_mul(l / d)).collect::<Option<_>>()?;
    Some((nums, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_q("1/2").unwrap(), q(1, 2));
        assert_eq!(parse_q("3").unwrap(), qi(3));
        assert_eq!(parse_q("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_q("-1.5").unwrap(), q(-3, 2));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn sqrt_bounds_bracket() {
        for (n, d) in [(1, 4), (2, 9), (1, 3), (7, 11), (1, 1)] {
            let x = q(n, d);
            let (lo, hi) = sqrt_bounds(&x);
            assert!(from_f64(lo) * from_f64(lo) <= x);
            assert!(from_f64(hi) * from_f64(hi) >= x);
            assert!(hi - lo < 1e-12);
        }
    }
}
