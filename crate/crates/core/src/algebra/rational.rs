//! Helpers around `BigRational`: construction, the `"p/q"` string format,
//! and exact square roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Formats as `"p/q"`; integers keep the explicit `/1`.
pub fn to_pq(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Compact human form: `3`, `-2/5`.
pub fn to_short(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Accepts `"p/q"`, `"p"`, and optional surrounding whitespace.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

fn int_sqrt_exact(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

/// Exact square root when `r` is the square of a rational.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    let n = int_sqrt_exact(r.numer())?;
    let d = int_sqrt_exact(r.denom())?;
    Some(BigRational::new(n, d))
}

pub fn lcm_of_denominators<'a>(it: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

pub fn to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Binomial coefficient; small arguments only.
pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational(" -7 ").unwrap(), int(-7));
        assert_eq!(to_pq(&int(5)), "5/1");
        assert_eq!(to_short(&rat(-2, 4)), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn canonical_zero() {
        let z = parse_rational("0/7").unwrap();
        assert_eq!(z.denom(), &BigInt::one());
    }

    #[test]
    fn sqrt_of_squares() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&int(3)), None);
        assert_eq!(rational_sqrt(&int(-4)), None);
        assert_eq!(rational_sqrt(&int(0)), Some(int(0)));
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(6, 3), 20);
        assert_eq!(binom(5, 0), 1);
        assert_eq!(binom(3, 4), 0);
    }
}
