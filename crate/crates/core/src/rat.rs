//! Exact rationals.
//!
//! `Rat` is always kept in lowest terms with a positive denominator, so its
//! `Display` form is canonical: `"p/q"`, or `"p"` when `q = 1`, with the sign
//! carried by the numerator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn big(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// `n/d`, reduced. Panics on `d = 0`.
pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
            let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("{s}: zero denominator")));
            }
            Rat::new(n, d)
        }
        None => big(s.parse().map_err(|_| Error::Parse(s.to_string()))?),
    };
    Ok(parsed)
}

pub fn is_integral(x: &Rat) -> bool {
    x.denom().is_one()
}

/// The value as an `i64` when it is an integer in range.
pub fn to_i64(x: &Rat) -> Option<i64> {
    if is_integral(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn floor_i64(x: &Rat) -> i64 {
    x.floor().to_integer().to_i64().expect("floor out of i64 range")
}

pub fn ceil_i64(x: &Rat) -> i64 {
    x.ceil().to_integer().to_i64().expect("ceil out of i64 range")
}

pub fn denom_i64(x: &Rat) -> i64 {
    x.denom().to_i64().expect("denominator out of i64 range")
}

/// lcm of the denominators of an iterator of rationals (1 for an empty one).
pub fn lcm_denoms<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Largest integer `k` with `k <= sqrt(x)`, for `x >= 0`.
pub fn floor_sqrt(x: &Rat) -> BigInt {
    assert!(!x.is_negative(), "square root of a negative rational");
    // floor(sqrt(p/q)) = floor(sqrt(floor(p/q))) since sqrt is monotone and
    // jumps only at integers.
    x.floor().to_integer().sqrt()
}

/// A rational upper bound for `sqrt(x)`, accurate to `1/2^bits`.
pub fn sqrt_upper(x: &Rat, bits: u32) -> Rat {
    assert!(!x.is_negative(), "square root of a negative rational");
    let scale = BigInt::one() << bits;
    // sqrt(x) * 2^bits <= ceil(sqrt(ceil(x * 4^bits)))
    let scaled = (x * Rat::from_integer(&scale * &scale)).ceil().to_integer();
    let mut root = scaled.sqrt();
    if &root * &root < scaled {
        root += 1;
    }
    Rat::new(root, scale)
}

pub fn pow(x: &Rat, e: u32) -> Rat {
    num_traits::pow(x.clone(), e as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_display() {
        assert_eq!(frac(6, -4).to_string(), "-3/2");
        assert_eq!(frac(8, 4).to_string(), "2");
        assert_eq!(int(0).to_string(), "0");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["-2/9", "576", "0", "304819200/53678953"] {
            assert_eq!(parse_rat(s).unwrap().to_string(), s);
        }
        assert_eq!(parse_rat("4/6").unwrap(), frac(2, 3));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn sqrt_bounds() {
        assert_eq!(floor_sqrt(&frac(17, 1)), BigInt::from(4));
        assert_eq!(floor_sqrt(&frac(99, 4)), BigInt::from(4));
        let two = int(2);
        let up = sqrt_upper(&two, 20);
        assert!(&up * &up >= two);
        assert!(&up - frac(1, 1 << 19) < frac(14143, 10000));
        assert_eq!(sqrt_upper(&int(9), 4), int(3));
    }
}
