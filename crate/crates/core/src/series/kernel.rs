//! Truncated two-variable convolution over exact rationals.
//!
//! Coefficients are cleared to integer numerators over one common denominator
//! per operand. Products are accumulated in `i128` when a bit-length bound
//! shows no overflow is possible, and in `BigInt` otherwise.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::rat::{lcm_denoms, Rat};

pub(crate) type Key = (i64, i64);

struct Cleared {
    /// `(t, r, numerator)` sorted by `t`.
    terms: Vec<(i64, i64, BigInt)>,
    denom: BigInt,
    max_bits: u64,
}

fn clear<'a>(terms: impl Iterator<Item = (Key, &'a Rat)> + Clone) -> Cleared {
    let denom = lcm_denoms(terms.clone().map(|(_, c)| c));
    let mut out: Vec<(i64, i64, BigInt)> = terms
        .map(|((t, r), c)| (t, r, c.numer() * (&denom / c.denom())))
        .collect();
    out.sort_by_key(|&(t, r, _)| (t, r));
    let max_bits = out.iter().map(|(_, _, n)| n.bits()).max().unwrap_or(0);
    Cleared {
        terms: out,
        denom,
        max_bits,
    }
}

/// All products `a_i b_j` with `t_i + t_j < prec`, summed by key.
pub(crate) fn convolve<'a, 'b>(
    a: impl Iterator<Item = (Key, &'a Rat)> + Clone,
    b: impl Iterator<Item = (Key, &'b Rat)> + Clone,
    prec: i64,
) -> BTreeMap<Key, Rat> {
    let a = clear(a);
    let b = clear(b);
    let denom = &a.denom * &b.denom;
    let n = a.terms.len().min(b.terms.len()).max(1) as u64;
    let bound = a.max_bits + b.max_bits + 64 - n.leading_zeros() as u64;
    let sums: Vec<(Key, BigInt)> = if bound <= 126 {
        convolve_small(&a, &b, prec)
    } else {
        convolve_big(&a, &b, prec)
    };
    sums.into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| (k, Rat::new(v, denom.clone())))
        .collect()
}

fn convolve_small(a: &Cleared, b: &Cleared, prec: i64) -> Vec<(Key, BigInt)> {
    let bs: Vec<(i64, i64, i128)> = b
        .terms
        .iter()
        .map(|(t, r, n)| (*t, *r, n.to_i128().unwrap()))
        .collect();
    let mut acc: HashMap<Key, i128> = HashMap::new();
    for (ta, ra, na) in &a.terms {
        let na = na.to_i128().unwrap();
        for &(tb, rb, nb) in &bs {
            if ta + tb >= prec {
                break;
            }
            *acc.entry((ta + tb, ra + rb)).or_insert(0) += na * nb;
        }
    }
    acc.into_iter().map(|(k, v)| (k, BigInt::from(v))).collect()
}

fn convolve_big(a: &Cleared, b: &Cleared, prec: i64) -> Vec<(Key, BigInt)> {
    let mut acc: HashMap<Key, BigInt> = HashMap::new();
    for (ta, ra, na) in &a.terms {
        for (tb, rb, nb) in &b.terms {
            if ta + tb >= prec {
                break;
            }
            *acc.entry((ta + tb, ra + rb)).or_insert_with(BigInt::zero) += na * nb;
        }
    }
    acc.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    fn naive(a: &[(Key, Rat)], b: &[(Key, Rat)], prec: i64) -> BTreeMap<Key, Rat> {
        let mut out: BTreeMap<Key, Rat> = BTreeMap::new();
        for ((ta, ra), ca) in a {
            for ((tb, rb), cb) in b {
                if ta + tb < prec {
                    *out.entry((ta + tb, ra + rb)).or_insert_with(Rat::zero) += ca * cb;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    #[test]
    fn matches_naive_small_and_big() {
        let a = vec![((0, 0), frac(1, 3)), ((1, -1), frac(-5, 2)), ((2, 3), int(7))];
        let b = vec![((0, 1), frac(2, 9)), ((1, 0), int(-1)), ((3, 0), frac(1, 7))];
        let got = convolve(a.iter().map(|(k, v)| (*k, v)), b.iter().map(|(k, v)| (*k, v)), 3);
        assert_eq!(got, naive(&a, &b, 3));

        let huge = Rat::new(BigInt::from(3).pow(90), BigInt::from(7));
        let a2 = vec![((0, 0), huge.clone()), ((1, 1), -huge.clone())];
        let got = convolve(a2.iter().map(|(k, v)| (*k, v)), a2.iter().map(|(k, v)| (*k, v)), 5);
        assert_eq!(got, naive(&a2, &a2, 5));
    }
}
