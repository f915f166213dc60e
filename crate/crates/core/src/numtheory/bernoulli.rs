//! Bernoulli numbers, Bernoulli polynomials and special values of
//! Dirichlet L-functions at non-positive integers.
//!
//! Convention: B_1 = -1/2.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::arith::kronecker;
use super::disc::is_fundamental;
use crate::error::{Error, Result};
use crate::rat::{big, frac, int, Rat};

const TABLE_LEN: usize = 64;

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 1..=n {
        let next = &row[k - 1] * BigInt::from(n - k + 1) / BigInt::from(k);
        row.push(next);
    }
    row
}

fn bernoulli_upto(n: usize) -> Vec<Rat> {
    // Σ_{k=0}^{m} C(m+1, k) B_k = 0 for m >= 1.
    let mut b: Vec<Rat> = vec![int(1)];
    for m in 1..=n {
        let row = binomial_row(m + 1);
        let acc: Rat = (0..m).map(|k| big(row[k].clone()) * &b[k]).sum();
        b.push(-acc / big(row[m].clone()));
    }
    b
}

fn table() -> &'static [Rat] {
    static TABLE: OnceLock<Vec<Rat>> = OnceLock::new();
    TABLE.get_or_init(|| bernoulli_upto(TABLE_LEN))
}

pub fn bernoulli(n: usize) -> Rat {
    match table().get(n) {
        Some(b) => b.clone(),
        None => bernoulli_upto(n).pop().unwrap(),
    }
}

/// B_n(x) = Σ_k C(n, k) B_k x^{n-k}.
pub fn bernoulli_poly(n: usize, x: &Rat) -> Rat {
    let row = binomial_row(n);
    let mut acc = Rat::zero();
    let mut xp = int(1);
    // Horner from the top coefficient B_n down to B_0 x^n.
    for k in (0..=n).rev() {
        acc += big(row[k].clone()) * bernoulli(k) * &xp;
        xp *= x;
    }
    acc
}

/// ζ(s) for a non-positive integer s.
pub fn zeta_nonpositive(s: i64) -> Rat {
    assert!(s <= 0);
    if s == 0 {
        return frac(-1, 2);
    }
    let n = (-s) as usize;
    if n % 2 == 0 {
        return Rat::zero();
    }
    -bernoulli(n + 1) / int(n as i64 + 1)
}

/// ζ(s) at a negative odd integer s = 1 - 2r.
pub fn zeta_neg(s: i64) -> Result<Rat> {
    if s >= 0 || s % 2 == 0 {
        return Err(Error::Precondition(format!(
            "zeta_neg expects a negative odd integer, got {s}"
        )));
    }
    Ok(zeta_nonpositive(s))
}

/// Generalized Bernoulli number B_{r, χ_D} = |D|^{r-1} Σ_{a=1}^{|D|} χ_D(a) B_r(a/|D|).
///
/// Evaluated through integer power sums S_j = Σ_a χ_D(a) a^j:
/// B_{r,χ} = Σ_k C(r, k) B_k |D|^{k-1} S_{r-k}.
pub fn gen_bernoulli(r: u32, d: i64) -> Result<Rat> {
    if !is_fundamental(d) {
        return Err(Error::NotFundamental(d));
    }
    if d == 1 {
        return Ok(bernoulli(r as usize));
    }
    let f = d.unsigned_abs();
    let r = r as usize;
    let mut sums = vec![BigInt::zero(); r + 1];
    for a in 1..=f {
        let chi = kronecker(d, a as i64);
        if chi == 0 {
            continue;
        }
        let mut pw = BigInt::one();
        let a = BigInt::from(a);
        for s in sums.iter_mut() {
            if chi > 0 {
                *s += &pw;
            } else {
                *s -= &pw;
            }
            pw *= &a;
        }
    }
    let row = binomial_row(r);
    let fr = big(BigInt::from(f));
    let mut acc = Rat::zero();
    let mut f_pow = Rat::one() / &fr; // |D|^{k-1} at k = 0
    for k in 0..=r {
        if !sums[r - k].is_zero() {
            acc += big(&row[k] * &sums[r - k]) * bernoulli(k) * &f_pow;
        }
        f_pow *= &fr;
    }
    Ok(acc)
}

fn l_cache() -> &'static Mutex<HashMap<(u32, i64), Rat>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, i64), Rat>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// L(1 - r, χ_D) = -B_{r,χ_D} / r; for D = 1 this is ζ(1 - r).
pub fn l_value_neg(r: u32, d: i64) -> Result<Rat> {
    if r == 0 {
        return Err(Error::Precondition("l_value_neg requires r >= 1".into()));
    }
    if d == 1 {
        return Ok(zeta_nonpositive(1 - r as i64));
    }
    if let Some(v) = l_cache().lock().unwrap().get(&(r, d)) {
        return Ok(v.clone());
    }
    let v = -gen_bernoulli(r, d)? / int(r as i64);
    l_cache().lock().unwrap().insert((r, d), v.clone());
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_numbers() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), frac(-1, 2));
        assert_eq!(bernoulli(2), frac(1, 6));
        assert_eq!(bernoulli(3), int(0));
        assert_eq!(bernoulli(4), frac(-1, 30));
        assert_eq!(bernoulli(6), frac(1, 42));
        assert_eq!(bernoulli(12), frac(-691, 2730));
        assert_eq!(bernoulli(14), frac(7, 6));
        assert_eq!(bernoulli(22), frac(854513, 138));
        // beyond the cached table
        assert_eq!(bernoulli(TABLE_LEN + 2), bernoulli_upto(TABLE_LEN + 2)[TABLE_LEN + 2]);
    }

    #[test]
    fn bernoulli_polynomials() {
        for n in 0..10 {
            assert_eq!(bernoulli_poly(n, &int(0)), bernoulli(n));
        }
        assert_eq!(bernoulli_poly(3, &frac(1, 3)), frac(1, 27));
        // B_n(1) = B_n except n = 1
        assert_eq!(bernoulli_poly(1, &int(1)), frac(1, 2));
        assert_eq!(bernoulli_poly(5, &int(1)), bernoulli(5));
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta_neg(-5).unwrap(), frac(-1, 252));
        assert_eq!(zeta_neg(-13).unwrap(), frac(-1, 12));
        assert_eq!(zeta_neg(-3).unwrap(), frac(1, 120));
        assert_eq!(zeta_neg(-1).unwrap(), frac(-1, 12));
        assert_eq!(zeta_neg(-21).unwrap(), frac(-77683, 276));
        assert!(zeta_neg(-4).is_err());
        assert!(zeta_neg(1).is_err());
        assert_eq!(zeta_nonpositive(0), frac(-1, 2));
    }

    /// Direct definition through Bernoulli polynomials, used as an oracle for
    /// the power-sum evaluation.
    fn gen_bernoulli_direct(r: usize, d: i64) -> Rat {
        let f = d.abs();
        let mut acc = Rat::zero();
        for a in 1..=f {
            let chi = kronecker(d, a);
            if chi != 0 {
                acc += int(chi) * bernoulli_poly(r, &frac(a, f));
            }
        }
        acc * crate::rat::pow(&int(f), r as u32 - 1)
    }

    #[test]
    fn generalized_bernoulli_against_polynomial_definition() {
        for d in [-3i64, -4, -7, -8, 5, 8, 12, -15, 13, -20, 21] {
            for r in 1..=8usize {
                assert_eq!(
                    gen_bernoulli(r as u32, d).unwrap(),
                    gen_bernoulli_direct(r, d),
                    "B_{{{r},{d}}}"
                );
            }
        }
    }

    #[test]
    fn l_values() {
        assert_eq!(l_value_neg(3, -3).unwrap(), frac(-2, 9));
        assert_eq!(l_value_neg(3, -4).unwrap(), frac(-1, 2));
        assert_eq!(l_value_neg(3, -7).unwrap(), frac(-16, 7));
        assert_eq!(l_value_neg(1, -3).unwrap(), frac(1, 3));
        assert_eq!(l_value_neg(1, -4).unwrap(), frac(1, 2));
        assert_eq!(l_value_neg(1, 1).unwrap(), frac(-1, 2));
        assert_eq!(l_value_neg(4, 1).unwrap(), frac(1, 120));
        assert!(l_value_neg(3, -12).is_err());
        // L(1 - r, χ) vanishes when χ(-1) != (-1)^r
        assert_eq!(l_value_neg(2, -4).unwrap(), int(0));
    }
}
