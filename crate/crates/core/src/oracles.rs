//! Independent reference computations used to cross-check the library.
//!
//! Everything here is deliberately naive: integer polynomial products,
//! direct divisor loops, reduced-form counts. Nothing routes through the
//! series engine, the Cohen closed formula or the Jacobi–Eisenstein code.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numtheory::{bernoulli, bernoulli_poly, kronecker};
use crate::rat::{frac, int, Rat};

/// Truncated integer power series `c[0] + c[1] q + …`.
pub type IntSeries = Vec<BigInt>;

pub fn int_mul(a: &[BigInt], b: &[BigInt], len: usize) -> IntSeries {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn int_pow(a: &[BigInt], e: u32, len: usize) -> IntSeries {
    let mut acc = vec![BigInt::zero(); len];
    if len > 0 {
        acc[0] = BigInt::one();
    }
    for _ in 0..e {
        acc = int_mul(&acc, a, len);
    }
    acc
}

/// `∏_{(m, e)} ∏_{n ≥ 1} (1 − q^{mn})^e` to `len` terms. Negative `e` is
/// handled by the geometric series of each factor.
pub fn eta_quotient(factors: &[(usize, i32)], len: usize) -> IntSeries {
    let mut acc = vec![BigInt::zero(); len];
    if len == 0 {
        return acc;
    }
    acc[0] = BigInt::one();
    for &(m, e) in factors {
        let mut n = 1;
        while m * n < len {
            let step = m * n;
            let mut factor = vec![BigInt::zero(); len];
            factor[0] = BigInt::one();
            if e >= 0 {
                factor[step] = BigInt::from(-1);
            } else {
                for k in (0..len).step_by(step) {
                    factor[k] = BigInt::one();
                }
            }
            acc = int_mul(&acc, &int_pow(&factor, e.unsigned_abs(), len), len);
            n += 1;
        }
    }
    acc
}

/// `Σ_{n ∈ Z} q^{n²}`.
pub fn squares_series(len: usize) -> IntSeries {
    let mut out = vec![BigInt::zero(); len];
    let mut n = 0usize;
    while n * n < len {
        out[n * n] += if n == 0 { 1 } else { 2 };
        n += 1;
    }
    out
}

/// `Σ_{n ≥ 0} q^{n(n+1)/2}`.
pub fn triangular_series(len: usize) -> IntSeries {
    let mut out = vec![BigInt::zero(); len];
    let mut n = 0usize;
    while n * (n + 1) / 2 < len {
        out[n * (n + 1) / 2] += 1;
        n += 1;
    }
    out
}

/// `σ_k(n)` by trial division over `1..=n`.
pub fn naive_sigma(k: u32, n: u64) -> BigInt {
    (1..=n).filter(|d| n % d == 0).map(|d| BigInt::from(d).pow(k)).sum()
}

/// `E_k = 1 − (2k/B_k) Σ σ_{k−1}(n) qⁿ` as rationals.
pub fn eisenstein_coeffs(k: u32, len: usize) -> Vec<Rat> {
    let c = -int(2 * k as i64) / bernoulli(k as usize);
    (0..len)
        .map(|n| if n == 0 { int(1) } else { &c * Rat::from(naive_sigma(k - 1, n as u64)) })
        .collect()
}

/// Ramanujan τ(n) from `q∏(1 − qⁿ)²⁴` for `1 ≤ n < len`; index 0 is 0.
pub fn ramanujan_tau(len: usize) -> IntSeries {
    let p = eta_quotient(&[(1, 24)], len.max(1));
    let mut out = vec![BigInt::zero(); len];
    if len > 1 {
        out[1..].clone_from_slice(&p[..len - 1]);
    }
    out
}

/// Hurwitz class number H(N) by counting reduced forms `ax² + bxy + cy²`
/// of discriminant `−N`, with weight 1/2 for forms equivalent to `a(x² + y²)`
/// and 1/3 for `a(x² + xy + y²)`. `H(0) = −1/12`.
pub fn hurwitz_class_number(n: i64) -> Rat {
    if n == 0 {
        return frac(-1, 12);
    }
    if n < 0 || matches!(n % 4, 1 | 2) {
        return int(0);
    }
    let mut acc = int(0);
    // reduced: |b| ≤ a ≤ c, and b ≥ 0 when |b| = a or a = c
    let mut a = 1;
    while 3 * a * a <= n {
        for b in -a..=a {
            let num = b * b + n;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || ((b.abs() == a || a == c) && b < 0) {
                continue;
            }
            acc += if a == c && b == 0 {
                frac(1, 2)
            } else if a == b && b == c {
                frac(1, 3)
            } else {
                int(1)
            };
        }
        a += 1;
    }
    acc
}

/// Cohen's H(r, N) as a sum over square divisors,
/// `Σ_{g² | N, D = (−1)^r N/g² ≡ 0, 1 (4)} h_r(D)`, where for `D = D₀f²`
/// with `D₀` fundamental
/// `h_r(D) = L(1 − r, χ_{D₀}) f^{2r−1} ∏_{p | f} (1 − χ_{D₀}(p) p^{−r})`.
/// For r = 1 this is the class number sum `Σ h(D)/w(D)·2`.
pub fn cohen_h_by_definition(r: u32, n: i64) -> Rat {
    assert!(r >= 1 && n >= 1);
    let mut acc = int(0);
    let mut g = 1;
    while g * g <= n {
        if n % (g * g) == 0 {
            let m = n / (g * g);
            let disc = if r % 2 == 1 { -m } else { m };
            if matches!(disc.rem_euclid(4), 0 | 1) {
                acc += h_order(r, disc);
            }
        }
        g += 1;
    }
    acc
}

/// `h_r(D)` for a (not necessarily fundamental) discriminant `D`.
fn h_order(r: u32, disc: i64) -> Rat {
    // the fundamental part: divide out the largest square that keeps D a discriminant
    let mut f = 1;
    let mut k = 1;
    while k * k <= disc.abs() {
        if disc % (k * k) == 0 && matches!((disc / (k * k)).rem_euclid(4), 0 | 1) {
            f = k;
        }
        k += 1;
    }
    let d0 = disc / (f * f);
    let mut acc = l_value_by_period(r, d0) * Rat::from(BigInt::from(f).pow(2 * r - 1));
    let mut rest = f;
    let mut p = 2;
    while rest > 1 {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            let pr = Rat::from(BigInt::from(p).pow(r));
            acc *= int(1) - int(kronecker(d0, p)) / pr;
        }
        p += 1;
    }
    acc
}

/// `L(1 − r, χ) = −F^{r−1}/r Σ_{a=1}^{F} χ(a) B_r(a/F)` for the Kronecker
/// character of a fundamental discriminant, `F = |D|`. For `D = 1` and
/// `r = 1` this gives ζ(0) = −1/2.
fn l_value_by_period(r: u32, disc: i64) -> Rat {
    let f = disc.abs();
    let fr = int(f);
    let mut sum = int(0);
    for a in 1..=f {
        let chi = kronecker(disc, a);
        if chi != 0 {
            sum += int(chi) * bernoulli_poly(r as usize, &(int(a) / &fr));
        }
    }
    let mut fpow = int(1);
    for _ in 1..r {
        fpow *= &fr;
    }
    -(fpow * sum) / int(r as i64)
}

/// Number of m-tuples of integers `x` with `Σ f(x_i) = n`, by the integer
/// series `(Σ_x q^{f(x)})^m`.
pub fn count_by_series(one: &[BigInt], m: u32, n: usize) -> BigInt {
    int_pow(one, m, n + 1)[n].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_numbers() {
        assert_eq!(hurwitz_class_number(3), frac(1, 3));
        assert_eq!(hurwitz_class_number(4), frac(1, 2));
        assert_eq!(hurwitz_class_number(7), int(1));
        assert_eq!(hurwitz_class_number(8), int(1));
        assert_eq!(hurwitz_class_number(12), frac(4, 3));
        assert_eq!(hurwitz_class_number(23), int(3));
    }

    #[test]
    fn definition_matches_class_numbers() {
        for n in 1..60 {
            assert_eq!(cohen_h_by_definition(1, n), hurwitz_class_number(n), "N = {n}");
        }
    }

    #[test]
    fn tau_values() {
        let t = ramanujan_tau(6);
        let want = [0, 1, -24, 252, -1472, 4830];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(t[n], BigInt::from(*w));
        }
    }
}
