//! Elementary arithmetic functions by trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rat::Rat;

/// Prime factorization `[(p, e)]` with `p` increasing. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "factorize(0)");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0, "divisors(0)");
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// σ_k(n) = Σ_{d | n} d^k.
pub fn sigma(k: u32, n: u64) -> BigInt {
    divisors(n)
        .into_iter()
        .map(|d| num_traits::pow(BigInt::from(d), k as usize))
        .sum()
}

/// σ_k evaluated at a rational point, with the convention σ_k(x) = 0 unless
/// `x` is a positive integer.
pub fn sigma_at(k: u32, x: &Rat) -> BigInt {
    if !x.denom().is_one() || x.numer() <= &BigInt::zero() {
        return BigInt::zero();
    }
    let n: u64 = x.numer().try_into().expect("sigma argument out of range");
    sigma(k, n)
}

/// gcd(a, b, c) with the convention gcd(0, 0, l) = l.
pub fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    a.gcd(&b).gcd(&c)
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn is_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt() as i64;
    (r.saturating_sub(1)..=r + 1).any(|x| x >= 0 && x * x == n)
}

pub fn isqrt(n: i64) -> i64 {
    assert!(n >= 0);
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Jacobi symbol (a/n) for odd positive n.
fn jacobi(a: i64, n: i64) -> i64 {
    debug_assert!(n > 0 && n % 2 == 1);
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut result = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// The Kronecker symbol (d/n).
pub fn kronecker(d: i64, n: i64) -> i64 {
    if n == 0 {
        return if d.abs() == 1 { 1 } else { 0 };
    }
    let mut result = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if d < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if d % 2 == 0 {
            return 0;
        }
        n >>= twos;
        if twos % 2 == 1 && matches!(d.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    result * jacobi(d, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_values() {
        assert_eq!(kronecker(-4, 1), 1);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(5, 0), 0);
        assert_eq!(kronecker(1, 0), 1);
        assert_eq!(kronecker(-1, 0), 1);
        for d in -30..30 {
            assert_eq!(kronecker(d, 1), 1);
        }
    }

    #[test]
    fn kronecker_matches_quadratic_residues_for_odd_primes() {
        // Euler's criterion oracle.
        for p in [3i64, 5, 7, 11, 13, 17, 19, 23] {
            for d in -40i64..40 {
                let r = d.rem_euclid(p);
                let euler = if r == 0 {
                    0
                } else {
                    let mut acc = 1i64;
                    for _ in 0..(p - 1) / 2 {
                        acc = acc * r % p;
                    }
                    if acc == 1 {
                        1
                    } else {
                        -1
                    }
                };
                assert_eq!(kronecker(d, p), euler, "({d}/{p})");
            }
        }
    }

    #[test]
    fn sigma_and_mobius() {
        assert_eq!(sigma(3, 6), BigInt::from(252));
        assert_eq!(sigma(7, 1), BigInt::from(1));
        assert_eq!(sigma(0, 12), BigInt::from(6));
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(30), -1);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(sigma_at(3, &Rat::new(3.into(), 2.into())), BigInt::zero());
    }

    #[test]
    fn gcd_convention() {
        assert_eq!(gcd3(0, 0, 4), 4);
        assert_eq!(gcd3(1, 1, 2), 1);
        assert_eq!(gcd3(2, 4, 4), 2);
        assert_eq!(gcd3(0, -4, 4), 4);
    }

    #[test]
    fn squares() {
        assert!(is_square(0) && is_square(49) && !is_square(50) && !is_square(-4));
        assert_eq!(isqrt(48), 6);
        assert_eq!(isqrt(49), 7);
    }
}
