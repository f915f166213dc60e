//! Representation numbers by sums of squares, triangular and figurate
//! numbers: brute-force counts and the closed formulas in terms of divisor
//! sums and Cohen numbers, plus several routes to Ramanujan's τ(n).
//!
//! Two conventions coexist. δ-counts (`Triangular`) take `x ≥ 0`, while
//! `Figurate(a)` ranges over all of Z. For `a = 1` the latter double counts
//! via `x ↔ 1 − x`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;

use crate::catalog;
use crate::error::{Error, Result};
use crate::identities::{f4_formula, f6_formula};
use crate::numtheory::{cohen_h_int, divisors, is_square, isqrt, sigma, zeta_nonpositive};
use crate::rat::{big, frac, int, pow, to_i64, Rat};

/// `f_a(x) = (a x² + (a − 2) x) / 2`.
pub fn figurate(a: i64, x: i64) -> i64 {
    (a * x * x + (a - 2) * x) / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CountKind {
    /// `x ∈ Z`, value `x²`.
    Squares,
    /// `x ≥ 0`, value `x(x+1)/2`.
    Triangular,
    /// `x ∈ Z`, value `f_a(x)`.
    Figurate(i64),
    /// `x` odd, value `f_a(x)`.
    FigurateOdd(i64),
}

impl fmt::Display for CountKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountKind::Squares => write!(f, "squares"),
            CountKind::Triangular => write!(f, "triangular"),
            CountKind::Figurate(a) => write!(f, "figurate:{a}"),
            CountKind::FigurateOdd(a) => write!(f, "figurate_odd:{a}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountQuery {
    pub kind: CountKind,
    pub m: u32,
    pub n: i64,
}

impl CountQuery {
    pub fn new(kind: CountKind, m: u32, n: i64) -> Result<Self> {
        if m == 0 || n < 0 {
            return Err(Error::Precondition(format!("need m ≥ 1 and n ≥ 0, got m = {m}, n = {n}")));
        }
        if let CountKind::Figurate(a) | CountKind::FigurateOdd(a) = kind {
            if a < 1 {
                return Err(Error::Precondition(format!("figurate numbers need a ≥ 1, got {a}")));
            }
        }
        Ok(CountQuery { kind, m, n })
    }
}

/// The values `f(x) ≤ n` of one summand, with multiplicity.
fn summand_values(kind: CountKind, n: i64) -> Vec<i64> {
    let (xs, f): (Vec<i64>, Box<dyn Fn(i64) -> i64>) = match kind {
        CountKind::Squares => {
            let b = isqrt(n);
            ((-b..=b).collect(), Box::new(|x| x * x))
        }
        CountKind::Triangular => {
            let b = isqrt(2 * n) + 1;
            ((0..=b).collect(), Box::new(|x| x * (x + 1) / 2))
        }
        CountKind::Figurate(a) | CountKind::FigurateOdd(a) => {
            // f_a(x) ≥ (x² − |x|)/2 for a ≥ 1
            let b = isqrt(2 * n) + 2;
            let odd = matches!(kind, CountKind::FigurateOdd(_));
            (
                (-b..=b).filter(|x| !odd || x.rem_euclid(2) == 1).collect(),
                Box::new(move |x| figurate(a, x)),
            )
        }
    };
    let mut v: Vec<i64> = xs.into_iter().map(f).filter(|&v| v <= n).collect();
    v.sort_unstable();
    v
}

/// Tally of `f(x_1) + … + f(x_k) ≤ n` over all k-tuples, by pruned
/// enumeration (values are sorted and non-negative).
fn half_table(vals: &[i64], k: u32, n: i64) -> HashMap<i64, u64> {
    fn rec(vals: &[i64], k: u32, sum: i64, n: i64, out: &mut HashMap<i64, u64>) {
        if k == 0 {
            *out.entry(sum).or_insert(0) += 1;
            return;
        }
        for &v in vals {
            if sum + v > n {
                break;
            }
            rec(vals, k - 1, sum + v, n, out);
        }
    }
    if k == 0 {
        return HashMap::from([(0, 1)]);
    }
    vals.par_iter()
        .filter(|&&v| v <= n)
        .map(|&v| {
            let mut t = HashMap::new();
            rec(vals, k - 1, v, n, &mut t);
            t
        })
        .reduce(HashMap::new, |mut a, b| {
            for (s, c) in b {
                *a.entry(s).or_insert(0) += c;
            }
            a
        })
}

/// Number of m-tuples with `f(x_1) + … + f(x_m) = n`, by meet-in-the-middle
/// enumeration: both halves are enumerated with pruning and their sum
/// tables are matched.
pub fn count_bruteforce(q: &CountQuery) -> u64 {
    let vals = summand_values(q.kind, q.n);
    let lo = q.m / 2;
    let left = half_table(&vals, lo, q.n);
    let right = if q.m - lo == lo { left.clone() } else { half_table(&vals, q.m - lo, q.n) };
    left.iter()
        .map(|(s, c)| c * right.get(&(q.n - s)).copied().unwrap_or(0))
        .sum()
}

fn pre(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(msg()))
    }
}

fn rat_to_i64(x: Rat, what: &str) -> Result<i64> {
    to_i64(&x).ok_or_else(|| Error::CrossCheck(format!("{what} is not an integer: {x}")))
}

/// `r_8(n) = 16 Σ_{d | n} (−1)^{n+d} d³`.
pub fn formula_r8(n: i64) -> Result<i64> {
    pre(n >= 1, || format!("r_8 formula needs n ≥ 1, got {n}"))?;
    Ok(16
        * divisors(n as u64)
            .into_iter()
            .map(|d| {
                let d = d as i64;
                if (n + d) % 2 == 0 {
                    d.pow(3)
                } else {
                    -d.pow(3)
                }
            })
            .sum::<i64>())
}

/// `δ_8(n) = Σ_{d | n+1, (n+1)/d odd} d³`.
pub fn formula_delta8(n: i64) -> Result<i64> {
    pre(n >= 0, || format!("δ_8 formula needs n ≥ 0, got {n}"))?;
    let m = n + 1;
    Ok(divisors(m as u64)
        .into_iter()
        .map(|d| d as i64)
        .filter(|d| (m / d) % 2 == 1)
        .map(|d| d.pow(3))
        .sum())
}

fn sign(r: i64) -> Rat {
    int(if r % 2 == 0 { 1 } else { -1 })
}

/// `Σ_{a·m + b·r + c = n, 16m ≥ r²} w(m, r)`, the sum over the finite set of
/// lattice points on the line inside the index-4 cone.
fn line_sum(a: i64, b: i64, c: i64, n: i64, mut w: impl FnMut(i64, i64) -> Result<Rat>) -> Result<Rat> {
    let mut acc = Rat::zero();
    if b == 0 {
        if (n - c) % a == 0 && n - c >= 0 {
            let m = (n - c) / a;
            let bound = isqrt(16 * m);
            for r in -bound..=bound {
                acc += w(m, r)?;
            }
        }
        return Ok(acc);
    }
    // a r² ≤ 16(n − c − b r) bounds |r|
    let bound = 16 * b.abs() + 4 * isqrt((n - c).abs()) + 2;
    for r in -bound..=bound {
        let num = n - c - b * r;
        if num >= 0 && num % a == 0 && 16 * (num / a) >= r * r {
            acc += w(num / a, r)?;
        }
    }
    Ok(acc)
}

fn h3(n: i64) -> Result<Rat> {
    cohen_h_int(3, n)
}

/// Which of the three Cohen-number case formulas applies to `R_{a,8}(n)`
/// (or its odd variant), if any.
fn case_formula(a: i64, n: i64, odd: bool) -> Result<Option<Rat>> {
    let (ca, cb, cc) = if odd { (4 * a, a - 2, 0) } else { (a, a - 1, 3 * a - 4) };
    match (odd, a % 2 == 0, n % 2 == 0) {
        // a even, n odd: every r on the line is odd
        (false, true, false) => Ok(Some(
            frac(-7, 2) * line_sum(ca, cb, cc, n, |m, r| if 16 * m > r * r { h3(16 * m - r * r) } else { Ok(Rat::zero()) })?,
        )),
        // a odd, n even: every m on the line is odd
        (false, false, true) => {
            let twisted = line_sum(ca, cb, cc, n, |m, r| {
                Ok(if 16 * m > r * r { sign(r) * h3(16 * m - r * r)? } else { Rat::zero() })
            })?;
            let halved = line_sum(a, 2 * (a - 1), cc, n, |m, s| {
                Ok(if 4 * m > s * s { h3(4 * m - s * s)? } else { Rat::zero() })
            })?;
            let boundary = line_sum(ca, cb, cc, n, |m, r| Ok(if 16 * m == r * r { int(1) } else { Rat::zero() }))?;
            Ok(Some(frac(7, 2) * twisted + frac(-511, 2) * halved + boundary))
        }
        // odd variant, a odd, n odd: every r on the line is odd
        (true, false, false) => Ok(Some(
            frac(-7, 2) * line_sum(ca, cb, cc, n, |m, r| if 16 * m > r * r { h3(16 * m - r * r) } else { Ok(Rat::zero()) })?,
        )),
        _ => Ok(None),
    }
}

fn r_a8_general(a: i64, n: i64, odd: bool) -> Result<i64> {
    pre(a >= 1 && n >= 0, || format!("need a ≥ 1 and n ≥ 0, got a = {a}, n = {n}"))?;
    let (ca, cb, cc) = if odd { (4 * a, a - 2, 0) } else { (a, a - 1, 3 * a - 4) };
    let general = line_sum(ca, cb, cc, n, |m, r| Ok(sign(r) * f4_formula(m, r)?))?;
    if let Some(case) = case_formula(a, n, odd)? {
        if case != general {
            return Err(Error::CrossCheck(format!(
                "R_{{{a},8}}{} ({n}): f_4 sum {general} but Cohen case formula {case}",
                if odd { " odd" } else { "" }
            )));
        }
    }
    rat_to_i64(general, "R_{a,8}(n)")
}

/// `R_{a,8}(n) = Σ_{am + r(a−1) + 3a − 4 = n, 16m ≥ r²} (−1)^r f_4(m, r)`,
/// cross-checked against the Cohen-number case formula when one applies.
pub fn r_a8_formula(a: i64, n: i64) -> Result<i64> {
    r_a8_general(a, n, false)
}

/// `R^odd_{a,8}(n) = Σ_{4am + r(a−2) = n, 16m ≥ r²} (−1)^r f_4(m, r)`.
pub fn r_a8_odd_formula(a: i64, n: i64) -> Result<i64> {
    r_a8_general(a, n, true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TauRoute {
    Direct,
    ViaF4,
    ViaF4N,
    ViaF6,
    ViaF6N,
    ViaH11,
    ViaH3Closed,
    ViaH5Closed,
}

impl TauRoute {
    pub const ALL: [TauRoute; 8] = [
        TauRoute::Direct,
        TauRoute::ViaF4,
        TauRoute::ViaF4N,
        TauRoute::ViaF6,
        TauRoute::ViaF6N,
        TauRoute::ViaH11,
        TauRoute::ViaH3Closed,
        TauRoute::ViaH5Closed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TauRoute::Direct => "direct",
            TauRoute::ViaF4 => "via_f4",
            TauRoute::ViaF4N => "via_f4_n",
            TauRoute::ViaF6 => "via_f6",
            TauRoute::ViaF6N => "via_f6_n",
            TauRoute::ViaH11 => "via_h11",
            TauRoute::ViaH3Closed => "via_h3_closed",
            TauRoute::ViaH5Closed => "via_h5_closed",
        }
    }

    /// Whether the route's side conditions hold at `n`.
    pub fn applies(self, n: i64) -> bool {
        match self {
            TauRoute::ViaH3Closed | TauRoute::ViaH5Closed => n >= 1 && n % 2 == 1 && !is_square(n),
            _ => n >= 1,
        }
    }
}

impl FromStr for TauRoute {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TauRoute::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown τ route {s:?}")))
    }
}

impl fmt::Display for TauRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn factorial(n: i64) -> Rat {
    (1..=n).fold(int(1), |acc, k| acc * int(k))
}

/// `Σ_{r² ≤ 16n} r^e f(n, r)`.
fn moment(n: i64, e: u32, f: fn(i64, i64) -> Result<Rat>) -> Result<Rat> {
    let b = isqrt(16 * n);
    let mut acc = Rat::zero();
    for r in -b..=b {
        acc += pow(&int(r), e) * f(n, r)?;
    }
    Ok(acc)
}

/// `Σ_{r² < big_n} r^e H(k, big_n − r²)`.
fn h_moment(k: u32, big_n: i64, e: u32) -> Result<Rat> {
    let b = isqrt(big_n);
    let mut acc = Rat::zero();
    for r in -b..=b {
        if r * r < big_n {
            acc += pow(&int(r), e) * cohen_h_int(k, big_n - r * r)?;
        }
    }
    Ok(acc)
}

/// Ramanujan's τ(n) along the chosen route.
pub fn tau(n: i64, route: TauRoute) -> Result<Rat> {
    pre(n >= 1, || format!("τ(n) needs n ≥ 1, got {n}"))?;
    pre(route.applies(n), || format!("route {route} needs n odd and not a square, got {n}"))?;
    Ok(match route {
        TauRoute::Direct => catalog::delta(n + 1)?.coeff_int(n).unwrap_or_default(),
        TauRoute::ViaF4 => moment(n, 8, f4_formula)? / factorial(8),
        TauRoute::ViaF4N => int(3) * moment(n, 10, f4_formula)? / factorial(10) / int(n),
        TauRoute::ViaF6 => moment(n, 6, f6_formula)? / (factorial(6) * int(12)),
        TauRoute::ViaF6N => moment(n, 8, f6_formula)? / (factorial(8) * int(4)) / int(n),
        TauRoute::ViaH11 => {
            let b = isqrt(4 * n);
            let mut acc = Rat::zero();
            for r in -b..=b {
                acc += cohen_h_int(11, 4 * n - r * r)?;
            }
            let e12 = frac(65520, 691) * big(sigma(11, n as u64));
            frac(53678953, 304819200) * (acc / zeta_nonpositive(-21) - e12)
        }
        TauRoute::ViaH3Closed => frac(-73, 45) * h_moment(3, 4 * n, 8)? + frac(1, 11520) * h_moment(3, 16 * n, 8)?,
        TauRoute::ViaH5Closed => {
            frac(-1057, 1080) * h_moment(5, 4 * n, 6)? + frac(1, 69120) * h_moment(5, 16 * n, 6)?
        }
    })
}

/// τ(n) along every applicable route, in route order.
pub fn tau_all_routes(n: i64) -> Result<Vec<(TauRoute, Rat)>> {
    TauRoute::ALL
        .into_iter()
        .filter(|r| r.applies(n))
        .map(|r| Ok((r, tau(n, r)?)))
        .collect()
}

fn twisted_h7(big_n: i64) -> Result<Rat> {
    let b = isqrt(big_n);
    let mut acc = Rat::zero();
    for r in -b..=b {
        if r * r < big_n {
            acc += sign(r) * cohen_h_int(7, big_n - r * r)?;
        }
    }
    Ok(acc / zeta_nonpositive(-13))
}

/// Number of 16-tuples of triangular numbers summing to an odd `n`:
/// `61/8640 σ_7(n+2) − 1/829440 Σ (−1)^r H(7, 8(n+2) − r²)/ζ(−13)`.
pub fn delta16(n: i64) -> Result<Rat> {
    pre(n >= 1 && n % 2 == 1, || format!("δ_16 formula needs odd n ≥ 1, got {n}"))?;
    Ok(frac(61, 8640) * big(sigma(7, (n + 2) as u64)) + frac(-1, 829440) * twisted_h7(8 * (n + 2))?)
}

/// Number of representations of an odd `n` as a sum of 16 squares:
/// `416/135 σ_7(n) + 2/405 Σ (−1)^r H(7, 8n − r²)/ζ(−13)`.
pub fn r16(n: i64) -> Result<Rat> {
    pre(n >= 1 && n % 2 == 1, || format!("r_16 formula needs odd n ≥ 1, got {n}"))?;
    Ok(frac(416, 135) * big(sigma(7, n as u64)) + frac(2, 405) * twisted_h7(8 * n)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figurate_values() {
        assert_eq!((-2..=3).map(|x| figurate(1, x)).collect::<Vec<_>>(), vec![3, 1, 0, 0, 1, 3]);
        assert_eq!((-2..=2).map(|x| figurate(2, x)).collect::<Vec<_>>(), vec![4, 1, 0, 1, 4]);
        assert_eq!(figurate(5, 0), 0);
    }

    #[test]
    fn small_counts() {
        let q = |k, m, n| count_bruteforce(&CountQuery::new(k, m, n).unwrap());
        assert_eq!(q(CountKind::Squares, 8, 1), 16);
        assert_eq!(q(CountKind::Triangular, 8, 1), 8);
        assert_eq!(q(CountKind::Squares, 8, 0), 1);
        assert_eq!(q(CountKind::Figurate(1), 8, 0), 256);
        assert_eq!(q(CountKind::Squares, 16, 1), 32);
        assert_eq!(q(CountKind::Triangular, 16, 1), 16);
        assert_eq!(q(CountKind::Squares, 3, 3), 8);
    }

    #[test]
    fn divisor_formulas() {
        assert_eq!(formula_r8(1).unwrap(), 16);
        assert_eq!(formula_r8(2).unwrap(), 112);
        assert_eq!(formula_delta8(1).unwrap(), 8);
        assert_eq!(formula_delta8(0).unwrap(), 1);
        assert!(formula_r8(0).is_err());
    }

    #[test]
    fn tau_small() {
        assert_eq!(tau(1, TauRoute::Direct).unwrap(), int(1));
        assert_eq!(tau(2, TauRoute::Direct).unwrap(), int(-24));
        assert!(tau(4, TauRoute::ViaH3Closed).is_err());
        assert!(tau(9, TauRoute::ViaH5Closed).is_err());
        assert!(delta16(2).is_err());
    }
}
