//! Named modular and Jacobi forms.
//!
//! Every constructor takes a precision in whole q-units and returns a series
//! known exactly up to that q-power. Jacobi forms carry weight, index and a
//! support bound (`Meta::cone`).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_traits::One;

use crate::error::{Error, Result};
use crate::numtheory::{bernoulli, cohen_h_int, factorize, kronecker, mobius, sigma, zeta_nonpositive};
use crate::rat::{big, frac, int, pow, Rat};
use crate::series::{FJExp, Meta, QSeries, Series};

pub const DEFAULT_PREC: i64 = 12;

/// Precision used for internal exact factors that never truncate a product.
const EXACT: i64 = 1 << 32;

fn check_prec(prec: i64, min: i64) -> Result<()> {
    if prec < min {
        return Err(Error::Precondition(format!("precision must be at least {min}, got {prec}")));
    }
    Ok(())
}

/// Truncate to `prec` q-units after checking the value is known that far.
fn fit_fj(a: FJExp, prec: i64, what: &str) -> Result<FJExp> {
    if a.prec_q() < int(prec) {
        return Err(Error::CrossCheck(format!(
            "{what}: built to q^{} but q^{prec} was requested",
            a.prec_q()
        )));
    }
    Ok(a.truncate(&int(prec)))
}

fn fit_q(a: QSeries, prec: i64, what: &str) -> Result<QSeries> {
    if a.prec_q() < int(prec) {
        return Err(Error::CrossCheck(format!(
            "{what}: built to q^{} but q^{prec} was requested",
            a.prec_q()
        )));
    }
    Ok(a.truncate(&int(prec)))
}

type Cache = Mutex<HashMap<(u8, i64, i64), FJExp>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Memoize a Jacobi-form constructor by tag. A cached value computed to a
/// higher precision is truncated; the lock is not held while building.
fn memo(key: (u8, i64, i64), prec: i64, build: impl FnOnce(i64) -> Result<FJExp>) -> Result<FJExp> {
    if let Some(a) = cache().lock().unwrap().get(&key) {
        if a.prec_q() >= int(prec) {
            return Ok(a.truncate(&int(prec)));
        }
    }
    let a = build(prec)?;
    let mut map = cache().lock().unwrap();
    let better = map.get(&key).is_none_or(|old| old.prec_q() < a.prec_q());
    if better {
        map.insert(key, a.clone());
    }
    Ok(a)
}

const TAG_THETA: u8 = 0;
const TAG_EK1: u8 = 1;
const TAG_EKM: u8 = 2;
const TAG_PHI: u8 = 3;

fn half() -> Rat {
    frac(1, 2)
}

/// The odd Jacobi theta series ϑ(τ, z) = Σ (−4/n) q^{n²/8} ζ^{n/2},
/// weight 1/2 and index 1/2.
///
/// Built twice, from the theta sum and from the triple product
/// `−q^{1/8} ζ^{−1/2} ∏ (1 − q^{n−1}ζ)(1 − q^n ζ^{−1})(1 − q^n)`, and the two
/// expansions are compared.
pub fn theta(prec: i64) -> Result<FJExp> {
    check_prec(prec, 1)?;
    memo((TAG_THETA, 0, 0), prec, build_theta)
}

fn theta_meta() -> Option<Meta> {
    Some(Meta::new(half(), half(), Some(int(0))))
}

fn theta_sum(prec: i64) -> FJExp {
    let mut terms = Vec::new();
    let mut n: i64 = 1;
    while n * n < 8 * prec {
        let chi = kronecker(-4, n);
        terms.push(((n * n, n), int(chi)));
        terms.push(((n * n, -n), int(-chi)));
        n += 2;
    }
    FJExp::from_terms(8, 2, 8 * prec, terms, theta_meta())
}

fn theta_triple_product(prec: i64) -> FJExp {
    let factor = |t: i64, r: i64| FJExp::from_terms(1, 1, prec, [((0, 0), int(1)), ((t, r), int(-1))], None);
    let mut acc = FJExp::from_terms(8, 2, EXACT, [((1, -1), int(-1))], None);
    for n in 1..=prec {
        acc = acc.mul(&factor(n - 1, 1));
        acc = acc.mul(&factor(n, -1));
        acc = acc.mul(&factor(n, 0));
    }
    acc.truncate(&int(prec))
}

fn build_theta(prec: i64) -> Result<FJExp> {
    let sum = theta_sum(prec);
    let prod = theta_triple_product(prec).with_meta(theta_meta());
    if sum != prod {
        return Err(Error::CrossCheck("theta sum and triple product disagree".into()));
    }
    Ok(sum)
}

/// The level-two theta series ϑ_{ab} for characteristics a, b ∈ {0, 1/2},
/// given as `(2a, 2b)`. `(1, 1)` returns the real-normalized ϑ = −iϑ_{11}.
pub fn theta_ab(two_a: i64, two_b: i64, prec: i64) -> Result<FJExp> {
    check_prec(prec, 1)?;
    match (two_a, two_b) {
        (0, b @ (0 | 1)) => {
            let mut terms = Vec::new();
            let mut n: i64 = 0;
            while n * n < 2 * prec {
                let c = if b == 1 && n % 2 == 1 { int(-1) } else { int(1) };
                terms.push(((n * n, n), c.clone()));
                if n > 0 {
                    terms.push(((n * n, -n), c));
                }
                n += 1;
            }
            Ok(FJExp::from_terms(2, 1, 2 * prec, terms, theta_meta()))
        }
        (1, 0) => {
            let mut terms = Vec::new();
            let mut n: i64 = 1;
            while n * n < 8 * prec {
                terms.push(((n * n, n), int(1)));
                terms.push(((n * n, -n), int(1)));
                n += 2;
            }
            Ok(FJExp::from_terms(8, 2, 8 * prec, terms, theta_meta()))
        }
        (1, 1) => theta(prec),
        _ => Err(Error::Precondition(format!(
            "theta characteristic ({two_a}/2, {two_b}/2) is not of order two; \
             specialize the eighth power of theta instead"
        ))),
    }
}

/// θ_{ab}(τ) = ϑ_{ab}(τ, 0) for (2a, 2b) ∈ {(0,0), (0,1), (1,0)}.
pub fn theta_const(two_a: i64, two_b: i64, prec: i64) -> Result<QSeries> {
    if (two_a, two_b) == (1, 1) {
        return Err(Error::Precondition("θ_11 vanishes identically".into()));
    }
    Ok(theta_ab(two_a, two_b, prec)?.eval_z0())
}

/// η(τ) = q^{1/24} Σ_k (−1)^k q^{k(3k−1)/2}.
pub fn eta(prec: i64) -> Result<QSeries> {
    check_prec(prec, 1)?;
    let mut terms = Vec::new();
    let mut k: i64 = 0;
    loop {
        let mut any = false;
        for j in [k, -k] {
            let t = 1 + 12 * j * (3 * j - 1);
            if t < 24 * prec {
                any = true;
                terms.push((t, int(if j % 2 == 0 { 1 } else { -1 })));
            }
            if k == 0 {
                break;
            }
        }
        if !any {
            break;
        }
        k += 1;
    }
    Ok(QSeries::from_terms(24, 24 * prec, terms))
}

/// Δ(τ) = q ∏ (1 − q^n)^24, checked against η^24.
pub fn delta(prec: i64) -> Result<QSeries> {
    check_prec(prec, 1)?;
    let mut acc = QSeries::from_terms(1, EXACT, [(1, int(1))]);
    for n in 1..prec {
        let f = QSeries::from_terms(1, prec, [(0, int(1)), (n, int(-1))]);
        acc = acc.mul(&f.pow(24));
    }
    let acc = fit_q(acc, prec, "delta")?;
    if acc != fit_q(eta(prec)?.pow(24), prec, "eta^24")? {
        return Err(Error::CrossCheck("q∏(1−q^n)^24 differs from η^24".into()));
    }
    Ok(acc)
}

/// E_k = 1 − (2k/B_k) Σ σ_{k−1}(n) q^n for even k ≥ 2.
pub fn eisenstein(k: u32, prec: i64) -> Result<QSeries> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::Precondition(format!("Eisenstein series needs even k >= 2, got {k}")));
    }
    check_prec(prec, 1)?;
    let c = -int(2 * k as i64) / bernoulli(k as usize);
    let terms = std::iter::once((0, int(1)))
        .chain((1..prec).map(|n| (n, &c * big(sigma(k - 1, n as u64)))));
    Ok(QSeries::from_terms(1, prec, terms))
}

/// G_2 = −1/24 + Σ σ_1(n) q^n.
pub fn g2(prec: i64) -> Result<QSeries> {
    check_prec(prec, 1)?;
    let terms = std::iter::once((0, frac(-1, 24)))
        .chain((1..prec).map(|n| (n, big(sigma(1, n as u64)))));
    Ok(QSeries::from_terms(1, prec, terms))
}

/// ε_2(τ) = 2E_2(2τ) − E_2(τ).
pub fn eps2(prec: i64) -> Result<QSeries> {
    let e2 = eisenstein(2, prec)?;
    fit_q(&e2.substitute(2).scale(&int(2)) - &e2, prec, "eps2")
}

fn check_jacobi_weight(k: u32) -> Result<()> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::Precondition(format!(
            "Jacobi–Eisenstein series need even k >= 4, got {k}"
        )));
    }
    Ok(())
}

/// E_{k,1} with e(n, r) = 1 if 4n = r², else H(k − 1, 4n − r²)/ζ(3 − 2k).
pub fn jacobi_eis_m1(k: u32, prec: i64) -> Result<FJExp> {
    check_jacobi_weight(k)?;
    check_prec(prec, 1)?;
    memo((TAG_EK1, k as i64, 1), prec, |prec| {
        let zeta = zeta_nonpositive(3 - 2 * k as i64);
        let mut terms = Vec::new();
        for n in 0..prec {
            let mut r: i64 = 0;
            while r * r <= 4 * n {
                let c = if r * r == 4 * n {
                    int(1)
                } else {
                    cohen_h_int(k - 1, 4 * n - r * r)? / &zeta
                };
                if r > 0 {
                    terms.push(((n, -r), c.clone()));
                }
                terms.push(((n, r), c));
                r += 1;
            }
        }
        Ok(FJExp::from_terms(
            1,
            1,
            prec,
            terms,
            Some(Meta::new(int(k as i64), int(1), Some(int(0)))),
        ))
    })
}

/// E_{k,m} = m^{1−k} ∏_{p|m} (1 + p^{1−k})^{−1} Σ_{d²|m} μ(d) E_{k,1}|U_d|V_{m/d²}.
pub fn jacobi_eis(k: u32, m: i64, prec: i64) -> Result<FJExp> {
    check_jacobi_weight(k)?;
    if m < 1 {
        return Err(Error::Precondition(format!("index must be positive, got {m}")));
    }
    if m == 1 {
        return jacobi_eis_m1(k, prec);
    }
    check_prec(prec, 1)?;
    memo((TAG_EKM, k as i64, m), prec, |prec| {
        let e1 = jacobi_eis_m1(k, prec * m)?;
        let kk = k as i64;
        let mut acc: Option<FJExp> = None;
        let mut d: i64 = 1;
        while d * d <= m {
            if m % (d * d) == 0 {
                let mu = mobius(d as u64);
                if mu != 0 {
                    let term = e1.ud(d).vl(m / (d * d), kk)?.scale(&int(mu));
                    acc = Some(match acc {
                        None => term,
                        Some(a) => &a + &term,
                    });
                }
            }
            d += 1;
        }
        let mut c = Rat::one() / pow(&int(m), k - 1);
        for (p, _) in factorize(m as u64) {
            c /= int(1) + Rat::one() / pow(&int(p as i64), k - 1);
        }
        let e = fit_fj(acc.unwrap().scale(&c), prec, "jacobi_eis")?;
        if e.coeff_int(0, 0) != Some(int(1)) {
            return Err(Error::CrossCheck(format!("e_{{{k},{m}}}(0,0) != 1")));
        }
        Ok(e)
    })
}

/// ξ_{ab} = ϑ_{ab}(τ, z)/θ_{ab}(τ).
fn xi(two_a: i64, two_b: i64, prec: i64) -> Result<FJExp> {
    let num = theta_ab(two_a, two_b, prec)?;
    let den = num.eval_z0().inv()?;
    Ok(num.mul_q(&den, -half()))
}

/// The generators φ_{0,1}, …, φ_{0,4} of weak Jacobi forms of weight 0.
pub fn phi(j: u32, prec: i64) -> Result<FJExp> {
    if !(1..=4).contains(&j) {
        return Err(Error::Precondition(format!("phi index must be 1..4, got {j}")));
    }
    check_prec(prec, 1)?;
    memo((TAG_PHI, j as i64, 0), prec, |prec| {
        let p = prec + 1;
        let value = match j {
            1 | 2 => {
                let x00 = xi(0, 0, p)?.pow(2);
                let x01 = xi(0, 1, p)?.pow(2);
                let x10 = xi(1, 0, p)?.pow(2);
                if j == 1 {
                    (&(&x00 + &x01) + &x10).scale(&int(4))
                } else {
                    let s = &(&(&x00 * &x01) + &(&x00 * &x10)) + &(&x10 * &x01);
                    s.scale(&int(2))
                }
            }
            3 => {
                let th = theta(p)?;
                th.ud(2).div(&th)?.pow(2)
            }
            _ => {
                let th = theta(p)?;
                th.ud(3).div(&th)?
            }
        };
        let m = j as i64;
        let value = fit_fj(value, prec, "phi")?
            .with_meta(Some(Meta::new(int(0), int(m), None)))
            .with_cone(int(-m))?;
        let expected = [0, 10, 4, 2, 1][j as usize];
        let q0 = value.level(0);
        let want: std::collections::BTreeMap<i64, Rat> =
            [(-1, int(1)), (0, int(expected)), (1, int(1))].into_iter().collect();
        if q0 != want || value.zscale() != 1 {
            return Err(Error::CrossCheck(format!("phi_0,{j} has unexpected q^0 term")));
        }
        Ok(value)
    })
}

/// ℘ϑ² = η⁶φ_{0,1}/12, weight 3 and index 1.
pub fn wp_theta2(prec: i64) -> Result<FJExp> {
    let e6 = eta(prec)?.pow(6);
    let f = phi(1, prec)?.mul_q(&e6, int(3)).scale(&frac(1, 12));
    fit_fj(f, prec, "wp_theta2")
}

/// ℘ϑ² from the Weierstrass expansion
/// `℘ = 1/12 + ζ/(1 − ζ)² + Σ_n Σ_{d|n} d(ζ^d − 2 + ζ^{−d}) q^n`
/// (normalized by (2πi)^{−2}), using `ζ/(1 − ζ)² · ϑ² = q^{1/4} P²` with
/// `P = ∏ (1 − q^n ζ)(1 − q^n ζ^{−1})(1 − q^n)`.
pub fn wp_theta2_weierstrass(prec: i64) -> Result<FJExp> {
    check_prec(prec, 1)?;
    let factor = |t: i64, r: i64| FJExp::from_terms(1, 1, prec, [((0, 0), int(1)), ((t, r), int(-1))], None);
    let mut p = FJExp::from_terms(4, 1, EXACT, [((1, 0), int(1))], None);
    for n in 1..prec {
        for r in [1, -1, 0] {
            let f = factor(n, r);
            p = p.mul(&f).mul(&f);
        }
    }
    let mut regular = vec![((0, 0), frac(1, 12))];
    for n in 1..prec {
        for d in crate::numtheory::divisors(n as u64) {
            let d = d as i64;
            regular.push(((n, d), int(d)));
            regular.push(((n, -d), int(d)));
            regular.push(((n, 0), int(-2 * d)));
        }
    }
    let regular = FJExp::from_terms(1, 1, prec, regular, None);
    let th2 = theta(prec)?.pow(2).with_meta(None);
    let f = &p + &regular.mul(&th2);
    Ok(fit_fj(f, prec, "wp_theta2_weierstrass")?.with_meta(Some(Meta::new(int(3), int(1), Some(int(0))))))
}

/// Lift a q-series of weight `k` to an index-0 expansion.
pub fn lift(a: &QSeries, k: i64) -> FJExp {
    FJExp::from_qseries(a, int(k))
}

/// Names of catalog forms as accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormId {
    Theta,
    Theta00,
    Theta01,
    Theta10,
    Theta11,
    Eta,
    Delta,
    Ek(u32),
    G2,
    Eps2,
    Phi(u32),
    JacobiEis(u32, i64),
    ThetaConst(i64, i64),
    WpTheta2,
}

impl FormId {
    pub fn build(&self, prec: i64) -> Result<Series> {
        Ok(match *self {
            FormId::Theta | FormId::Theta11 => theta(prec)?.into(),
            FormId::Theta00 => theta_ab(0, 0, prec)?.into(),
            FormId::Theta01 => theta_ab(0, 1, prec)?.into(),
            FormId::Theta10 => theta_ab(1, 0, prec)?.into(),
            FormId::Eta => eta(prec)?.into(),
            FormId::Delta => delta(prec)?.into(),
            FormId::Ek(k) => eisenstein(k, prec)?.into(),
            FormId::G2 => g2(prec)?.into(),
            FormId::Eps2 => eps2(prec)?.into(),
            FormId::Phi(j) => phi(j, prec)?.into(),
            FormId::JacobiEis(k, m) => jacobi_eis(k, m, prec)?.into(),
            FormId::ThetaConst(a, b) => theta_const(a, b, prec)?.into(),
            FormId::WpTheta2 => wp_theta2(prec)?.into(),
        })
    }

    pub const NAMES: &'static [&'static str] = &[
        "theta",
        "theta00",
        "theta01",
        "theta10",
        "theta11",
        "eta",
        "delta",
        "ek:K",
        "g2",
        "eps2",
        "phi:J",
        "jacobi_eis:K,M",
        "theta_const:A,B",
        "wp_theta2",
    ];
}

fn parse_args(s: &str, n: usize) -> Option<Vec<i64>> {
    let v: Vec<i64> = s.split(',').map(|x| x.trim().parse().ok()).collect::<Option<_>>()?;
    (v.len() == n).then_some(v)
}

impl FromStr for FormId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownForm(s.to_string());
        let (tag, args) = match s.split_once(':') {
            Some((t, a)) => (t, Some(a)),
            None => (s, None),
        };
        let id = match (tag, args) {
            ("theta", None) => FormId::Theta,
            ("theta00", None) => FormId::Theta00,
            ("theta01", None) => FormId::Theta01,
            ("theta10", None) => FormId::Theta10,
            ("theta11", None) => FormId::Theta11,
            ("eta", None) => FormId::Eta,
            ("delta", None) => FormId::Delta,
            ("g2", None) => FormId::G2,
            ("eps2", None) => FormId::Eps2,
            ("wp_theta2", None) => FormId::WpTheta2,
            ("ek" | "eisenstein", Some(a)) => {
                let v = parse_args(a, 1).ok_or_else(unknown)?;
                FormId::Ek(u32::try_from(v[0]).map_err(|_| unknown())?)
            }
            ("phi", Some(a)) => {
                let v = parse_args(a, 1).ok_or_else(unknown)?;
                FormId::Phi(u32::try_from(v[0]).map_err(|_| unknown())?)
            }
            ("jacobi_eis", Some(a)) => {
                let v = parse_args(a, 2).ok_or_else(unknown)?;
                FormId::JacobiEis(u32::try_from(v[0]).map_err(|_| unknown())?, v[1])
            }
            ("theta_const", Some(a)) => {
                let v = parse_args(a, 2).ok_or_else(unknown)?;
                FormId::ThetaConst(v[0], v[1])
            }
            _ => return Err(unknown()),
        };
        Ok(id)
    }
}

impl fmt::Display for FormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormId::Theta => write!(f, "theta"),
            FormId::Theta00 => write!(f, "theta00"),
            FormId::Theta01 => write!(f, "theta01"),
            FormId::Theta10 => write!(f, "theta10"),
            FormId::Theta11 => write!(f, "theta11"),
            FormId::Eta => write!(f, "eta"),
            FormId::Delta => write!(f, "delta"),
            FormId::Ek(k) => write!(f, "ek:{k}"),
            FormId::G2 => write!(f, "g2"),
            FormId::Eps2 => write!(f, "eps2"),
            FormId::Phi(j) => write!(f, "phi:{j}"),
            FormId::JacobiEis(k, m) => write!(f, "jacobi_eis:{k},{m}"),
            FormId::ThetaConst(a, b) => write!(f, "theta_const:{a},{b}"),
            FormId::WpTheta2 => write!(f, "wp_theta2"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_lowest_terms() {
        let th = theta(3).unwrap();
        assert_eq!(th.coeff(&frac(1, 8), &half()), Some(int(1)));
        assert_eq!(th.coeff(&frac(1, 8), &-half()), Some(int(-1)));
        assert_eq!(th.coeff(&frac(9, 8), &frac(3, 2)), Some(int(-1)));
        assert!(th.eval_z0().is_zero());
    }

    #[test]
    fn eta_and_delta() {
        let d = delta(6).unwrap();
        let want = [0, 1, -24, 252, -1472, 4830];
        for (n, c) in want.iter().enumerate() {
            assert_eq!(d.coeff_int(n as i64), Some(int(*c)));
        }
        assert_eq!(eta(2).unwrap().coeff(&frac(1, 24)), Some(int(1)));
        assert_eq!(eta(2).unwrap().coeff(&frac(25, 24)), Some(int(-1)));
    }

    #[test]
    fn eisenstein_values() {
        let e4 = eisenstein(4, 3).unwrap();
        assert_eq!(e4.coeff_int(1), Some(int(240)));
        assert_eq!(e4.coeff_int(2), Some(int(2160)));
        let e = eps2(4).unwrap();
        assert_eq!(
            (1..4).map(|n| e.coeff_int(n).unwrap()).collect::<Vec<_>>(),
            vec![int(24), int(24), int(96)]
        );
        assert!(eisenstein(5, 3).is_err());
    }

    #[test]
    fn jacobi_eisenstein_fixtures() {
        let e41 = jacobi_eis_m1(4, 3).unwrap();
        assert_eq!(e41.coeff_int(1, 0), Some(int(126)));
        assert_eq!(e41.coeff_int(1, 1), Some(int(56)));
        assert_eq!(e41.coeff_int(1, 2), Some(int(1)));
        let e44 = jacobi_eis(4, 4, 2).unwrap();
        let row: Vec<Rat> = (0..4).map(|r| e44.coeff_int(1, r).unwrap()).collect();
        assert_eq!(row, vec![int(56), int(56), int(28), int(8)]);
        assert_eq!(
            jacobi_eis_m1(10, 2).unwrap().coeff_int(1, 1),
            Some(frac(-860776, 43867))
        );
    }

    #[test]
    fn phi_generators() {
        for j in 1..=4 {
            let p = phi(j, 3).unwrap();
            assert_eq!(p.prec_q(), int(3));
            assert_eq!(p.index(), Some(&int(j as i64)));
        }
        let lhs = phi(4, 4).unwrap().scale(&int(4));
        let rhs = &(&phi(1, 4).unwrap() * &phi(3, 4).unwrap()) - &phi(2, 4).unwrap().pow(2);
        assert_eq!(lhs.terms(), rhs.terms());
    }

    #[test]
    fn form_names_round_trip() {
        for s in ["theta", "ek:4", "phi:3", "jacobi_eis:4,4", "theta_const:1,0", "wp_theta2"] {
            assert_eq!(s.parse::<FormId>().unwrap().to_string(), s);
        }
        assert!(matches!("nope".parse::<FormId>(), Err(Error::UnknownForm(_))));
        assert!("phi:x".parse::<FormId>().is_err());
    }
}
