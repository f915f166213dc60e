//! Small builders shared by the registry entries.

use num_traits::Zero;

use super::Equation;
use crate::catalog;
use crate::error::{Error, Result};
use crate::numtheory::{cohen_h, cohen_h_int, divisors, isqrt, sigma};
use crate::rat::{big, frac, int, pow, Rat};
use crate::series::{evaluate_at, required_prec, specialize, FJExp, QSeries};

pub(crate) fn qeq(label: &str, lhs: QSeries, rhs: QSeries) -> Equation {
    Equation {
        label: label.to_string(),
        lhs: lhs.into(),
        rhs: rhs.into(),
    }
}

pub(crate) fn fjeq(label: &str, lhs: FJExp, rhs: FJExp) -> Equation {
    Equation {
        label: label.to_string(),
        lhs: lhs.into(),
        rhs: rhs.into(),
    }
}

pub(crate) fn lin_q(terms: &[(Rat, &QSeries)]) -> QSeries {
    let mut it = terms.iter().map(|(c, a)| a.scale(c));
    let first = it.next().expect("empty combination");
    it.fold(first, |acc, x| &acc + &x)
}

pub(crate) fn lin_fj(terms: &[(Rat, &FJExp)]) -> FJExp {
    let mut it = terms.iter().map(|(c, a)| a.scale(c));
    let first = it.next().expect("empty combination");
    it.fold(first, |acc, x| &acc + &x)
}

/// `Σ f(n) q^n` over `lo ≤ n < prec`, skipping `None`.
pub(crate) fn qsum(lo: i64, prec: i64, mut f: impl FnMut(i64) -> Result<Option<Rat>>) -> Result<QSeries> {
    let mut terms = Vec::new();
    for n in lo..prec {
        if let Some(c) = f(n)? {
            terms.push((n, c));
        }
    }
    Ok(QSeries::from_terms(1, prec, terms))
}

/// The integral-exponent coefficients of `a` at the `n` selected by `keep`.
pub(crate) fn restrict(a: &QSeries, prec: i64, keep: impl Fn(i64) -> bool) -> Result<QSeries> {
    qsum(0, prec, |n| Ok(if keep(n) { a.coeff_int(n) } else { None }))
}

/// φ(τ, 1/2).
pub(crate) fn at_half(a: &FJExp) -> Result<QSeries> {
    evaluate_at(a, &Rat::zero(), &frac(1, 2))
}

/// Specialization `e^{2πi m(λ²τ + λμ)} φ(τ, λτ + μ)` of a form built by
/// `build`, computed from enough Fourier–Jacobi levels to be exact below
/// `q^target`.
pub(crate) fn spec_to(
    build: &dyn Fn(i64) -> Result<FJExp>,
    lambda: &Rat,
    mu: &Rat,
    m: &Rat,
    target: &Rat,
) -> Result<QSeries> {
    let probe = build(1)?;
    let meta = probe
        .meta()
        .ok_or_else(|| Error::Uncertified("form carries no index".into()))?;
    let cone = meta
        .cone
        .clone()
        .ok_or_else(|| Error::Uncertified("form carries no support bound".into()))?;
    let tin = required_prec(&meta.index, &cone, lambda, m, target);
    let s = specialize(&build(tin)?, lambda, mu, m)?;
    if s.prec_q() < *target {
        return Err(Error::Uncertified(format!(
            "specialization reached q^{} below the target q^{target}",
            s.prec_q()
        )));
    }
    Ok(s.truncate(target))
}

/// Keep the terms of `a` with `4xm − y² ≥ 0` (or `> 0` when `strict`).
pub(crate) fn cone_part(a: &FJExp, m: i64, strict: bool) -> FJExp {
    let (s, w) = (a.qscale(), a.zscale());
    let kept = a.terms().iter().filter_map(|(&(t, r), c)| {
        let disc = 4 * t * m * w * w - r * r * s;
        (disc > 0 || (disc == 0 && !strict)).then(|| ((t, r), c.clone()))
    });
    FJExp::from_terms(s, w, a.prec(), kept, a.meta().cloned())
}

pub(crate) fn sigma_rat(k: u32, x: &Rat) -> Rat {
    big(crate::numtheory::sigma_at(k, x))
}

pub(crate) fn sig(k: u32, n: i64) -> Rat {
    if n <= 0 {
        Rat::zero()
    } else {
        big(sigma(k, n as u64))
    }
}

pub(crate) fn h(r: u32, n: i64) -> Result<Rat> {
    cohen_h_int(r, n)
}

/// `Σ_{d | (n, r, g)} d^e H(k, (N)/d²)`.
pub(crate) fn divisor_cohen_sum(n: i64, r: i64, g: i64, e: u32, k: u32, big_n: i64) -> Result<Rat> {
    let gg = num_integer::gcd(num_integer::gcd(n, r), g);
    let mut acc = Rat::zero();
    for d in divisors(gg.unsigned_abs()) {
        let d = d as i64;
        acc += pow(&int(d), e) * cohen_h(k, &frac(big_n, d * d))?;
    }
    Ok(acc)
}

/// Coefficient of q^n ζ^r in ϑ⁸ from Cohen numbers of weight 3.
pub fn f4_formula(n: i64, r: i64) -> Result<Rat> {
    let d = 16 * n - r * r;
    if d < 0 {
        return Ok(Rat::zero());
    }
    if d == 0 {
        return Ok(int(n % 2));
    }
    Ok(frac(-511, 2) * cohen_h(3, &frac(d, 4))? + frac(7, 2) * divisor_cohen_sum(n, r, 4, 3, 3, d)?)
}

/// Coefficient of q^n ζ^r in 12℘ϑ⁸ from Cohen numbers of weight 5.
pub fn f6_formula(n: i64, r: i64) -> Result<Rat> {
    let d = 16 * n - r * r;
    if d < 0 {
        return Ok(Rat::zero());
    }
    if d == 0 {
        return Ok(int(n % 2));
    }
    Ok(frac(-1057, 8) * cohen_h(5, &frac(d, 4))? + frac(1, 8) * divisor_cohen_sum(n, r, 4, 5, 5, d)?)
}

/// An index-4 expansion with coefficients `f(n, r)` on `16n ≥ r²`.
pub(crate) fn fj_from_formula(prec: i64, f: impl Fn(i64, i64) -> Result<Rat>) -> Result<FJExp> {
    let mut terms = Vec::new();
    for n in 0..prec {
        let b = isqrt(16 * n);
        for r in -b..=b {
            terms.push(((n, r), f(n, r)?));
        }
    }
    Ok(FJExp::from_terms(1, 1, prec, terms, None))
}

/// Smallest `M` with `a·m + c − |b|·⌊4√m⌋ ≥ prec` for all `m ≥ M`, so that
/// levels `m ≥ M` cannot reach `q^n`, `n < prec`, along `a·m + b·r + c = n`.
pub(crate) fn linear_window(a: i64, b: i64, c: i64, prec: i64) -> i64 {
    let reach = |m: i64| a * m + c - b.abs() * isqrt(16 * m);
    let mut last = -1;
    let mut m = 0;
    // the reach is eventually increasing; stop after a long run above `prec`
    let mut run = 0;
    while run < 64 {
        if reach(m) < prec {
            last = m;
            run = 0;
        } else {
            run += 1;
        }
        m += 1;
    }
    last + 1
}

/// `Σ_{a·m + b·r + c = n, 16m ≥ r²} weight(r)·coeff(m, r) q^n` for `0 ≤ n < prec`.
pub(crate) fn linear_sum(
    a: i64,
    b: i64,
    c: i64,
    prec: i64,
    coeff: impl Fn(i64, i64) -> Result<Rat>,
) -> Result<QSeries> {
    let top = linear_window(a, b, c, prec);
    let mut terms = Vec::new();
    for m in 0..top {
        let bound = isqrt(16 * m);
        for r in -bound..=bound {
            let n = a * m + b * r + c;
            if (0..prec).contains(&n) {
                let v = coeff(m, r)?;
                if !v.is_zero() {
                    terms.push((n, v));
                }
            }
        }
    }
    Ok(QSeries::from_terms(1, prec, terms))
}

pub(crate) fn sign(r: i64) -> Rat {
    int(if r % 2 == 0 { 1 } else { -1 })
}

/// ϑ⁸ from the triple product.
pub(crate) fn theta8(prec: i64) -> Result<FJExp> {
    Ok(catalog::theta(prec)?.pow(8))
}

pub(crate) fn e_k(k: u32, prec: i64) -> Result<QSeries> {
    catalog::eisenstein(k, prec)
}

pub(crate) fn ejac(k: u32, m: i64, prec: i64) -> Result<FJExp> {
    catalog::jacobi_eis(k, m, prec)
}
