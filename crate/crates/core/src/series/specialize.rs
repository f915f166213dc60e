//! Restriction of a Fourier–Jacobi expansion to a torsion point `z = λτ + μ`.
//!
//! The pullback with automorphy factor is
//! `φ_X(τ) = e^{2πi m(λ²τ + λμ)} φ(τ, λτ + μ)`, under which
//! `c q^x ζ^y ↦ c e^{2πi(μy + mλμ)} q^{x + λy + mλ²}`.
//! Phases are collected as elements of Q(ω_K) with `K` the lcm of their
//! denominators. Passing `m = 0` gives the plain value `φ(τ, λτ + μ)`.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::cyclo::{CycloElt, MAX_CONDUCTOR};
use super::fjexp::FJExp;
use super::qseries::QSeries;
use crate::error::{Error, Result};
use crate::rat::{ceil_i64, denom_i64, int, sqrt_upper, to_i64, Rat};

const SQRT_BITS: u32 = 40;

/// A truncated q-series with coefficients in Q(ω_K).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloSeries {
    pub qscale: i64,
    pub prec: i64,
    pub conductor: i64,
    pub terms: BTreeMap<i64, CycloElt>,
}

impl CycloSeries {
    pub fn to_qseries(&self) -> Result<QSeries> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (t, e) in &self.terms {
            match e.to_rational() {
                Some(c) => out.push((*t, c)),
                None => {
                    return Err(Error::NonRational {
                        exponent: Rat::new((*t).into(), self.qscale.into()),
                        value: e.to_string(),
                    })
                }
            }
        }
        Ok(QSeries::from_terms(self.qscale, self.prec, out))
    }
}

/// A lower bound for the q-exponent, after specialization, of every term
/// that is truncated in `a`.
pub fn certified_bound(a: &FJExp, lambda: &Rat, m: &Rat) -> Result<Rat> {
    let t = a.prec_q();
    let shift = m * lambda * lambda;
    if lambda.is_zero() {
        return Ok(t + shift);
    }
    let meta = a
        .meta()
        .ok_or_else(|| Error::Uncertified("expansion carries no index".into()))?;
    let c = meta
        .cone
        .as_ref()
        .ok_or_else(|| Error::Uncertified("expansion carries no support bound".into()))?;
    let mf = &meta.index;
    // On the support, y² ≤ mf(4x − c), so x + λy ≥ g(x) = x − |λ|√(mf(4x − c)),
    // which decreases up to x* = mf λ² + c/4 and increases afterwards.
    let xstar = mf * lambda * lambda + c / int(4);
    let x = if t > xstar { t } else { xstar };
    let rad = mf * (int(4) * &x - c);
    let root = if rad.is_positive() {
        sqrt_upper(&rad, SQRT_BITS)
    } else {
        Rat::zero()
    };
    Ok(x - lambda.abs() * root + shift)
}

/// Smallest integral input precision (in q-units) whose certified output
/// bound reaches `target`.
pub fn required_prec(a_index: &Rat, cone: &Rat, lambda: &Rat, m: &Rat, target: &Rat) -> i64 {
    let probe = |t: i64| {
        let fake = FJExp::from_terms(1, 1, t, [], None).with_meta(Some(super::fjexp::Meta::new(
            int(0),
            a_index.clone(),
            Some(cone.clone()),
        )));
        certified_bound(&fake, lambda, m).unwrap()
    };
    let mut t = ceil_i64(&(target - m * lambda * lambda)).max(1);
    while probe(t) < *target {
        t += 1;
    }
    t
}

fn phase_frac(x: &Rat) -> Rat {
    x - x.floor()
}

/// The cyclotomic-valued specialization.
pub fn specialize_cyclo(a: &FJExp, lambda: &Rat, mu: &Rat, m: &Rat) -> Result<CycloSeries> {
    let s = a.qscale();
    let w = a.zscale();
    let shift = m * lambda * lambda;
    let big_s = s
        .lcm(&(w * denom_i64(lambda)))
        .lcm(&denom_i64(&shift));
    let bound = certified_bound(a, lambda, m)?;
    let prec = ceil_i64(&(&bound * int(big_s)));
    let constant_phase = m * lambda * mu;

    let mut placed: Vec<(i64, Rat, &Rat)> = Vec::new();
    let mut k: i64 = 1;
    for ((t, r), c) in a.terms() {
        let y = Rat::new((*r).into(), w.into());
        let x = Rat::new((*t).into(), s.into()) + lambda * &y + &shift;
        let key = to_i64(&(x * int(big_s))).expect("exponent on the output lattice");
        if key >= prec {
            continue;
        }
        let ph = phase_frac(&(mu * &y + &constant_phase));
        k = k.lcm(&denom_i64(&ph));
        placed.push((key, ph, c));
    }
    if k > MAX_CONDUCTOR {
        return Err(Error::ConductorTooLarge(k));
    }
    let mut acc: BTreeMap<i64, Vec<Rat>> = BTreeMap::new();
    for (key, ph, c) in placed {
        let j = to_i64(&(ph * int(k))).unwrap() as usize;
        let slot = acc.entry(key).or_insert_with(|| vec![Rat::zero(); k as usize]);
        slot[j] += c;
    }
    let mut terms = BTreeMap::new();
    for (key, powers) in acc {
        let e = CycloElt::from_powers(k, &powers)?;
        if !e.is_zero() {
            terms.insert(key, e);
        }
    }
    Ok(CycloSeries {
        qscale: big_s,
        prec,
        conductor: k,
        terms,
    })
}

/// `e^{2πi m(λ²τ + λμ)} φ(τ, λτ + μ)` as a rational q-series; fails with
/// `NonRational` if some coefficient is irrational.
pub fn specialize(a: &FJExp, lambda: &Rat, mu: &Rat, m: &Rat) -> Result<QSeries> {
    specialize_cyclo(a, lambda, mu, m)?.to_qseries()
}

/// Specialization with the form's own index as automorphy index.
pub fn pullback(a: &FJExp, lambda: &Rat, mu: &Rat) -> Result<QSeries> {
    let m = a
        .index()
        .cloned()
        .ok_or_else(|| Error::Precondition("pullback needs the index of the form".into()))?;
    specialize(a, lambda, mu, &m)
}

/// The plain value `φ(τ, λτ + μ)`.
pub fn evaluate_at(a: &FJExp, lambda: &Rat, mu: &Rat) -> Result<QSeries> {
    specialize(a, lambda, mu, &int(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::frac;
    use crate::series::Meta;

    fn sample() -> FJExp {
        // 1 + q(ζ + 4 + ζ^-1), index 1, holomorphic
        FJExp::from_terms(
            1,
            1,
            2,
            [((0, 0), int(1)), ((1, 1), int(1)), ((1, 0), int(4)), ((1, -1), int(1))],
            Some(Meta::new(int(4), int(1), Some(int(0)))),
        )
    }

    #[test]
    fn lambda_zero_mu_zero_is_eval_z0() {
        let a = sample();
        assert_eq!(specialize(&a, &int(0), &int(0), &int(1)).unwrap(), a.eval_z0());
    }

    #[test]
    fn half_period_twists_signs() {
        let a = sample();
        let b = specialize(&a, &int(0), &frac(1, 2), &int(1)).unwrap();
        assert_eq!(b.coeff_int(1), Some(int(2)));
    }

    #[test]
    fn irrational_values_are_reported() {
        // the symmetric sample has i + 4 - i = 4; a lone ζ stays irrational
        let a = sample();
        assert_eq!(specialize(&a, &int(0), &frac(1, 4), &int(0)).unwrap().coeff_int(1), Some(int(4)));
        let a = FJExp::from_terms(1, 1, 2, [((1, 1), int(1))], None);
        let err = specialize(&a, &int(0), &frac(1, 4), &int(0)).unwrap_err();
        assert!(matches!(err, Error::NonRational { .. }));
        let cy = specialize_cyclo(&a, &int(0), &frac(1, 4), &int(0)).unwrap();
        assert_eq!(cy.conductor, 4);
    }

    #[test]
    fn certified_bound_uses_cone() {
        let a = sample();
        // T = 2, λ = 1/2, c = 0, m = 1: 2 - (1/2)·√8 + 1/4 ≈ 0.836
        let b = certified_bound(&a, &frac(1, 2), &int(1)).unwrap();
        assert!(b > frac(83, 100) && b < frac(84, 100));
        let bare = a.clone().with_meta(None);
        assert!(matches!(
            certified_bound(&bare, &frac(1, 2), &int(1)),
            Err(Error::Uncertified(_))
        ));
        let t = required_prec(&int(1), &int(0), &frac(1, 2), &int(1), &int(3));
        assert!(t >= 3);
    }
}
