use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::kernel::{convolve, Key};
use super::qseries::{fmt_coeff_term, fmt_exp, QSeries};
use crate::error::{Error, Result};
use crate::numtheory::divisors;
use crate::rat::{int, pow, Rat};

/// Precision and terms after rescaling to common scales.
type Rescaled = (i64, BTreeMap<Key, Rat>);

/// Weight, index and a certified support bound of a Fourier–Jacobi expansion.
///
/// `cone = Some(c)` asserts that every coefficient of the exact form, stored
/// or truncated, vanishes unless `4x ≥ c` and `y² ≤ m(4x − c)`, where
/// `q^x ζ^y` is the monomial and `m` the index. Holomorphic Jacobi forms have
/// `c = 0`, weak forms of index `m` have `c = −m`. The bound is what lets a
/// specialization `z = λτ + μ` certify its output precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Meta {
    pub weight: Rat,
    pub index: Rat,
    pub cone: Option<Rat>,
}

impl Meta {
    pub fn new(weight: Rat, index: Rat, cone: Option<Rat>) -> Self {
        Meta {
            weight,
            index,
            cone,
        }
    }

    fn product(a: &Option<Meta>, b: &Option<Meta>) -> Option<Meta> {
        let (a, b) = (a.as_ref()?, b.as_ref()?);
        let cone = match (&a.cone, &b.cone) {
            (Some(x), Some(y)) => Some(x + y),
            _ => None,
        };
        Some(Meta::new(&a.weight + &b.weight, &a.index + &b.index, cone))
    }

    fn sum(a: &Option<Meta>, b: &Option<Meta>) -> Option<Meta> {
        let (a, b) = (a.as_ref()?, b.as_ref()?);
        if a.weight != b.weight || a.index != b.index {
            return None;
        }
        let cone = match (&a.cone, &b.cone) {
            (Some(x), Some(y)) => Some(x.min(y).clone()),
            _ => None,
        };
        Some(Meta::new(a.weight.clone(), a.index.clone(), cone))
    }
}

/// A truncated Fourier–Jacobi expansion `Σ c_{t,r} q^{t/s} ζ^{r/w}`, known for
/// all q-exponents below `prec/s` and every ζ-exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FJExp {
    qscale: i64,
    zscale: i64,
    prec: i64,
    terms: BTreeMap<Key, Rat>,
    meta: Option<Meta>,
}

impl FJExp {
    pub fn from_terms(
        qscale: i64,
        zscale: i64,
        prec: i64,
        terms: impl IntoIterator<Item = (Key, Rat)>,
        meta: Option<Meta>,
    ) -> Self {
        assert!(qscale > 0 && zscale > 0, "scales must be positive");
        let mut map: BTreeMap<Key, Rat> = BTreeMap::new();
        for (k, c) in terms {
            if k.0 < prec {
                *map.entry(k).or_insert_with(Rat::zero) += c;
            }
        }
        map.retain(|_, c| !c.is_zero());
        let mut out = FJExp {
            qscale,
            zscale,
            prec,
            terms: map,
            meta,
        };
        out.normalize();
        out
    }

    /// A q-series viewed as a Jacobi form of index 0.
    pub fn from_qseries(a: &QSeries, weight: Rat) -> Self {
        let s = a.qscale();
        let v = a.valuation().unwrap_or(a.prec());
        let cone = Rat::new((4 * v).into(), s.into());
        FJExp::from_terms(
            s,
            1,
            a.prec(),
            a.terms().iter().map(|(t, c)| ((*t, 0), c.clone())),
            Some(Meta::new(weight, int(0), Some(cone))),
        )
    }

    pub fn one(prec: i64) -> Self {
        Self::from_qseries(&QSeries::one(prec), int(0))
    }

    pub fn qscale(&self) -> i64 {
        self.qscale
    }

    pub fn zscale(&self) -> i64 {
        self.zscale
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn prec_q(&self) -> Rat {
        Rat::new(self.prec.into(), self.qscale.into())
    }

    pub fn terms(&self) -> &BTreeMap<Key, Rat> {
        &self.terms
    }

    pub fn meta(&self) -> Option<&Meta> {
        self.meta.as_ref()
    }

    pub fn index(&self) -> Option<&Rat> {
        self.meta.as_ref().map(|m| &m.index)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn with_meta(mut self, meta: Option<Meta>) -> Self {
        self.meta = meta;
        self
    }

    /// Attach a support bound after checking every stored term against it.
    pub fn with_cone(mut self, c: Rat) -> Result<Self> {
        let meta = self
            .meta
            .as_mut()
            .ok_or_else(|| Error::Precondition("support bound needs an index".into()))?;
        meta.cone = Some(c);
        if let Some(bad) = self.cone_violation() {
            return Err(Error::CrossCheck(format!("term {bad:?} lies outside the support bound")));
        }
        Ok(self)
    }

    /// First stored key violating the declared support bound, if any.
    pub fn cone_violation(&self) -> Option<Key> {
        let meta = self.meta.as_ref()?;
        let c = meta.cone.as_ref()?;
        self.terms.keys().copied().find(|&(t, r)| {
            let x = Rat::new(t.into(), self.qscale.into());
            let y = Rat::new(r.into(), self.zscale.into());
            let d = int(4) * x - c;
            d.is_negative() || &y * &y > &meta.index * d
        })
    }

    /// Coefficient of `q^x ζ^y`, or `None` beyond the precision.
    pub fn coeff(&self, x: &Rat, y: &Rat) -> Option<Rat> {
        if *x >= self.prec_q() {
            return None;
        }
        let t = crate::rat::to_i64(&(x * int(self.qscale)));
        let r = crate::rat::to_i64(&(y * int(self.zscale)));
        match (t, r) {
            (Some(t), Some(r)) => Some(self.terms.get(&(t, r)).cloned().unwrap_or_else(Rat::zero)),
            _ => Some(Rat::zero()),
        }
    }

    pub fn coeff_int(&self, n: i64, r: i64) -> Option<Rat> {
        self.coeff(&int(n), &int(r))
    }

    /// Lowest stored q-key.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().map(|k| k.0)
    }

    /// The ζ-polynomial at q-key `t`.
    pub fn level(&self, t: i64) -> BTreeMap<i64, Rat> {
        self.terms
            .range((t, i64::MIN)..=(t, i64::MAX))
            .map(|(&(_, r), c)| (r, c.clone()))
            .collect()
    }

    pub fn normalize(&mut self) {
        let mut gq = self.qscale.gcd(&self.prec);
        let mut gz = self.zscale;
        for &(t, r) in self.terms.keys() {
            gq = gq.gcd(&t);
            gz = gz.gcd(&r);
            if gq == 1 && gz == 1 {
                break;
            }
        }
        if gq > 1 || gz > 1 {
            self.qscale /= gq;
            self.prec /= gq;
            self.zscale /= gz;
            self.terms = std::mem::take(&mut self.terms)
                .into_iter()
                .map(|((t, r), c)| ((t / gq, r / gz), c))
                .collect();
        }
    }

    fn rescaled(&self, s: i64, w: i64) -> Rescaled {
        assert!(s % self.qscale == 0 && w % self.zscale == 0);
        let (ks, kw) = (s / self.qscale, w / self.zscale);
        (
            self.prec * ks,
            self.terms
                .iter()
                .map(|((t, r), c)| ((t * ks, r * kw), c.clone()))
                .collect(),
        )
    }

    fn aligned(&self, other: &Self) -> (i64, i64, Rescaled, Rescaled) {
        let s = self.qscale.lcm(&other.qscale);
        let w = self.zscale.lcm(&other.zscale);
        (s, w, self.rescaled(s, w), other.rescaled(s, w))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_terms(
            self.qscale,
            self.zscale,
            self.prec,
            self.terms.iter().map(|(k, v)| (*k, v * c)),
            self.meta.clone(),
        )
    }

    fn binary(&self, other: &Self, negate: bool) -> Self {
        let (s, w, (pa, a), (pb, b)) = self.aligned(other);
        Self::from_terms(
            s,
            w,
            pa.min(pb),
            a.into_iter()
                .chain(b.into_iter().map(|(k, c)| (k, if negate { -c } else { c }))),
            Meta::sum(&self.meta, &other.meta),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (s, w, (pa, a), (pb, b)) = self.aligned(other);
        let va = a.keys().next().map(|k| k.0).unwrap_or(pa);
        let vb = b.keys().next().map(|k| k.0).unwrap_or(pb);
        let prec = (pa + vb).min(pb + va);
        let prod = convolve(a.iter().map(|(k, c)| (*k, c)), b.iter().map(|(k, c)| (*k, c)), prec);
        Self::from_terms(s, w, prec, prod, Meta::product(&self.meta, &other.meta))
    }

    pub fn mul_q(&self, other: &QSeries, weight: Rat) -> Self {
        self.mul(&Self::from_qseries(other, weight))
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            let v = self.valuation().unwrap_or(0);
            let meta = self
                .meta
                .as_ref()
                .map(|_| Meta::new(int(0), int(0), Some(int(0))));
            return Self::from_terms(self.qscale, 1, self.prec - v, [((0, 0), int(1))], meta);
        }
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc.unwrap()
    }

    /// Exact quotient `self / den`.
    ///
    /// With `b₀(ζ)` the lowest q-level of `den`, each quotient level is the
    /// exact Laurent-polynomial quotient of the current residual level by
    /// `b₀`. A nonzero remainder aborts with the q-order where it occurred.
    /// The quotient's support bound is unknown and left unset.
    pub fn div(&self, den: &Self) -> Result<Self> {
        let (s, w, (pn, num), (pd, dterms)) = self.aligned(den);
        let t0 = dterms.keys().next().map(|k| k.0).ok_or(Error::NotInvertible)?;
        let mut den_levels: BTreeMap<i64, BTreeMap<i64, Rat>> = BTreeMap::new();
        for ((t, r), c) in dterms {
            den_levels.entry(t).or_default().insert(r, c);
        }
        let b0 = den_levels[&t0].clone();
        let mut residual: BTreeMap<i64, BTreeMap<i64, Rat>> = BTreeMap::new();
        for ((t, r), c) in num {
            residual.entry(t).or_default().insert(r, c);
        }
        let vc = residual.keys().next().map(|t| t - t0);
        let prec = match vc {
            Some(vc) => (pn - t0).min(pd - t0 + vc),
            None => pn - t0,
        };
        let mut out: Vec<(Key, Rat)> = Vec::new();
        while let Some((&tn, _)) = residual.iter().next() {
            let tq = tn - t0;
            if tq >= prec {
                break;
            }
            let level = residual.remove(&tn).unwrap();
            let q = laurent_div_exact(&level, &b0)
                .ok_or_else(|| Error::InexactDivision(Rat::new(tn.into(), s.into())))?;
            for (tt, dl) in den_levels.range(t0 + 1..) {
                let target = tq + tt;
                if target - t0 >= prec {
                    break;
                }
                let entry = residual.entry(target).or_default();
                for (rq, cq) in &q {
                    for (rd, cd) in dl {
                        let e = entry.entry(rq + rd).or_insert_with(Rat::zero);
                        *e -= cq * cd;
                    }
                }
                entry.retain(|_, c| !c.is_zero());
                if entry.is_empty() {
                    residual.remove(&target);
                }
            }
            out.extend(q.into_iter().map(|(r, c)| ((tq, r), c)));
        }
        let meta = match (&self.meta, &den.meta) {
            (Some(a), Some(b)) => Some(Meta::new(&a.weight - &b.weight, &a.index - &b.index, None)),
            _ => None,
        };
        Ok(Self::from_terms(s, w, prec, out, meta))
    }

    /// `φ(τ, dz)`: ζ-exponents scale by `d`, the index by `d²`.
    pub fn ud(&self, d: i64) -> Self {
        assert!(d > 0, "U_d needs d >= 1");
        let meta = self.meta.as_ref().map(|m| {
            Meta::new(m.weight.clone(), &m.index * int(d * d), m.cone.clone())
        });
        Self::from_terms(
            self.qscale,
            self.zscale,
            self.prec,
            self.terms.iter().map(|((t, r), c)| ((*t, r * d), c.clone())),
            meta,
        )
    }

    /// The index-raising operator `V_l` at weight `k`:
    /// `b(n, r) = Σ_{d | (n, r, l)} d^{k-1} a(nl/d², r/d)`, with `(0, 0, l) = l`.
    ///
    /// Requires integral exponents. The result is determined for `n < prec/l`.
    pub fn vl(&self, l: i64, k: i64) -> Result<Self> {
        if self.qscale != 1 || self.zscale != 1 {
            return Err(Error::FractionalScale {
                qscale: self.qscale,
                zscale: self.zscale,
            });
        }
        if l < 1 {
            return Err(Error::Precondition("V_l needs l >= 1".into()));
        }
        let prec = Integer::div_ceil(&self.prec, &l);
        let divs: Vec<(i64, Rat)> = divisors(l as u64)
            .into_iter()
            .map(|d| {
                let d = d as i64;
                let f = if k >= 1 {
                    pow(&int(d), (k - 1) as u32)
                } else {
                    Rat::one() / pow(&int(d), (1 - k) as u32)
                };
                (d, f)
            })
            .collect();
        let mut out: Vec<(Key, Rat)> = Vec::new();
        for (&(t, r), c) in &self.terms {
            for (d, f) in &divs {
                if (t * d * d) % l != 0 {
                    continue;
                }
                let n = t * d * d / l;
                if n % d != 0 || n >= prec {
                    continue;
                }
                out.push(((n, r * d), c * f));
            }
        }
        let meta = self.meta.as_ref().map(|m| {
            let cone = m.cone.as_ref().map(|c| {
                if c.is_negative() {
                    c * int(l)
                } else {
                    c / int(l)
                }
            });
            Meta::new(m.weight.clone(), &m.index * int(l), cone)
        });
        Ok(Self::from_terms(1, 1, prec, out, meta))
    }

    /// `φ(τ, 0)`.
    pub fn eval_z0(&self) -> QSeries {
        QSeries::from_terms(
            self.qscale,
            self.prec,
            self.terms.iter().map(|((t, _), c)| (*t, c.clone())),
        )
    }

    /// Multiply by `q^e`.
    pub fn shift_q(&self, e: &Rat) -> Self {
        let s = self.qscale.lcm(&crate::rat::denom_i64(e));
        let (p, terms) = self.rescaled(s, self.zscale);
        let off = crate::rat::to_i64(&(e * int(s))).unwrap();
        let meta = self.meta.as_ref().map(|m| {
            let cone = m.cone.as_ref().map(|c| c + int(4) * e);
            Meta::new(m.weight.clone(), m.index.clone(), cone)
        });
        Self::from_terms(
            s,
            self.zscale,
            p + off,
            terms.into_iter().map(|((t, r), c)| ((t + off, r), c)),
            meta,
        )
    }

    /// Drop everything at or beyond q-exponent `bound`.
    pub fn truncate(&self, bound: &Rat) -> Self {
        if *bound >= self.prec_q() {
            return self.clone();
        }
        let p = crate::rat::ceil_i64(&(bound * int(self.qscale)));
        Self::from_terms(self.qscale, self.zscale, p, self.terms.clone(), self.meta.clone())
    }
}

/// Exact quotient of Laurent polynomials, `None` if there is a remainder.
fn laurent_div_exact(num: &BTreeMap<i64, Rat>, den: &BTreeMap<i64, Rat>) -> Option<BTreeMap<i64, Rat>> {
    if num.is_empty() {
        return Some(BTreeMap::new());
    }
    let (&dl, _) = den.iter().next()?;
    let (&dh, lead) = den.iter().next_back()?;
    let mut rem = num.clone();
    let mut q = BTreeMap::new();
    let nl = *num.keys().next().unwrap();
    // Quotient exponents lie in [nl - dl, nh - dh].
    while let Some((&rh, c)) = rem.iter().next_back() {
        let e = rh - dh;
        if e < nl - dl {
            return None;
        }
        let f = c / lead;
        for (r, dc) in den {
            let entry = rem.entry(r + e).or_insert_with(Rat::zero);
            *entry -= &f * dc;
            if entry.is_zero() {
                rem.remove(&(r + e));
            }
        }
        q.insert(e, f);
    }
    Some(q)
}

impl Add for &FJExp {
    type Output = FJExp;
    fn add(self, rhs: &FJExp) -> FJExp {
        self.binary(rhs, false)
    }
}

impl Sub for &FJExp {
    type Output = FJExp;
    fn sub(self, rhs: &FJExp) -> FJExp {
        self.binary(rhs, true)
    }
}

impl Mul for &FJExp {
    type Output = FJExp;
    fn mul(self, rhs: &FJExp) -> FJExp {
        FJExp::mul(self, rhs)
    }
}

impl Neg for &FJExp {
    type Output = FJExp;
    fn neg(self) -> FJExp {
        self.scale(&int(-1))
    }
}

fn fmt_zeta(r: i64, w: i64, pm: bool) -> String {
    let y = Rat::new(r.into(), w.into());
    let sign = if pm { "±" } else { "" };
    if y.is_zero() {
        String::new()
    } else if y.is_one() && !pm {
        "ζ".to_string()
    } else if y.is_integer() {
        format!("ζ^{sign}{y}")
    } else {
        format!("ζ^{sign}({y})")
    }
}

impl fmt::Display for FJExp {
    /// Paper-style rendering: one parenthesized ζ-polynomial per q-power, with
    /// `ζ^±r` standing for `ζ^r + ζ^-r` whenever the two coefficients agree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut levels: BTreeMap<i64, BTreeMap<i64, Rat>> = BTreeMap::new();
        for (&(t, r), c) in &self.terms {
            levels.entry(t).or_default().insert(r, c.clone());
        }
        let mut first = true;
        for (t, level) in &levels {
            let mut parts: Vec<(Rat, String)> = Vec::new();
            let mut done: Vec<i64> = Vec::new();
            for (&r, c) in level.iter().rev() {
                if done.contains(&r) {
                    continue;
                }
                if r > 0 && level.get(&-r) == Some(c) {
                    parts.push((c.clone(), fmt_zeta(r, self.zscale, true)));
                    done.push(-r);
                } else {
                    parts.push((c.clone(), fmt_zeta(r, self.zscale, false)));
                }
            }
            let qpart = if *t == 0 { String::new() } else { fmt_exp(*t, self.qscale) };
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if parts.len() == 1 {
                let (c, z) = &parts[0];
                let body = format!("{qpart}{z}");
                fmt_coeff_term(c, &body, true, f)?;
            } else {
                write!(f, "{qpart}(")?;
                for (i, (c, z)) in parts.iter().enumerate() {
                    fmt_coeff_term(c, z, i == 0, f)?;
                }
                write!(f, ")")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        let p = self.prec_q();
        if p.is_integer() {
            write!(f, " + O(q^{p})")
        } else {
            write!(f, " + O(q^({p}))")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::frac;

    fn poly(level: &[(i64, i64)]) -> BTreeMap<i64, Rat> {
        level.iter().map(|&(r, c)| (r, int(c))).collect()
    }

    #[test]
    fn laurent_division() {
        // (ζ^2 - ζ^-2) / (ζ - ζ^-1) = ζ + ζ^-1
        let q = laurent_div_exact(&poly(&[(2, 1), (-2, -1)]), &poly(&[(1, 1), (-1, -1)])).unwrap();
        assert_eq!(q, poly(&[(1, 1), (-1, 1)]));
        assert!(laurent_div_exact(&poly(&[(2, 1)]), &poly(&[(1, 1), (0, 1)])).is_none());
        assert!(laurent_div_exact(&poly(&[(0, 1)]), &poly(&[(1, 1), (-1, -1)])).is_none());
    }

    #[test]
    fn division_round_trip() {
        let a = FJExp::from_terms(
            1,
            1,
            5,
            [((0, 1), int(1)), ((0, -1), int(2)), ((1, 0), frac(1, 3)), ((2, 3), int(-4))],
            None,
        );
        let b = FJExp::from_terms(1, 1, 5, [((0, 1), int(1)), ((0, -1), int(-1)), ((3, 2), int(5))], None);
        let prod = &a * &b;
        let back = prod.div(&b).unwrap();
        assert_eq!(back, a.truncate(&back.prec_q()));
        assert_eq!(back.prec(), 5);
    }

    #[test]
    fn inexact_division_reports_order() {
        let a = FJExp::from_terms(1, 1, 3, [((0, 0), int(1)), ((1, 0), int(1))], None);
        let b = FJExp::from_terms(1, 1, 3, [((0, 0), int(1)), ((0, 1), int(1))], None);
        assert_eq!(a.div(&b), Err(Error::InexactDivision(int(0))));
    }

    #[test]
    fn vl_identity_and_gcd_convention() {
        let a = FJExp::from_terms(1, 1, 6, [((0, 0), int(1)), ((1, 1), int(3)), ((2, 1), int(5))], None);
        assert_eq!(a.vl(1, 4).unwrap(), a);
        let b = a.vl(2, 4).unwrap();
        // n = 0: d ∈ {1, 2} both divide (0, 0, 2)
        assert_eq!(b.coeff_int(0, 0), Some(int(9)));
        assert_eq!(b.coeff_int(1, 1), Some(int(5)));
        assert_eq!(b.prec(), 3);
    }

    #[test]
    fn display_groups_symmetric_terms() {
        let a = FJExp::from_terms(
            1,
            1,
            2,
            [((0, 0), int(1)), ((1, 2), int(1)), ((1, -2), int(1)), ((1, 1), int(56)), ((1, -1), int(56)), ((1, 0), int(126))],
            None,
        );
        assert_eq!(a.to_string(), "1 + q(ζ^±2 + 56ζ^±1 + 126) + O(q^2)");
    }
}
