use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};

use super::kernel::convolve;
use crate::error::{Error, Result};
use crate::rat::{ceil_i64, denom_i64, int, Rat};

/// A truncated series `Σ c_t q^{t/s}` known for all exponents `t/s < prec/s`.
///
/// Values are kept canonical: no zero coefficients, no keys at or beyond
/// `prec`, and the scale reduced as far as the stored keys and the precision
/// allow. Equality is therefore equality of truncated series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    qscale: i64,
    prec: i64,
    terms: BTreeMap<i64, Rat>,
}

impl QSeries {
    pub fn from_terms(qscale: i64, prec: i64, terms: impl IntoIterator<Item = (i64, Rat)>) -> Self {
        assert!(qscale > 0, "q-scale must be positive");
        let mut map: BTreeMap<i64, Rat> = BTreeMap::new();
        for (t, c) in terms {
            if t < prec {
                *map.entry(t).or_insert_with(Rat::zero) += c;
            }
        }
        map.retain(|_, c| !c.is_zero());
        let mut out = QSeries {
            qscale,
            prec,
            terms: map,
        };
        out.normalize();
        out
    }

    /// `c + O(q^prec)` with `prec` in whole q-units.
    pub fn constant(c: Rat, prec: i64) -> Self {
        Self::from_terms(1, prec, [(0, c)])
    }

    pub fn one(prec: i64) -> Self {
        Self::constant(int(1), prec)
    }

    pub fn zero(prec: i64) -> Self {
        Self::from_terms(1, prec, [])
    }

    /// `q^e + O(...)` with precision `prec` in whole q-units.
    pub fn monomial(c: Rat, e: &Rat, prec: i64) -> Self {
        let s = denom_i64(e);
        let t = e * int(s);
        Self::from_terms(s, prec * s, [(crate::rat::to_i64(&t).unwrap(), c)])
    }

    pub fn qscale(&self) -> i64 {
        self.qscale
    }

    /// Precision in units of `q^{1/qscale}`.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Precision as a q-exponent.
    pub fn prec_q(&self) -> Rat {
        Rat::new(self.prec.into(), self.qscale.into())
    }

    pub fn terms(&self) -> &BTreeMap<i64, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest stored key.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Coefficient of `q^e`, or `None` when `e` lies beyond the precision.
    pub fn coeff(&self, e: &Rat) -> Option<Rat> {
        if *e >= self.prec_q() {
            return None;
        }
        let t = e * int(self.qscale);
        match crate::rat::to_i64(&t) {
            Some(t) => Some(self.terms.get(&t).cloned().unwrap_or_else(Rat::zero)),
            None => Some(Rat::zero()),
        }
    }

    /// Coefficient of `q^n` for an integer `n`.
    pub fn coeff_int(&self, n: i64) -> Option<Rat> {
        self.coeff(&int(n))
    }

    /// Reduce to the smallest q-scale; idempotent.
    pub fn normalize(&mut self) {
        let mut g = self.qscale.gcd(&self.prec);
        for t in self.terms.keys() {
            if g == 1 {
                break;
            }
            g = g.gcd(t);
        }
        if g > 1 {
            self.qscale /= g;
            self.prec /= g;
            self.terms = std::mem::take(&mut self.terms)
                .into_iter()
                .map(|(t, c)| (t / g, c))
                .collect();
        }
    }

    /// The same series with keys expressed at scale `s`, a multiple of the
    /// current scale. The result is not canonical; used for aligning operands.
    pub(crate) fn rescaled(&self, s: i64) -> (i64, BTreeMap<i64, Rat>) {
        assert_eq!(s % self.qscale, 0);
        let k = s / self.qscale;
        (
            self.prec * k,
            self.terms.iter().map(|(t, c)| (t * k, c.clone())).collect(),
        )
    }

    /// Drop everything at or beyond the q-exponent `bound`.
    pub fn truncate(&self, bound: &Rat) -> Self {
        if *bound >= self.prec_q() {
            return self.clone();
        }
        let p = ceil_i64(&(bound * int(self.qscale)));
        Self::from_terms(self.qscale, p, self.terms.clone())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_terms(
            self.qscale,
            self.prec,
            self.terms.iter().map(|(t, v)| (*t, v * c)),
        )
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: &Rat) -> Self {
        let s = self.qscale.lcm(&denom_i64(e));
        let (p, terms) = self.rescaled(s);
        let off = crate::rat::to_i64(&(e * int(s))).unwrap();
        Self::from_terms(s, p + off, terms.into_iter().map(|(t, c)| (t + off, c)))
    }

    /// `q -> q^c` for a positive integer `c`.
    pub fn substitute(&self, c: i64) -> Self {
        assert!(c > 0, "substitution exponent must be positive");
        Self::from_terms(
            self.qscale,
            self.prec * c,
            self.terms.iter().map(|(t, v)| (t * c, v.clone())),
        )
    }

    fn binary(&self, other: &Self, sign: i64) -> Self {
        let s = self.qscale.lcm(&other.qscale);
        let (pa, a) = self.rescaled(s);
        let (pb, b) = other.rescaled(s);
        let neg = sign < 0;
        Self::from_terms(
            s,
            pa.min(pb),
            a.into_iter()
                .chain(b.into_iter().map(|(t, c)| (t, if neg { -c } else { c }))),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let s = self.qscale.lcm(&other.qscale);
        let (pa, a) = self.rescaled(s);
        let (pb, b) = other.rescaled(s);
        let va = a.keys().next().copied().unwrap_or(pa);
        let vb = b.keys().next().copied().unwrap_or(pb);
        let prec = (pa + vb).min(pb + va);
        let prod = convolve(
            a.iter().map(|(t, c)| ((*t, 0), c)),
            b.iter().map(|(t, c)| ((*t, 0), c)),
            prec,
        );
        Self::from_terms(s, prec, prod.into_iter().map(|((t, _), c)| (t, c)))
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            // The precision of a^0 is unbounded; use that of `self` shifted
            // to start at the constant term.
            let v = self.valuation().unwrap_or(0);
            return Self::from_terms(self.qscale, self.prec - v, [(0, int(1))]);
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

    /// Multiplicative inverse. The precision drops by twice the valuation.
    pub fn inv(&self) -> Result<Self> {
        let v = self.valuation().ok_or(Error::NotInvertible)?;
        let len = self.prec - v;
        let c0 = &self.terms[&v];
        let inv0 = Rat::one() / c0;
        let a: Vec<Rat> = (0..len)
            .map(|j| self.terms.get(&(v + j)).cloned().unwrap_or_else(Rat::zero))
            .collect();
        let nz: Vec<usize> = (1..len as usize).filter(|&j| !a[j].is_zero()).collect();
        let mut b: Vec<Rat> = Vec::with_capacity(len as usize);
        b.push(inv0.clone());
        for n in 1..len as usize {
            let mut acc = Rat::zero();
            for &j in &nz {
                if j > n {
                    break;
                }
                if !b[n - j].is_zero() {
                    acc += &a[j] * &b[n - j];
                }
            }
            b.push(-acc * &inv0);
        }
        Ok(Self::from_terms(
            self.qscale,
            self.prec - 2 * v,
            b.into_iter().enumerate().map(|(n, c)| (n as i64 - v, c)),
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Coefficients of integral exponents `0 ≤ n < prec`, as a dense vector.
    /// Fails if some stored exponent is not integral.
    pub fn integral_coeffs(&self) -> Result<Vec<Rat>> {
        if self.qscale != 1 {
            return Err(Error::FractionalScale {
                qscale: self.qscale,
                zscale: 1,
            });
        }
        let mut out = vec![Rat::zero(); self.prec.max(0) as usize];
        for (t, c) in &self.terms {
            if *t < 0 {
                return Err(Error::Precondition("negative exponent".into()));
            }
            out[*t as usize] = c.clone();
        }
        Ok(out)
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        self.binary(rhs, 1)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self.binary(rhs, -1)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.scale(&int(-1))
    }
}

pub(crate) fn fmt_exp(t: i64, s: i64) -> String {
    let e = Rat::new(t.into(), s.into());
    if e.is_one() {
        "q".to_string()
    } else if e.is_integer() {
        format!("q^{e}")
    } else {
        format!("q^({e})")
    }
}

pub(crate) fn fmt_coeff_term(c: &Rat, body: &str, first: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let neg = c < &Rat::zero();
    let abs = if neg { -c.clone() } else { c.clone() };
    let sign = match (first, neg) {
        (true, true) => "-",
        (true, false) => "",
        (false, true) => " - ",
        (false, false) => " + ",
    };
    if body.is_empty() {
        write!(f, "{sign}{abs}")
    } else if abs.is_one() {
        write!(f, "{sign}{body}")
    } else if !abs.is_integer() {
        write!(f, "{sign}({abs}){body}")
    } else {
        write!(f, "{sign}{abs}{body}")
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (t, c) in &self.terms {
            let body = if *t == 0 { String::new() } else { fmt_exp(*t, self.qscale) };
            fmt_coeff_term(c, &body, first, f)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        let p = Rat::new(self.prec.into(), self.qscale.into());
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

    fn geometric(prec: i64) -> QSeries {
        QSeries::from_terms(1, prec, (0..prec).map(|t| (t, int(1))))
    }

    #[test]
    fn geometric_inverse() {
        let one_minus_q = QSeries::from_terms(1, 10, [(0, int(1)), (1, int(-1))]);
        assert_eq!(&one_minus_q * &geometric(10), QSeries::one(10));
        assert_eq!(one_minus_q.inv().unwrap(), geometric(10));
    }

    #[test]
    fn normalization_is_idempotent() {
        let a = QSeries::from_terms(24, 48, [(0, int(1)), (24, int(3))]);
        assert_eq!(a.qscale(), 1);
        assert_eq!(a.prec(), 2);
        let mut b = a.clone();
        b.normalize();
        assert_eq!(a, b);
        let c = QSeries::from_terms(8, 12, [(2, int(1))]);
        assert_eq!((c.qscale(), c.prec()), (4, 6));
    }

    #[test]
    fn product_precision_uses_valuations() {
        // q·(1 + O(q^3)) times (1 + O(q^5)) is known up to q^4
        let a = QSeries::from_terms(1, 3, [(1, int(1))]);
        let b = QSeries::from_terms(1, 5, [(0, int(1))]);
        assert_eq!((&a * &b).prec(), 3);
        let c = QSeries::from_terms(1, 5, [(2, int(1))]);
        assert_eq!((&a * &c).prec(), 5);
    }

    #[test]
    fn inverse_with_valuation() {
        let a = QSeries::from_terms(2, 10, [(1, int(2)), (3, int(1))]);
        let inv = a.inv().unwrap();
        assert_eq!(inv.prec_q(), int(4));
        let prod = &a * &inv;
        assert_eq!(prod, QSeries::from_terms(2, 9, [(0, int(1))]));
        assert!(QSeries::zero(3).inv().is_err());
    }

    #[test]
    fn substitution_and_shift() {
        let a = QSeries::from_terms(1, 3, [(0, int(1)), (1, int(5)), (2, int(7))]);
        assert_eq!(a.substitute(1), a);
        let b = a.substitute(2);
        assert_eq!(b.coeff_int(2), Some(int(5)));
        assert_eq!(b.coeff_int(3), Some(int(0)));
        assert_eq!(b.coeff_int(6), None);
        let c = a.shift(&frac(1, 3));
        assert_eq!(c.coeff(&frac(4, 3)), Some(int(5)));
        assert_eq!(c.prec_q(), frac(10, 3));
    }

    #[test]
    fn zero_power() {
        let a = QSeries::from_terms(1, 6, [(2, int(3))]);
        assert_eq!(a.pow(0), QSeries::one(4));
        assert_eq!(a.pow(2).coeff_int(4), Some(int(9)));
    }

    #[test]
    fn display() {
        let a = QSeries::from_terms(2, 6, [(0, int(1)), (1, int(-2)), (4, frac(1, 2))]);
        assert_eq!(a.to_string(), "1 - 2q^(1/2) + (1/2)q^2 + O(q^3)");
    }
}
