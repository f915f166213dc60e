//! Exact elements of the cyclotomic field Q(ω_K), ω_K = e^{2πi/K}.

use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numtheory::divisors;
use crate::rat::{int, Rat};

pub const MAX_CONDUCTOR: i64 = 48;

/// Integer coefficients of Φ_K, lowest degree first.
fn cyclotomic_poly(k: i64) -> Vec<i64> {
    // x^K - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; k as usize + 1];
    num[0] = -1;
    num[k as usize] = 1;
    for d in divisors(k as u64) {
        let d = d as i64;
        if d == k {
            continue;
        }
        num = poly_div_exact(&num, &cyclotomic_poly(d));
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let lead = den[dn];
    debug_assert!(lead == 1);
    let qlen = rem.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

fn cyclotomic_table() -> &'static Vec<Vec<i64>> {
    static TABLE: OnceLock<Vec<Vec<i64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..=MAX_CONDUCTOR)
            .map(|k| if k == 0 { vec![] } else { cyclotomic_poly(k) })
            .collect()
    })
}

/// `Σ c_j ω_K^j` reduced to the power basis `1, ω, …, ω^{φ(K)-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloElt {
    conductor: i64,
    coords: Vec<Rat>,
}

impl CycloElt {
    /// Reduce a group-ring element given by its coefficients on `ω^0, …, ω^{K-1}`.
    pub fn from_powers(conductor: i64, powers: &[Rat]) -> Result<Self> {
        if !(1..=MAX_CONDUCTOR).contains(&conductor) {
            return Err(Error::ConductorTooLarge(conductor));
        }
        let k = conductor as usize;
        assert_eq!(powers.len(), k);
        let phi = &cyclotomic_table()[k];
        let deg = phi.len() - 1;
        let mut rem: Vec<Rat> = powers.to_vec();
        for i in (deg..k).rev() {
            let c = std::mem::take(&mut rem[i]);
            if c.is_zero() {
                continue;
            }
            // ω^i = -Σ_{j<deg} φ_j ω^{i-deg+j}
            for (j, pj) in phi.iter().enumerate().take(deg) {
                if *pj != 0 {
                    rem[i - deg + j] -= &c * int(*pj);
                }
            }
        }
        rem.truncate(deg);
        Ok(CycloElt {
            conductor,
            coords: rem,
        })
    }

    pub fn rational(conductor: i64, c: Rat) -> Result<Self> {
        let mut p = vec![Rat::zero(); conductor as usize];
        p[0] = c;
        Self::from_powers(conductor, &p)
    }

    pub fn conductor(&self) -> i64 {
        self.conductor
    }

    /// Coordinates in the power basis, length φ(K).
    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rat> {
        if self.coords.iter().skip(1).all(Zero::is_zero) {
            Some(self.coords.first().cloned().unwrap_or_else(Rat::zero))
        } else {
            None
        }
    }
}

impl fmt::Display for CycloElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*w{}", self.conductor)?,
                _ => write!(f, "({c})*w{}^{j}", self.conductor)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
