//! Cohen numbers H(r, N).

use num_traits::{Signed, Zero};

use super::arith::{divisors, kronecker, mobius, sigma};
use super::bernoulli::{l_value_neg, zeta_nonpositive};
use super::disc::fund_disc_decomp;
use crate::error::{Error, Result};
use crate::rat::{big, int, pow, to_i64, Rat};

/// H(r, N) for a non-negative rational N.
///
/// Returns 0 for non-integral N and when (-1)^r N ≡ 2, 3 mod 4, and ζ(1 - 2r)
/// for N = 0. Otherwise, writing (-1)^r N = D f^2 with D fundamental (or 1),
///
/// H(r, N) = L(1 - r, χ_D) Σ_{d | f} μ(d) χ_D(d) d^{r-1} σ_{2r-1}(f / d).
pub fn cohen_h(r: u32, n: &Rat) -> Result<Rat> {
    if r == 0 {
        return Err(Error::Precondition("cohen_h requires r >= 1".into()));
    }
    if n.is_negative() {
        return Err(Error::NegativeCohenArgument(n.clone()));
    }
    let Some(n) = to_i64(n) else {
        return Ok(Rat::zero());
    };
    cohen_h_int(r, n)
}

pub fn cohen_h_int(r: u32, n: i64) -> Result<Rat> {
    if n < 0 {
        return Err(Error::NegativeCohenArgument(int(n)));
    }
    if n == 0 {
        return Ok(zeta_nonpositive(1 - 2 * r as i64));
    }
    let delta = if r % 2 == 1 { -n } else { n };
    if matches!(delta.rem_euclid(4), 2 | 3) {
        return Ok(Rat::zero());
    }
    let dd = fund_disc_decomp(delta)?;
    let l = l_value_neg(r, dd.d)?;
    if l.is_zero() {
        return Ok(l);
    }
    let mut sum = Rat::zero();
    for e in divisors(dd.f as u64) {
        let mu = mobius(e);
        let chi = kronecker(dd.d, e as i64);
        if mu == 0 || chi == 0 {
            continue;
        }
        let term = pow(&int(e as i64), r - 1) * big(sigma(2 * r - 1, dd.f as u64 / e));
        sum += int(mu * chi) * term;
    }
    Ok(l * sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::frac;

    #[test]
    fn printed_values() {
        assert_eq!(cohen_h(3, &int(3)).unwrap(), frac(-2, 9));
        assert_eq!(cohen_h(3, &int(4)).unwrap(), frac(-1, 2));
        assert_eq!(cohen_h(3, &int(7)).unwrap(), frac(-16, 7));
        assert_eq!(cohen_h(1, &int(3)).unwrap(), frac(1, 3));
        assert_eq!(cohen_h(1, &int(4)).unwrap(), frac(1, 2));
        for r in 1..8 {
            assert_eq!(cohen_h(r, &int(0)).unwrap(), zeta_nonpositive(1 - 2 * r as i64));
        }
        // H(1, 0) = ζ(-1)
        assert_eq!(cohen_h(1, &int(0)).unwrap(), frac(-1, 12));
    }

    #[test]
    fn non_integral_and_congruence_zeros() {
        assert_eq!(cohen_h(3, &frac(7, 4)).unwrap(), int(0));
        assert_eq!(cohen_h(3, &int(1)).unwrap(), int(0)); // -1 ≡ 3 mod 4
        assert_eq!(cohen_h(3, &int(2)).unwrap(), int(0));
        assert_eq!(cohen_h(2, &int(2)).unwrap(), int(0));
        assert_eq!(cohen_h(2, &int(3)).unwrap(), int(0));
        assert!(cohen_h(2, &int(5)).unwrap() != int(0));
    }

    #[test]
    fn negative_argument_is_an_error() {
        assert!(matches!(
            cohen_h(3, &int(-1)),
            Err(Error::NegativeCohenArgument(_))
        ));
    }

    #[test]
    fn hurwitz_class_numbers() {
        // classical values H(N) for N = 3, 4, 7, 8, 11, 12, 15, 16, 20, 23
        let table = [
            (3, frac(1, 3)),
            (4, frac(1, 2)),
            (7, int(1)),
            (8, int(1)),
            (11, int(1)),
            (12, frac(4, 3)),
            (15, int(2)),
            (16, frac(3, 2)),
            (20, int(2)),
            (23, int(3)),
        ];
        for (n, h) in table {
            assert_eq!(cohen_h(1, &int(n)).unwrap(), h, "H({n})");
        }
    }
}
