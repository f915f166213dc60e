use super::arith::{factorize, is_squarefree};
use crate::error::{Error, Result};

/// `delta = d * f^2` with `d` equal to 1 or a fundamental discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscDecomp {
    pub d: i64,
    pub f: i64,
}

/// 1, or a fundamental discriminant of a quadratic field.
pub fn is_fundamental(d: i64) -> bool {
    if d == 1 {
        return true;
    }
    if d == 0 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

pub fn fund_disc_decomp(delta: i64) -> Result<DiscDecomp> {
    if delta == 0 || matches!(delta.rem_euclid(4), 2 | 3) {
        return Err(Error::NotDiscriminant(delta));
    }
    let mut kernel: i64 = delta.signum();
    let mut root: i64 = 1;
    for (p, e) in factorize(delta.unsigned_abs()) {
        let p = p as i64;
        if e % 2 == 1 {
            kernel *= p;
        }
        root *= p.pow(e / 2);
    }
    let decomp = if kernel.rem_euclid(4) == 1 {
        DiscDecomp { d: kernel, f: root }
    } else {
        // kernel ≡ 2, 3 mod 4, so 4 | delta / kernel and root is even
        DiscDecomp {
            d: 4 * kernel,
            f: root / 2,
        }
    };
    debug_assert_eq!(decomp.d * decomp.f * decomp.f, delta);
    debug_assert!(is_fundamental(decomp.d));
    Ok(decomp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamental_discriminants() {
        for d in [1, -3, -4, -7, -8, 5, 8, 12, -15, -20, 21, -24, 28] {
            assert!(is_fundamental(d), "{d}");
        }
        for d in [0, -1, 4, -12, -16, 9, 16, -27, 2, 3, 20 * 4, -36] {
            assert!(!is_fundamental(d), "{d}");
        }
    }

    #[test]
    fn decomposition() {
        assert_eq!(fund_disc_decomp(12).unwrap(), DiscDecomp { d: 12, f: 1 });
        assert_eq!(fund_disc_decomp(-4).unwrap(), DiscDecomp { d: -4, f: 1 });
        assert_eq!(fund_disc_decomp(-27).unwrap(), DiscDecomp { d: -3, f: 3 });
        assert_eq!(fund_disc_decomp(-16).unwrap(), DiscDecomp { d: -4, f: 2 });
        assert_eq!(fund_disc_decomp(36).unwrap(), DiscDecomp { d: 1, f: 6 });
        assert_eq!(fund_disc_decomp(1).unwrap(), DiscDecomp { d: 1, f: 1 });
        assert_eq!(fund_disc_decomp(-48).unwrap(), DiscDecomp { d: -3, f: 4 });
        assert!(fund_disc_decomp(-6).is_err());
        assert!(fund_disc_decomp(0).is_err());
        assert!(fund_disc_decomp(7).is_err());
    }

    #[test]
    fn decomposition_brute_force() {
        // Oracle: search all f with f^2 | delta for the unique fundamental cofactor.
        for delta in -400i64..=400 {
            if delta == 0 || matches!(delta.rem_euclid(4), 2 | 3) {
                continue;
            }
            let found: Vec<_> = (1..=20i64)
                .filter(|f| delta % (f * f) == 0 && is_fundamental(delta / (f * f)))
                .collect();
            assert_eq!(found.len(), 1, "{delta}");
            let got = fund_disc_decomp(delta).unwrap();
            assert_eq!(got.f, found[0]);
        }
    }
}
