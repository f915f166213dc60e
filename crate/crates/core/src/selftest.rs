//! Cross-checks between the library and the independent oracles, grouped
//! into the six acceptance criteria plus a few extra checks run by `jf selftest`.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use crate::catalog::{delta, eisenstein, jacobi_eis, phi, theta, theta_const};
use crate::error::Result;
use crate::identities::{first_mismatch, verify_all, Equation};
use crate::lattice::{enumerate, jacobi_theta_e8, LatticeTag, U2, U8};
use crate::numtheory::cohen_h_int;
use crate::oracles;
use crate::rat::{frac, int, is_integral, Rat};
use crate::representations::{
    count_bruteforce, delta16, formula_delta8, formula_r8, r16, r_a8_formula, r_a8_odd_formula, tau_all_routes,
    CountKind, CountQuery,
};
use crate::series::{FJExp, QSeries};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} [tolerance 0, exact] {} ({:.2?})",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed
        )
    }
}

/// Runs `body`, which returns `Ok(detail)` on success and `Err(detail)` on a
/// failed comparison; library errors also count as failures.
fn check(name: &str, limit: Option<Duration>, body: impl FnOnce() -> Result<std::result::Result<String, String>>) -> Check {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, format!("error: {e}")),
    };
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
            detail = format!("{detail}; exceeded the {limit:?} budget");
        }
    }
    Check { name: name.to_string(), passed, detail, elapsed }
}

fn fail(msg: String) -> Result<std::result::Result<String, String>> {
    Ok(Err(msg))
}

/// Every registry entry at its default precision.
pub fn identity_suite() -> Check {
    check("1 identity suite", Some(Duration::from_secs(120)), || {
        let reports = verify_all("*", None)?;
        if let Some(r) = reports.iter().find(|r| !r.passed()) {
            return fail(r.to_string());
        }
        Ok(Ok(format!("{} identities pass", reports.len())))
    })
}

fn fj_coeff(a: &FJExp, n: i64, r: i64) -> Rat {
    a.coeff_int(n, r).unwrap_or_default()
}

/// Printed Fourier coefficients of Jacobi–Eisenstein series.
pub fn printed_fixtures() -> Check {
    check("2 printed-coefficient fixtures", None, || {
        let e41 = jacobi_eis(4, 1, 2)?;
        let e44 = jacobi_eis(4, 4, 2)?;
        let got41: Vec<Rat> = (0..=2).map(|r| fj_coeff(&e41, 1, r)).collect();
        let got44: Vec<Rat> = (0..=3).map(|r| fj_coeff(&e44, 1, r)).collect();
        if got41 != [int(126), int(56), int(1)] {
            return fail(format!("e41(1, 0..2) = {got41:?}"));
        }
        if got44 != [int(56), int(56), int(28), int(8)] {
            return fail(format!("e44(1, 0..3) = {got44:?}"));
        }
        let e10 = fj_coeff(&jacobi_eis(10, 1, 2)?, 1, 1);
        let e12 = fj_coeff(&jacobi_eis(12, 1, 2)?, 1, 1);
        if e10 != frac(-860776, 43867) || e12 != frac(339848, 77683) {
            return fail(format!("e10,1(1,1) = {e10}, e12,1(1,1) = {e12}"));
        }
        let p = 8;
        let lhs = &jacobi_eis(12, 1, p)?.eval_z0() - &eisenstein(12, p)?;
        let rhs = delta(p)?.scale(&frac(304819200, 53678953));
        let eq = Equation { label: "E12,1(τ,0) − E12".into(), lhs: lhs.into(), rhs: rhs.into() };
        if let Some(m) = first_mismatch(&eq, p)? {
            return fail(format!("{m:?}"));
        }
        Ok(Ok("e41, e44, e10,1, e12,1 and E12,1(τ,0) − E12 = cΔ".into()))
    })
}

fn brute(kind: CountKind, m: u32, n: i64) -> Result<i64> {
    Ok(count_bruteforce(&CountQuery::new(kind, m, n)?) as i64)
}

fn qcoeff(a: &QSeries, n: i64) -> Rat {
    a.coeff_int(n).unwrap_or_default()
}

/// Brute-force counts against the divisor-sum, Cohen-number and series sides.
pub fn counting() -> Check {
    check("3 counting cross-validation", Some(Duration::from_secs(60)), || {
        let t00_8 = theta_const(0, 0, 41)?.pow(8).substitute(2);
        let t10_8 = theta_const(1, 0, 42)?.pow(8);
        for n in 0..=40 {
            let b = brute(CountKind::Squares, 8, n)?;
            if n >= 1 && (b != formula_r8(n)? || int(b) != qcoeff(&t00_8, n)) {
                return fail(format!("r8({n}): brute {b}, formula {}, series {}", formula_r8(n)?, qcoeff(&t00_8, n)));
            }
            let d = brute(CountKind::Triangular, 8, n)?;
            let s = qcoeff(&t10_8, n + 1) / int(256);
            if d != formula_delta8(n)? || int(d) != s {
                return fail(format!("δ8({n}): brute {d}, formula {}, series {s}", formula_delta8(n)?));
            }
        }
        for a in 1..=5 {
            for n in 0..=30 {
                let b = brute(CountKind::Figurate(a), 8, n)?;
                let f = r_a8_formula(a, n)?;
                let bo = brute(CountKind::FigurateOdd(a), 8, n)?;
                let fo = r_a8_odd_formula(a, n)?;
                if b != f || bo != fo {
                    return fail(format!("a = {a}, n = {n}: R {b} vs {f}, R^odd {bo} vs {fo}"));
                }
            }
        }
        let t10_16 = theta_const(1, 0, 24)?.pow(16);
        let t01_16 = theta_const(0, 1, 22)?.pow(16).substitute(2);
        for n in (1..=21).step_by(2) {
            let d = int(brute(CountKind::Triangular, 16, n)?);
            let r = int(brute(CountKind::Squares, 16, n)?);
            let ds = qcoeff(&t10_16, n + 2) / int(65536);
            let rs = -qcoeff(&t01_16, n);
            if d != delta16(n)? || d != ds || r != r16(n)? || r != rs {
                return fail(format!("n = {n}: δ16 {d}/{}/{ds}, r16 {r}/{}/{rs}", delta16(n)?, r16(n)?));
            }
        }
        Ok(Ok("r8, δ8 (n ≤ 40); R_a8, R_a8^odd (a ≤ 5, n ≤ 30); δ16, r16 (odd n ≤ 21)".into()))
    })
}

/// All τ routes against each other and against the product expansion.
pub fn tau_routes() -> Check {
    check("4 tau multi-route agreement", None, || {
        let oracle = oracles::ramanujan_tau(51);
        let mut routes = 0;
        for n in 1..=50 {
            let want = Rat::from(oracle[n as usize].clone());
            for (route, v) in tau_all_routes(n)? {
                routes += 1;
                if v != want || !is_integral(&v) {
                    return fail(format!("τ({n}) via {route} = {v}, expected {want}"));
                }
            }
        }
        if oracle[1] != BigInt::from(1) || oracle[2] != BigInt::from(-24) {
            return fail("τ(1), τ(2) fixtures".into());
        }
        Ok(Ok(format!("n ≤ 50, {routes} route evaluations")))
    })
}

/// Root counts and the two E8 Jacobi theta series.
pub fn lattice_fixtures() -> Check {
    check("5 lattice fixtures", None, || {
        let e7 = enumerate(LatticeTag::E7, 2)?[&2];
        let a7 = enumerate(LatticeTag::A7, 2)?[&2];
        if (e7, a7) != (126, 56) {
            return fail(format!("norm-2 counts E7 {e7}, A7 {a7}"));
        }
        let p = 6;
        for (label, u, m) in [("Θu2 = E41", U2, 1), ("Θu8 = E44", U8, 4)] {
            let eq = Equation {
                label: label.into(),
                lhs: jacobi_theta_e8(&u, p)?.into(),
                rhs: jacobi_eis(4, m, p)?.into(),
            };
            if let Some(mm) = first_mismatch(&eq, p)? {
                return fail(format!("{mm:?}"));
            }
        }
        Ok(Ok("E7 126, A7 56; Θu2 = E41, Θu8 = E44 to q^6".into()))
    })
}

/// Deterministic versions of the property suites.
pub fn properties() -> Check {
    check("6 property suites", None, || {
        let p = 10;
        let (a, b, c) = (eisenstein(4, p)?, theta_const(0, 0, p)?, crate::catalog::eta(p)?);
        if &(&a + &b) + &c != &a + &(&b + &c) || a.mul(&(&b + &c)) != &a.mul(&b) + &a.mul(&c) || a.mul(&b) != b.mul(&a)
        {
            return fail("q-series ring laws".into());
        }
        let th = theta(p)?;
        let f = jacobi_eis(4, 1, p)?;
        let prod = th.pow(8).mul(&f);
        let back = prod.div(&f)?;
        let eq = Equation { label: "(ϑ⁸E41)/E41".into(), lhs: back.into(), rhs: th.pow(8).into() };
        if let Some(m) = first_mismatch(&eq, p - 1)? {
            return fail(format!("fj_div round trip: {m:?}"));
        }
        for (label, form) in [
            ("ϑ", th.clone()),
            ("E44", jacobi_eis(4, 4, p)?),
            ("φ02", phi(2, p)?),
            ("ϑ²φ03", th.pow(2).mul(&phi(3, p)?)),
        ] {
            if let Some(k) = form.cone_violation() {
                return fail(format!("{label} has support outside its cone at {k:?}"));
            }
        }
        for r in 1..=5 {
            for n in 1..=200 {
                if cohen_h_int(r, n)? != oracles::cohen_h_by_definition(r, n) {
                    return fail(format!("H({r}, {n}) disagrees with the square-divisor definition"));
                }
            }
        }
        for (k, m) in [(4, 1), (4, 2), (4, 3), (4, 4), (6, 1), (6, 2), (6, 4), (8, 1)] {
            let e = jacobi_eis(k, m, 8)?;
            if let Some((key, c)) = e.terms().iter().find(|(_, c)| !is_integral(c)) {
                return fail(format!("E{k},{m} has coefficient {c} at {key:?}"));
            }
        }
        Ok(Ok("ring laws, fj_div, cones, Cohen dual definition (N ≤ 200), Eisenstein integrality".into()))
    })
}

/// The six acceptance criteria, in order.
pub fn acceptance() -> Vec<Check> {
    vec![identity_suite(), printed_fixtures(), counting(), tau_routes(), lattice_fixtures(), properties()]
}

/// Extra oracle comparisons beyond the acceptance criteria.
pub fn extras() -> Vec<Check> {
    vec![
        check("Eisenstein series against naive divisor sums", None, || {
            for k in [4u32, 6, 8, 10, 12] {
                let e = eisenstein(k, 30)?;
                let want = oracles::eisenstein_coeffs(k, 30);
                for (n, w) in want.iter().enumerate() {
                    if qcoeff(&e, n as i64) != *w {
                        return fail(format!("E{k} at q^{n}"));
                    }
                }
            }
            Ok(Ok("E4 … E12 to q^30".into()))
        }),
        check("theta constants against integer series", None, || {
            let len = 40;
            let sq = oracles::int_pow(&oracles::squares_series(len), 4, len);
            let tri = oracles::int_pow(&oracles::triangular_series(len), 4, len);
            let t00 = theta_const(0, 0, len as i64)?.pow(4).substitute(2);
            let t10 = theta_const(1, 0, len as i64 + 1)?.pow(4);
            for n in 0..len {
                if qcoeff(&t00, n as i64) != Rat::from(sq[n].clone())
                    || t10.coeff(&frac(2 * n as i64 + 1, 2)).unwrap_or_default() != Rat::from(tri[n].clone()) * int(16)
                {
                    return fail(format!("θ⁴ at q^{n}"));
                }
            }
            Ok(Ok("θ00⁴(2τ) and q^{-1/2}θ10⁴ to q^40".into()))
        }),
        check("Cohen numbers at r = 1 against reduced forms", None, || {
            for n in 0..=500 {
                if cohen_h_int(1, n)? != oracles::hurwitz_class_number(n) {
                    return fail(format!("H({n})"));
                }
            }
            Ok(Ok("N ≤ 500".into()))
        }),
    ]
}

/// Acceptance criteria followed by the extra checks.
pub fn selftest() -> Vec<Check> {
    let mut v = acceptance();
    v.extend(extras());
    v
}
