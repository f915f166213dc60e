use num_traits::Zero;

use super::kit::*;
use super::{Equation, Identity};
use crate::catalog::{delta, eps2, eta, phi, theta, theta_const, wp_theta2_weierstrass};
use crate::error::Result;
use crate::lattice::{jacobi_theta_e8, U2, U8};
use crate::numtheory::{is_square, isqrt, zeta_nonpositive};
use crate::rat::{frac, int, Rat};
use crate::representations::{delta16, formula_delta8, formula_r8, r16, tau, TauRoute};
use crate::series::{evaluate_at, FJExp, QSeries};

pub static REGISTRY: &[Identity] = &[
    Identity {
        id: "T31-theta8",
        description: "ϑ⁸(τ,z) = E_{4,1}(τ,2z) − E_{4,4}(τ,z)",
        default_prec: 8,
        build: t31_theta8,
    },
    Identity {
        id: "T31-f4",
        description: "coefficients of ϑ⁸ from Cohen numbers H(3,·)",
        default_prec: 8,
        build: t31_f4,
    },
    Identity {
        id: "T31-wp8",
        description: "12℘ϑ⁸ = η⁶ϑ⁶φ_{0,1} = E_{6,1}(τ,2z) − E_{6,4}",
        default_prec: 8,
        build: t31_wp8,
    },
    Identity {
        id: "T31-f6",
        description: "coefficients of 12℘ϑ⁸ from Cohen numbers H(5,·)",
        default_prec: 8,
        build: t31_f6,
    },
    Identity {
        id: "R31-a",
        description: "ϑ(τ,3z)ϑ⁷ = E_{4,8} − E_{4,2}(τ,2z)",
        default_prec: 8,
        build: r31_a,
    },
    Identity {
        id: "R31-b",
        description: "ϑ²(τ,2z)ϑ⁶φ_{0,2} = E_{4,1}(τ,3z) − E_{4,9}",
        default_prec: 8,
        build: r31_b,
    },
    Identity {
        id: "R31-c",
        description: "ϑ²(τ,3z)ϑ⁶ = E_{4,3}(τ,2z) − E_{4,12}",
        default_prec: 8,
        build: r31_c,
    },
    Identity {
        id: "L32-e8",
        description: "ϑ⁸ = Θ_{E8,u2}(τ,2z) − Θ_{E8,u8}; Θ_{E8,u2} = E_{4,1}, Θ_{E8,u8} = E_{4,4}",
        default_prec: 8,
        build: l32_e8,
    },
    Identity {
        id: "L21-e10",
        description: "E_{10,1} = (23037 E_4E_{6,1} + 20830 E_6E_{4,1})/43867",
        default_prec: 8,
        build: l21_e10,
    },
    Identity {
        id: "L21-e12",
        description: "E_{12,1} in terms of E_{4,1}, E_{6,1}; E_{12,1}(τ,0) = E_12 + cΔ and τ(n) via H(11,·)",
        default_prec: 8,
        build: l21_e12,
    },
    Identity {
        id: "C33-eta8",
        description: "η⁸ as the pullback of ϑ⁸ at (3τ, 2τ) and the f_4 convolution",
        default_prec: 8,
        build: c33_eta8,
    },
    Identity {
        id: "S32-spec",
        description: "E_{k,m}(τ,1/2) for k = 4, 6 as combinations of E_k(τ), E_k(2τ), E_k(4τ)",
        default_prec: 8,
        build: s32_specializations,
    },
    Identity {
        id: "S32-cohen",
        description: "divisor-sum evaluations of Σ H(3,·) and Σ H(5,·) over r of fixed parity",
        default_prec: 8,
        build: s32_cohen,
    },
    Identity {
        id: "S32-t10-8",
        description: "θ_10⁸ = ϑ⁸(τ,1/2) = (16/15)(E_4(τ) − E_4(2τ)) and δ_8 via H(3,·)",
        default_prec: 8,
        build: s32_t10_8,
    },
    Identity {
        id: "S32-t01-8",
        description: "θ_01⁸(2τ) = q²ϑ⁸(2τ,τ) = −E_4/15 + 16E_4(2τ)/15 and r_8 via H(3,·)",
        default_prec: 8,
        build: s32_t01_8,
    },
    Identity {
        id: "S32-eps2",
        description: "2ε_2θ_10⁸ = θ_10⁸(θ_00⁴ + θ_01⁴) = (64/63)(E_6(2τ) − E_6) and the (τ+1)/2 value",
        default_prec: 8,
        build: s32_eps2,
    },
    Identity {
        id: "P41",
        description: "E_{8,m}(τ,1/2) for m = 2, 4, 8 with the cusp form η¹²θ_10⁴",
        default_prec: 8,
        build: p41,
    },
    Identity {
        id: "P42",
        description: "E_{6,1}(τ,1/2), E_{6,3}(τ,1/2) and the coefficients of η¹²(2τ)",
        default_prec: 8,
        build: p42,
    },
    Identity {
        id: "P43",
        description: "E_{6,3}(τ,1/3) and the coefficients of (η(τ)η(3τ))⁶",
        default_prec: 8,
        build: p43,
    },
    Identity {
        id: "T44-theta16",
        description: "(12℘)^kϑ⁸ for k = 2, 3, 4 and ϑ¹⁶ with cusp corrections",
        default_prec: 6,
        build: t44,
    },
    Identity {
        id: "S42-t10-16",
        description: "three expressions for θ_10¹⁶, θ_01¹⁶(2τ), δ_16 and r_16",
        default_prec: 8,
        build: s42_t10_16,
    },
    Identity {
        id: "S43-theta24",
        description: "ϑ²⁴ with cusp corrections and three expressions for θ_10²⁴",
        default_prec: 6,
        build: s43_theta24,
    },
    Identity {
        id: "S41-eta",
        description: "η¹²θ_10⁴ = 2⁴η⁸(τ)η⁸(2τ), η⁶θ_10⁶ = 2⁶η¹²(2τ), 2η³ = θ_00θ_01θ_10",
        default_prec: 8,
        build: s41_eta,
    },
    Identity {
        id: "S42-phivals",
        description: "φ_{0,m} at z = 1/2 and z = (τ+1)/2, and 4φ_{0,4} = φ_{0,1}φ_{0,3} − φ_{0,2}²",
        default_prec: 8,
        build: s42_phivals,
    },
    Identity {
        id: "INTRO-jacobi",
        description: "r_8 and δ_8 divisor sums as coefficients of θ_01⁸(2τ), θ_00⁸(2τ), θ_10⁸",
        default_prec: 8,
        build: intro_jacobi,
    },
    Identity {
        id: "H-hol",
        description: "η⁶φ_{0,1}, η³φ_{0,2}, η²φ_{0,3}, η²ϑ²φ_{0,2} are holomorphic and η²φ_{0,4} is cuspidal",
        default_prec: 8,
        build: h_hol,
    },
];

fn half() -> Rat {
    frac(1, 2)
}

fn zero() -> Rat {
    Rat::zero()
}

fn t31_theta8(p: i64) -> Result<Vec<Equation>> {
    let rhs = &ejac(4, 1, p)?.ud(2) - &ejac(4, 4, p)?;
    Ok(vec![fjeq("theta8", theta8(p)?, rhs)])
}

fn t31_f4(p: i64) -> Result<Vec<Equation>> {
    Ok(vec![fjeq("f4", theta8(p)?, fj_from_formula(p, f4_formula)?)])
}

/// 12℘ϑ⁸ from the Weierstrass expansion of ℘.
fn wp12_theta8(p: i64) -> Result<FJExp> {
    Ok(wp_theta2_weierstrass(p)?.mul(&theta(p)?.pow(6)).scale(&int(12)))
}

fn eta6_theta6_phi1(p: i64) -> Result<FJExp> {
    Ok(theta(p)?.pow(6).mul(&phi(1, p)?).mul_q(&eta(p)?.pow(6), int(3)))
}

fn t31_wp8(p: i64) -> Result<Vec<Equation>> {
    let mid = eta6_theta6_phi1(p)?;
    let rhs = &ejac(6, 1, p)?.ud(2) - &ejac(6, 4, p)?;
    Ok(vec![
        fjeq("12℘ϑ⁸ = η⁶ϑ⁶φ01", wp12_theta8(p)?, mid.clone()),
        fjeq("η⁶ϑ⁶φ01 = E61(2z) − E64", mid, rhs),
    ])
}

fn t31_f6(p: i64) -> Result<Vec<Equation>> {
    Ok(vec![fjeq("f6", wp12_theta8(p)?, fj_from_formula(p, f6_formula)?)])
}

fn r31_a(p: i64) -> Result<Vec<Equation>> {
    let th = theta(p)?;
    let lhs = th.ud(3).mul(&th.pow(7));
    let rhs = &ejac(4, 8, p)? - &ejac(4, 2, p)?.ud(2);
    Ok(vec![fjeq("ϑ(3z)ϑ⁷", lhs, rhs)])
}

fn r31_b(p: i64) -> Result<Vec<Equation>> {
    let th = theta(p)?;
    let lhs = th.ud(2).pow(2).mul(&th.pow(6)).mul(&phi(2, p)?);
    let rhs = &ejac(4, 1, p)?.ud(3) - &ejac(4, 9, p)?;
    Ok(vec![fjeq("ϑ²(2z)ϑ⁶φ02", lhs, rhs)])
}

fn r31_c(p: i64) -> Result<Vec<Equation>> {
    let th = theta(p)?;
    let lhs = th.ud(3).pow(2).mul(&th.pow(6));
    let rhs = &ejac(4, 3, p)?.ud(2) - &ejac(4, 12, p)?;
    Ok(vec![fjeq("ϑ²(3z)ϑ⁶", lhs, rhs)])
}

fn l32_e8(p: i64) -> Result<Vec<Equation>> {
    let t2 = jacobi_theta_e8(&U2, p)?;
    let t8 = jacobi_theta_e8(&U8, p)?;
    Ok(vec![
        fjeq("ϑ⁸ = Θu2(2z) − Θu8", theta8(p)?, &t2.ud(2) - &t8),
        fjeq("Θu2 = E41", t2, ejac(4, 1, p)?),
        fjeq("Θu8 = E44", t8, ejac(4, 4, p)?),
    ])
}

fn l21_e10(p: i64) -> Result<Vec<Equation>> {
    let (e4, e6) = (e_k(4, p)?, e_k(6, p)?);
    let rhs = lin_fj(&[
        (frac(23037, 43867), &ejac(6, 1, p)?.mul_q(&e4, int(4))),
        (frac(20830, 43867), &ejac(4, 1, p)?.mul_q(&e6, int(6))),
    ]);
    Ok(vec![fjeq("E10,1", ejac(10, 1, p)?, rhs)])
}

fn l21_e12(p: i64) -> Result<Vec<Equation>> {
    let (e4, e6, e12) = (e_k(4, p)?, e_k(6, p)?, e_k(12, p)?);
    let rhs = lin_fj(&[
        (frac(27850, 77683), &ejac(6, 1, p)?.mul_q(&e6, int(6))),
        (frac(49833, 77683), &ejac(4, 1, p)?.mul_q(&e4.pow(2), int(8))),
    ]);
    let d = delta(p)?;
    let e12_0 = lin_q(&[(int(1), &e12), (frac(304819200, 53678953), &d)]);
    let tau_h11 = qsum(1, p, |n| Ok(Some(tau(n, TauRoute::ViaH11)?)))?;
    Ok(vec![
        fjeq("E12,1", ejac(12, 1, p)?, rhs),
        qeq("E12,1(τ,0)", ejac(12, 1, p)?.eval_z0(), e12_0),
        qeq("τ(n) via H(11,·)", d, tau_h11),
    ])
}

fn c33_eta8(p: i64) -> Result<Vec<Equation>> {
    let target = frac(p, 3);
    let eta8 = eta(p + 1)?.pow(8);
    let via_theta = spec_to(&theta8, &frac(2, 3), &zero(), &int(4), &target)?.substitute(3);
    let a = spec_to(&|t| ejac(4, 1, t), &frac(1, 3), &zero(), &int(1), &target)?.substitute(3);
    let b = spec_to(&|t| ejac(4, 4, t), &frac(2, 3), &zero(), &int(4), &target)?.substitute(3);
    let table = theta8(linear_window(3, 2, 5, p) + 1)?;
    let conv = linear_sum(3, 2, 5, p, |m, r| Ok(table.coeff_int(m, r).unwrap_or_default()))?;
    Ok(vec![
        qeq("η⁸ = q^{16/3}ϑ⁸(3τ,2τ)", eta8.clone(), via_theta),
        qeq("η⁸ via E41, E44", eta8.clone(), &a - &b),
        qeq("∏(1−q^n)⁸ convolution", eta8.shift(&frac(-1, 3)), conv),
    ])
}

fn s32_specializations(p: i64) -> Result<Vec<Equation>> {
    let (e4, e6) = (e_k(4, p)?, e_k(6, p)?);
    let (e4_2, e4_4, e6_2) = (e4.substitute(2), e4.substitute(4), e6.substitute(2));
    let k4_even = lin_q(&[(frac(16, 15), &e4_2), (frac(-1, 15), &e4)]);
    let k4_odd = lin_q(&[(frac(1, 15), &e4), (frac(-6, 5), &e4_2), (frac(32, 15), &e4_4)]);
    Ok(vec![
        qeq("E42(1/2)", at_half(&ejac(4, 2, p)?)?, k4_even.clone()),
        qeq("E44(1/2)", at_half(&ejac(4, 4, p)?)?, k4_even),
        qeq(
            "E62(1/2)",
            at_half(&ejac(6, 2, p)?)?,
            lin_q(&[(frac(64, 63), &e6_2), (frac(-1, 63), &e6)]),
        ),
        // printed as 127/63 E6 − 64/63 E6(2τ), which already fails at q¹
        qeq(
            "E64(1/2)",
            at_half(&ejac(6, 4, p)?)?,
            lin_q(&[(frac(64, 63), &e6_2), (frac(-1, 63), &e6)]),
        ),
        qeq("E41(1/2)", at_half(&ejac(4, 1, p)?)?, k4_odd.clone()),
        qeq("E43(1/2)", at_half(&ejac(4, 3, p)?)?, k4_odd),
    ])
}

/// `Σ_{r ∈ Z, r² < N, r ≡ parity} H(k, N − r²)`.
fn parity_sum(k: u32, big_n: i64, parity: i64) -> Result<Rat> {
    let b = isqrt(big_n);
    let mut acc = zero();
    for r in -b..=b {
        if r.rem_euclid(2) == parity && r * r < big_n {
            acc += h(k, big_n - r * r)?;
        }
    }
    Ok(acc)
}

fn s32_cohen(p: i64) -> Result<Vec<Equation>> {
    let odd = |f: &dyn Fn(i64) -> Result<Rat>| qsum(1, p, |n| if n % 2 == 1 { f(n).map(Some) } else { Ok(None) });
    let mut eqs = Vec::new();
    for (label, k, parity, c) in [
        ("H(3) even r", 3, 0, int(-4)),
        ("H(3) odd r", 3, 1, frac(-32, 7)),
        ("H(5) even r", 5, 0, int(62)),
        ("H(5) odd r", 5, 1, int(64)),
    ] {
        let lhs = odd(&|n| parity_sum(k, 8 * n, parity))?;
        let rhs = odd(&|n| Ok(&c * sig(k, n)))?;
        eqs.push(qeq(label, lhs, rhs));
    }
    let lhs = qsum(1, p, |n| {
        let mut acc = zero();
        let mut r = 1;
        while r * r < 4 * n {
            acc += h(3, 4 * n - r * r)?;
            r += 2;
        }
        Ok(Some(acc))
    })?;
    let rhs = qsum(1, p, |n| {
        let half_n = frac(n, 2);
        let quarter = frac(n, 4);
        Ok(Some(
            frac(-2, 9) * sig(3, n) + frac(-2, 7) * sigma_rat(3, &half_n) + frac(32, 63) * sigma_rat(3, &quarter),
        ))
    })?;
    eqs.push(qeq("H(3,4n−r²) over odd r > 0", lhs, rhs));
    Ok(eqs)
}

fn s32_t10_8(p: i64) -> Result<Vec<Equation>> {
    let t10_8 = theta_const(1, 0, p)?.pow(8);
    let e4 = e_k(4, p)?;
    let e4_2 = e4.substitute(2);
    let th8 = theta8(p)?;
    let f4_twisted = qsum(0, p, |n| {
        let b = isqrt(16 * n);
        let mut acc = zero();
        for r in -b..=b {
            acc += sign(r) * f4_formula(n, r)?;
        }
        Ok(Some(acc))
    })?;
    let delta8 = qsum(1, p, |n| Ok(Some(int(256) * int(formula_delta8(n - 1)?))))?;
    let odd_nonsquare = |n: i64| n % 2 == 1 && !is_square(n);
    let lhs = restrict(&t10_8, p, odd_nonsquare)?;
    let rhs = qsum(1, p, |n| {
        if !odd_nonsquare(n) {
            return Ok(None);
        }
        let mut a = zero();
        let b = isqrt(16 * n);
        for r in -b..=b {
            if r * r < 16 * n {
                a += sign(r) * h(3, 16 * n - r * r)?;
            }
        }
        let mut c = zero();
        let b = isqrt(4 * n);
        for r in -b..=b {
            if r * r < 4 * n {
                c += h(3, 4 * n - r * r)?;
            }
        }
        Ok(Some(frac(7, 2) * a + frac(-511, 2) * c))
    })?;
    Ok(vec![
        qeq("θ10⁸ = 16/15(E4 − E4(2τ))", t10_8.clone(), lin_q(&[(frac(16, 15), &e4), (frac(-16, 15), &e4_2)])),
        qeq("θ10⁸ = ϑ⁸(τ,1/2)", t10_8.clone(), at_half(&th8)?),
        qeq("ϑ⁸(τ,1/2) = Σ(−1)^r f4", at_half(&th8)?, f4_twisted),
        qeq("θ10⁸ = E4 − E44(1/2)", t10_8.clone(), &e4 - &at_half(&ejac(4, 4, p)?)?),
        qeq("θ10⁸ = 2⁸ Σ δ8(n) q^{n+1}", t10_8, delta8),
        qeq("2⁸δ8(n−1) via H(3,·)", lhs, rhs),
    ])
}

fn s32_t01_8(p: i64) -> Result<Vec<Equation>> {
    let t01_8 = theta_const(0, 1, p)?.pow(8).substitute(2);
    let e4 = e_k(4, p)?;
    let e4_2 = e4.substitute(2);
    let target = frac(p, 2);
    let via_theta = spec_to(&theta8, &half(), &zero(), &int(4), &target)?.substitute(2);
    let e44 = spec_to(&|t| ejac(4, 4, t), &half(), &zero(), &int(4), &target)?.substitute(2);
    let table = theta8(linear_window(2, 1, 2, p) + 1)?;
    let conv = linear_sum(2, 1, 2, p, |m, r| Ok(table.coeff_int(m, r).unwrap_or_default()))?;
    let odd = |n: i64| n % 2 == 1;
    let lhs = restrict(&-&t01_8, p, odd)?;
    let rhs_terms = linear_sum(2, 1, 2, p, |m, r| {
        Ok(if 16 * m > r * r { frac(-7, 2) * h(3, 16 * m - r * r)? } else { zero() })
    })?;
    let rhs = restrict(&rhs_terms, p, odd)?;
    Ok(vec![
        qeq("θ01⁸(2τ) = −E4/15 + 16E4(2τ)/15", t01_8.clone(), lin_q(&[(frac(-1, 15), &e4), (frac(16, 15), &e4_2)])),
        qeq("θ01⁸(2τ) = q²ϑ⁸(2τ,τ)", t01_8.clone(), via_theta),
        qeq("θ01⁸(2τ) = E4(2τ) − q²E44(2τ,τ)", t01_8.clone(), &e4_2 - &e44),
        qeq("θ01⁸(2τ) = Σ f4 convolution", t01_8, conv),
        qeq("r8(n) via H(3,·), n odd", lhs, rhs),
    ])
}

fn s32_eps2(p: i64) -> Result<Vec<Equation>> {
    let q = p + 2;
    let (t00, t01, t10) = (theta_const(0, 0, q)?, theta_const(0, 1, q)?, theta_const(1, 0, q)?);
    let t10_8 = t10.pow(8);
    let e2 = eps2(q)?;
    let (e6, e64) = (e_k(6, q)?, ejac(6, 4, q)?);
    let middle = t10_8.mul(&(&t00.pow(4) + &t01.pow(4)));
    let wp_half = at_half(&wp_theta2_weierstrass(q)?)?;
    let eps_via_wp = wp_half.scale(&int(6)).div(&t10.pow(2))?;
    let shifted = spec_to(&|t| ejac(6, 4, t), &half(), &half(), &int(4), &int(p))?;
    Ok(vec![
        qeq("2ε2θ10⁸ = θ10⁸(θ00⁴ + θ01⁴)", t10_8.mul(&e2).scale(&int(2)), middle.clone()),
        qeq("θ10⁸(θ00⁴ + θ01⁴) = E64(1/2) − E6", middle, &at_half(&e64)? - &e6),
        // printed with the opposite sign; the q¹ coefficient of the left side is +512
        qeq(
            "E64(1/2) − E6 = 64/63(E6(2τ) − E6)",
            &at_half(&e64)? - &e6,
            lin_q(&[(frac(-64, 63), &e6), (frac(64, 63), &e6.substitute(2))]),
        ),
        qeq("θ00⁸(θ01⁴ − θ10⁴) = E6 − qE64(τ,(τ+1)/2)", t00.pow(8).mul(&(&t01.pow(4) - &t10.pow(4))), &e6 - &shifted),
        qeq("ε2 = −6℘(τ,1/2)", e2, eps_via_wp),
    ])
}

/// η¹²θ_10⁴.
fn cusp8(p: i64) -> Result<QSeries> {
    Ok(eta(p)?.pow(12).mul(&theta_const(1, 0, p)?.pow(4)))
}

fn h7_twisted(n8: i64) -> Result<Rat> {
    let b = isqrt(n8);
    let mut acc = zero();
    for r in -b..=b {
        if r * r < n8 {
            acc += sign(r) * h(7, n8 - r * r)?;
        }
    }
    Ok(acc / zeta_nonpositive(-13))
}

fn p41(p: i64) -> Result<Vec<Equation>> {
    let e8 = e_k(8, p)?;
    let e8_2 = e8.substitute(2);
    let c = cusp8(p)?;
    let base = lin_q(&[(frac(256, 255), &e8_2), (frac(-1, 255), &e8)]);
    let with = |k: Rat| lin_q(&[(int(1), &base), (k, &c)]);
    let mut prod = QSeries::from_terms(1, p, [(1, int(16))]);
    for n in 1..p {
        let f1 = QSeries::from_terms(1, p, [(0, int(1)), (n, int(-1))]);
        let f2 = QSeries::from_terms(1, p, [(0, int(1)), (2 * n, int(-1))]);
        prod = prod.mul(&f1.pow(8)).mul(&f2.pow(8));
    }
    let odd = |n: i64| n % 2 == 1;
    let a_formula = qsum(1, p, |n| {
        if !odd(n) {
            return Ok(None);
        }
        Ok(Some(frac(86, 135) * sig(7, n) + frac(17, 6480) * h7_twisted(8 * n)?))
    })?;
    let e82_formula = qsum(0, p, |n| {
        let b = isqrt(8 * n);
        let mut acc = zero();
        for r in -b..=b {
            acc += sign(r) * divisor_cohen_sum(n, r, 2, 7, 7, 8 * n - r * r)?;
        }
        Ok(Some(acc / (int(129) * zeta_nonpositive(-13))))
    })?;
    let e82h = at_half(&ejac(8, 2, p)?)?;
    Ok(vec![
        qeq("E82(1/2)", e82h.clone(), with(frac(2160, 731))),
        qeq("E84(1/2)", at_half(&ejac(8, 4, p)?)?, with(frac(-135, 731))),
        qeq("E88(1/2)", at_half(&ejac(8, 8, p)?)?, with(frac(135, 731 * 16))),
        qeq("η¹²θ10⁴ = 16q∏(1−q^n)⁸(1−q^{2n})⁸", c.clone(), prod),
        qeq("a(n), n odd", restrict(&c, p, odd)?, a_formula),
        qeq("E82(1/2) via H(7,·)", e82h, e82_formula),
    ])
}

fn p42(p: i64) -> Result<Vec<Equation>> {
    let b = eta(p)?.pow(12).substitute(2);
    let e6 = e_k(6, p)?;
    let e61h = at_half(&ejac(6, 1, p)?)?;
    let e63h = at_half(&ejac(6, 3, p)?)?;
    let odd = |n: i64| n % 2 == 1;
    let b_odd = qsum(1, p, |m| {
        if !odd(m) {
            return Ok(None);
        }
        let big_n = 4 * m;
        let bound = isqrt(big_n);
        let mut acc = zero();
        for r in -bound..=bound {
            acc += sign(r) * h(5, big_n - r * r)?;
        }
        Ok(Some(frac(11, 12) * acc + frac(-1, 18) * sig(5, m)))
    })?;
    let (lhs_even, rhs_even) = {
        let lhs = qsum(1, p, |m| {
            if odd(m) {
                return Ok(None);
            }
            let n = m / 2;
            let mut acc = zero();
            let mut r = 1;
            while r * r < 8 * n {
                acc += h(5, 8 * n - r * r)?;
                r += 2;
            }
            Ok(Some(acc))
        })?;
        let rhs = qsum(1, p, |m| {
            if odd(m) {
                return Ok(None);
            }
            let n = m / 2;
            Ok(Some(
                frac(31, 33) * sig(5, 2 * n) + sig(5, n) + frac(-64, 33) * sigma_rat(5, &frac(n, 2)),
            ))
        })?;
        (lhs, rhs)
    };
    Ok(vec![
        qeq("E63(1/2) − E61(1/2) = 9216/61 η¹²(2τ)", &e63h - &e61h, b.scale(&frac(9216, 61))),
        qeq(
            "E61(1/2)",
            e61h,
            lin_q(&[
                (frac(1, 63), &e6),
                (frac(-22, 21), &e6.substitute(2)),
                (frac(128, 63), &e6.substitute(4)),
                (int(-144), &b),
            ]),
        ),
        qeq("b(2n+1)", restrict(&b, p, odd)?, b_odd),
        qeq("b(2n) = 0", lhs_even, rhs_even),
    ])
}

/// cos(2πr/3) for integral r.
fn cos_third(r: i64) -> Rat {
    if r % 3 == 0 {
        int(1)
    } else {
        frac(-1, 2)
    }
}

fn p43(p: i64) -> Result<Vec<Equation>> {
    let eta_ = eta(p)?;
    let c = eta_.mul(&eta_.substitute(3)).pow(6);
    let e6 = e_k(6, p)?;
    let e63 = ejac(6, 3, p)?;
    let at_third = evaluate_at(&e63, &zero(), &frac(1, 3))?;
    let shadow = qsum(0, p, |n| {
        let b = isqrt(12 * n);
        let mut acc = zero();
        for r in -b..=b {
            acc += cos_third(r) * e63.coeff_int(n, r).unwrap_or_default();
        }
        Ok(Some(acc))
    })?;
    let c_formula = qsum(1, p, |n| {
        let b = isqrt(12 * n);
        let mut acc = zero();
        for r in -b..=b {
            acc += cos_third(r) * divisor_cohen_sum(n, r, 3, 5, 5, 12 * n - r * r)?;
        }
        Ok(Some(
            frac(61, 3168) * sig(5, n) + frac(-4941, 352) * sigma_rat(5, &frac(n, 3)) + frac(13, 864) * acc,
        ))
    })?;
    Ok(vec![
        qeq(
            "E63(1/3)",
            at_third.clone(),
            lin_q(&[(frac(-1, 728), &e6), (frac(729, 728), &e6.substitute(3)), (frac(-28512, 793), &c)]),
        ),
        qeq("E63(1/3) = Σ cos(2πr/3) e63(n,r)", at_third, shadow),
        qeq("c(n)", c, c_formula),
    ])
}

fn t44(p: i64) -> Result<Vec<Equation>> {
    let th = theta(p)?;
    let w = wp_theta2_weierstrass(p)?.scale(&int(12));
    let (p1, p2, p3, p4) = (phi(1, p)?, phi(2, p)?, phi(3, p)?, phi(4, p)?);
    let e = eta(p)?;
    let d = delta(p)?;
    let (e4, e6, e8) = (e_k(4, p)?, e_k(6, p)?, e_k(8, p)?);
    let e44 = ejac(4, 4, p)?;
    let e61_2 = ejac(6, 1, p)?.ud(2);
    let th4 = th.pow(4);
    let eta12_th4 = th4.mul_q(&e.pow(12), int(6));

    let a = eta12_th4.mul(&p1.pow(2));
    let a_rhs = lin_fj(&[
        (int(1), &ejac(8, 1, p)?.ud(2)),
        (int(-1), &ejac(8, 4, p)?),
        (frac(1449, 86), &eta12_th4.mul(&p2)),
    ]);
    let b = th.pow(2).mul(&p1.pow(3)).mul_q(&e.pow(18), int(9));
    // the weight-10 cusp space is spanned by η¹⁸ϑ²φ01φ02 and η¹⁸ϑ²φ03
    let b_cusp = lin_fj(&[(int(1), &p1.mul(&p2)), (int(-2), &p3)])
        .mul(&th.pow(2))
        .mul_q(&e.pow(18), int(9));
    let b_rhs = lin_fj(&[
        (int(1), &e61_2.mul_q(&e4, int(4))),
        (int(-1), &e44.mul_q(&e6, int(6))),
        (int(36), &b_cusp),
    ]);
    let c = p1.pow(4).mul_q(&d, int(12));
    let c_cusp = lin_fj(&[
        (int(1), &p1.pow(2).mul(&p2)),
        (int(-9), &p1.mul(&p3)),
        (int(12), &p4),
    ])
    .mul_q(&d, int(12));
    let c_rhs = lin_fj(&[
        (int(1), &e61_2.mul_q(&e6, int(6))),
        (int(-1), &e44.mul_q(&e8, int(8))),
        (int(48), &c_cusp),
    ]);
    let cusp16 = lin_fj(&[
        (frac(73, 11008), &p1.mul(&p2).mul(&p3)),
        (frac(-45549, 2752), &p3.pow(2)),
        (frac(20713, 1376), &p2.mul(&p4)),
    ]);
    let d_rhs = lin_fj(&[
        (int(1), &ejac(8, 2, p)?.ud(2)),
        (int(-1), &ejac(8, 8, p)?),
        (int(1), &eta12_th4.mul(&cusp16)),
    ]);
    Ok(vec![
        fjeq("(12℘)²ϑ⁸ = η¹²ϑ⁴φ01²", w.pow(2).mul(&th4), a.clone()),
        fjeq("η¹²ϑ⁴φ01² Eisenstein + cusp", a, a_rhs),
        fjeq("(12℘)³ϑ⁸ = η¹⁸ϑ²φ01³", w.pow(3).mul(&th.pow(2)), b.clone()),
        fjeq("η¹⁸ϑ²φ01³ Eisenstein + cusp", b, b_rhs),
        fjeq("(12℘)⁴ϑ⁸ = Δφ01⁴", w.pow(4), c.clone()),
        fjeq("Δφ01⁴ Eisenstein + cusp", c, c_rhs),
        fjeq("ϑ¹⁶", th.pow(16), d_rhs),
    ])
}

fn s42_t10_16(p: i64) -> Result<Vec<Equation>> {
    let t10_16 = theta_const(1, 0, p)?.pow(16);
    let t01_16 = theta_const(0, 1, p)?.pow(16).substitute(2);
    let e8 = e_k(8, p)?;
    let e8_2 = e8.substitute(2);
    let c = cusp8(p)?;
    let e82h = at_half(&ejac(8, 2, p)?)?;
    let e88h = at_half(&ejac(8, 8, p)?)?;
    let odd = |n: i64| n % 2 == 1;
    let d16_series = qsum(0, p, |n| {
        Ok(if n >= 2 && odd(n - 2) { t10_16.coeff_int(n).map(|x| x / int(65536)) } else { None })
    })?;
    let d16_formula = qsum(0, p, |n| {
        Ok(if n >= 2 && odd(n - 2) { Some(delta16(n - 2)?) } else { None })
    })?;
    let r16_series = restrict(&-&t01_16, p, odd)?;
    let r16_formula = qsum(1, p, |n| Ok(if odd(n) { Some(r16(n)?) } else { None }))?;
    Ok(vec![
        qeq(
            "θ10¹⁶ = E8 − E88(1/2) − 20713/688 η¹²θ10⁴",
            t10_16.clone(),
            lin_q(&[(int(1), &e8), (int(-1), &e88h), (frac(-20713, 688), &c)]),
        ),
        qeq(
            "θ10¹⁶ = 256/255(E8 − E8(2τ)) − 512/17 η¹²θ10⁴",
            t10_16.clone(),
            lin_q(&[(frac(256, 255), &e8), (frac(-256, 255), &e8_2), (frac(-512, 17), &c)]),
        ),
        qeq(
            "θ10¹⁶ via E82(1/2)",
            t10_16,
            lin_q(&[(frac(1952, 2025), &e8), (frac(18688, 2025), &e8_2), (frac(-1376, 135), &e82h)]),
        ),
        qeq(
            "θ01¹⁶(2τ) via E82(1/2)",
            t01_16,
            lin_q(&[(frac(-13, 2025), &e8), (frac(3328, 2025), &e8_2), (frac(-86, 135), &e82h)]),
        ),
        qeq("δ16(n), n odd", d16_series, d16_formula),
        qeq("r16(n), n odd", r16_series, r16_formula),
    ])
}

fn s43_theta24(p: i64) -> Result<Vec<Equation>> {
    let th = theta(p)?;
    let (p1, p2, p3, p4) = (phi(1, p)?, phi(2, p)?, phi(3, p)?, phi(4, p)?);
    let d = delta(p)?;
    let e4 = e_k(4, p)?;
    let e43_2 = ejac(4, 3, p)?.ud(2);
    let e44 = ejac(4, 4, p)?;
    let bracket = lin_fj(&[
        (int(-38), &p1.mul(&p2.pow(4))),
        (int(-477), &p1.mul(&p2).mul(&p3.pow(2))),
        (int(486), &p2.pow(3).mul(&p3)),
        (int(702), &p3.pow(3)),
        (int(55), &p1.pow(2).mul(&p3).mul(&p4)),
        (int(160), &p1.mul(&p2.pow(2)).mul(&p4)),
    ]);
    let cusp = lin_fj(&[
        (int(-24), &p1.pow(2).mul(&p2).mul(&p4.pow(2))),
        (int(36), &p2.pow(6)),
        (int(1), &p3.mul(&bracket)),
    ])
    .mul_q(&d, int(12));
    let rhs = lin_fj(&[(int(1), &e43_2.mul_q(&e4.pow(2), int(8))), (int(-1), &e44.pow(3)), (int(1), &cusp)]);

    let t10_24 = theta_const(1, 0, p)?.pow(24);
    let e4_3 = e4.pow(3);
    let e44h3 = at_half(&e44)?.pow(3);
    let p1h = at_half(&p1)?;
    let c = cusp8(p)?;
    let e82h = at_half(&ejac(8, 2, p)?)?;
    let e84h = at_half(&ejac(8, 4, p)?)?;
    let diff = &e82h - &e84h;
    Ok(vec![
        fjeq("ϑ²⁴", th.pow(24), rhs),
        qeq(
            "θ10²⁴ with φ01(τ,1/2)",
            t10_24.clone(),
            lin_q(&[(int(1), &e4_3), (int(-1), &e44h3), (int(-48), &d.mul(&p1h.pow(2))), (int(2304), &d)]),
        ),
        qeq(
            "θ10²⁴ = E4³ − E44(1/2)³ − 48η¹²θ10⁴E4",
            t10_24.clone(),
            lin_q(&[(int(1), &e4_3), (int(-1), &e44h3), (int(-48), &c.mul(&e4))]),
        ),
        qeq(
            "θ10²⁴ via E82(1/2) − E84(1/2)",
            t10_24,
            lin_q(&[(int(1), &e4_3), (int(-1), &e44h3), (frac(-688, 45), &e4.mul(&diff))]),
        ),
        qeq("η¹²θ10⁴ = 43/135(E82(1/2) − E84(1/2))", c, diff.scale(&frac(43, 135))),
    ])
}

fn s41_eta(p: i64) -> Result<Vec<Equation>> {
    let e = eta(p)?;
    let e2 = e.substitute(2);
    let (t00, t01, t10) = (theta_const(0, 0, p)?, theta_const(0, 1, p)?, theta_const(1, 0, p)?);
    Ok(vec![
        qeq("η¹²θ10⁴ = 2⁴η⁸η⁸(2τ)", cusp8(p)?, e.pow(8).mul(&e2.pow(8)).scale(&int(16))),
        qeq("η⁶θ10⁶ = 2⁶η¹²(2τ)", e.pow(6).mul(&t10.pow(6)), e2.pow(12).scale(&int(64))),
        qeq("2η³ = θ00θ01θ10", e.pow(3).scale(&int(2)), t00.mul(&t01).mul(&t10)),
    ])
}

fn s42_phivals(p: i64) -> Result<Vec<Equation>> {
    let q = p + 2;
    let phis: Vec<FJExp> = (1..=4).map(|j| phi(j, p)).collect::<Result<_>>()?;
    let at_shift = |j: u32| spec_to(&move |t| phi(j, t), &half(), &half(), &zero(), &int(p));
    let constant = |c: Rat| QSeries::constant(c, p);
    let mono = |c: i64, e: Rat| QSeries::monomial(int(c), &e, p);
    let (t00, t01, t10) = (theta_const(0, 0, q)?, theta_const(0, 1, q)?, theta_const(1, 0, q)?);
    let (s00, s01, s10) = (t00.pow(2), t01.pow(2), t10.pow(2));
    let p1_half = (&s01.div(&s00)? + &s00.div(&s01)?).scale(&int(4));
    let p1_shift = (&s10.div(&s01)? - &s01.div(&s10)?).scale(&int(4)).shift(&frac(-1, 4));
    Ok(vec![
        qeq("φ02(τ,1/2) = 2", at_half(&phis[1])?, constant(int(2))),
        qeq("φ03(τ,1/2) = 0", at_half(&phis[2])?, constant(int(0))),
        qeq("φ04(τ,1/2) = −1", at_half(&phis[3])?, constant(int(-1))),
        qeq("φ02(τ,(τ+1)/2) = −2q^{−1/2}", at_shift(2)?, mono(-2, frac(-1, 2))),
        qeq("φ03(τ,(τ+1)/2) = 0", at_shift(3)?, constant(int(0))),
        qeq("φ04(τ,(τ+1)/2) = −q^{−1}", at_shift(4)?, mono(-1, int(-1))),
        qeq("φ01(τ,1/2)", at_half(&phis[0])?, p1_half),
        qeq("φ01(τ,(τ+1)/2)", at_shift(1)?, p1_shift),
        fjeq(
            "4φ04 = φ01φ03 − φ02²",
            phis[3].scale(&int(4)),
            &phis[0].mul(&phis[2]) - &phis[1].pow(2),
        ),
    ])
}

fn intro_jacobi(p: i64) -> Result<Vec<Equation>> {
    let t00_8 = theta_const(0, 0, p)?.pow(8).substitute(2);
    let t01_8 = theta_const(0, 1, p)?.pow(8).substitute(2);
    let t10_8 = theta_const(1, 0, p)?.pow(8);
    let e4 = e_k(4, p)?;
    let e4_2 = e4.substitute(2);
    let r8 = |twist: bool| {
        qsum(0, p, move |n| {
            if n == 0 {
                return Ok(Some(int(1)));
            }
            let v = int(formula_r8(n)?);
            Ok(Some(if twist && n % 2 == 1 { -v } else { v }))
        })
    };
    let delta8 = qsum(1, p, |n| Ok(Some(int(256) * int(formula_delta8(n - 1)?))))?;
    let eps_odd = qsum(0, p, |n| {
        if n == 0 {
            return Ok(Some(int(1)));
        }
        let odd: i64 = crate::numtheory::divisors(n as u64)
            .into_iter()
            .filter(|d| d % 2 == 1)
            .map(|d| d as i64)
            .sum();
        Ok(Some(int(24 * odd)))
    })?;
    Ok(vec![
        qeq("θ00⁸(2τ) = 1 + Σ r8(n)q^n", t00_8, r8(false)?),
        qeq("θ01⁸(2τ) = 1 + Σ (−1)^n r8(n)q^n", t01_8.clone(), r8(true)?),
        qeq("θ10⁸ = 2⁸ Σ δ8(n)q^{n+1}", t10_8.clone(), delta8),
        qeq("θ01⁸(2τ) = −E4/15 + 16E4(2τ)/15", t01_8, lin_q(&[(frac(-1, 15), &e4), (frac(16, 15), &e4_2)])),
        qeq(
            "2⁻⁸θ10⁸ = (E4 − E4(2τ))/240",
            t10_8.scale(&frac(1, 256)),
            lin_q(&[(frac(1, 240), &e4), (frac(-1, 240), &e4_2)]),
        ),
        qeq("ε2 = 1 + 24Σ σ_odd(n)q^n", eps2(p)?, eps_odd),
    ])
}

fn h_hol(p: i64) -> Result<Vec<Equation>> {
    let e = eta(p)?;
    let cases: Vec<(&str, FJExp, i64, bool)> = vec![
        ("η⁶φ01", phi(1, p)?.mul_q(&e.pow(6), int(3)), 1, false),
        ("η³φ02", phi(2, p)?.mul_q(&e.pow(3), frac(3, 2)), 2, false),
        ("η²φ03", phi(3, p)?.mul_q(&e.pow(2), int(1)), 3, false),
        ("η²ϑ²φ02", theta(p)?.pow(2).mul(&phi(2, p)?).mul_q(&e.pow(2), int(1)), 3, false),
        ("η²φ04 cusp", phi(4, p)?.mul_q(&e.pow(2), int(1)), 4, true),
    ];
    Ok(cases
        .into_iter()
        .map(|(label, f, m, strict)| {
            let kept = cone_part(&f, m, strict);
            fjeq(label, f, kept)
        })
        .collect())
}
