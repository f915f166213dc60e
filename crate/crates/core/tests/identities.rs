use jacobi_core::catalog::{delta, eisenstein, eta, jacobi_eis, phi, theta};
use jacobi_core::identities::{
    f4_formula, find, first_mismatch, matching, verify, verify_all, Equation, Status, REGISTRY,
};
use jacobi_core::numtheory::kronecker;
use jacobi_core::rat::{frac, int};
use jacobi_core::series::evaluate_at;
use jacobi_core::Error;

/// Coefficient of q^n ζ^r in ϑ⁸ as a signed count of odd 8-tuples with
/// Σ x² = 8n and Σ x = 2r, weighted by ∏ (−4/x).
fn theta8_by_enumeration(n: i64, r: i64) -> i64 {
    fn go(left: usize, norm: i64, sum: i64, sign: i64) -> i64 {
        if left == 0 {
            return if norm == 0 && sum == 0 { sign } else { 0 };
        }
        let mut acc = 0;
        let mut x = 1;
        while x * x <= norm {
            for s in [x, -x] {
                acc += go(left - 1, norm - s * s, sum - s, sign * kronecker(-4, s));
            }
            x += 2;
        }
        acc
    }
    go(8, 8 * n, 2 * r, 1)
}

#[test]
fn f4_formula_matches_enumeration_everywhere() {
    for n in 0..5 {
        for r in -(4 * n + 1)..=(4 * n + 1) {
            assert_eq!(f4_formula(n, r).unwrap(), int(theta8_by_enumeration(n, r)), "(n, r) = ({n}, {r})");
        }
    }
}

#[test]
fn printed_e64_at_half_fails_at_q1() {
    let p = 4;
    let e6 = eisenstein(6, p).unwrap();
    let printed = &e6.scale(&frac(127, 63)) - &e6.substitute(2).scale(&frac(64, 63));
    let eq = Equation {
        label: "E64(1/2) as printed".into(),
        lhs: evaluate_at(&jacobi_eis(6, 4, p).unwrap(), &int(0), &frac(1, 2)).unwrap().into(),
        rhs: printed.into(),
    };
    let m = first_mismatch(&eq, p).unwrap().expect("the printed form differs");
    assert_eq!((m.t, m.lhs, m.rhs), (int(1), int(8), int(-1016)));
}

#[test]
fn printed_delta_cusp_correction_fails() {
    let p = 4;
    let th = theta(p).unwrap();
    let (p1, p2, p3) = (phi(1, p).unwrap(), phi(2, p).unwrap(), phi(3, p).unwrap());
    let lhs = th.pow(2).mul(&p1.pow(3)).mul_q(&eta(p).unwrap().pow(18), int(9));
    let eis = &jacobi_eis(6, 1, p).unwrap().ud(2).mul_q(&eisenstein(4, p).unwrap(), int(4))
        - &jacobi_eis(4, 4, p).unwrap().mul_q(&eisenstein(6, p).unwrap(), int(6));
    let cusp = &p1.mul(&p2) - &p3.scale(&int(2));
    let printed = &eis + &cusp.mul_q(&delta(p).unwrap(), int(12)).scale(&int(36));
    let eq = Equation { label: "printed Δ correction".into(), lhs: lhs.into(), rhs: printed.into() };
    let m = first_mismatch(&eq, p).unwrap().expect("the printed form differs");
    assert_eq!((m.t, m.r), (int(1), Some(int(-3))));
    assert_eq!(verify("T44-theta16", p).unwrap().status, Status::Pass);
}

#[test]
fn registry_lookup() {
    assert_eq!(REGISTRY.len(), 26);
    let ids: Vec<_> = matching("P4*").iter().map(|e| e.id).collect();
    assert_eq!(ids, ["P41", "P42", "P43"]);
    assert!(matching("nothing*").is_empty());
    assert!(verify_all("nothing*", None).unwrap().is_empty());
    assert!(matches!(find("T31"), Err(Error::UnknownIdentity(_))));
    assert!(matches!(verify("T31-theta8", 0), Err(Error::EmptyWindow(0))));
}

#[test]
fn precision_monotonicity() {
    for id in ["T31-theta8", "T31-f4", "L32-e8", "S41-eta", "S42-phivals", "INTRO-jacobi", "P43"] {
        for p in 1..=8 {
            assert!(verify(id, p).unwrap().passed(), "{id} at {p}");
        }
    }
}

#[test]
fn report_json_schema() {
    let r = verify("S41-eta", 6).unwrap();
    let v = r.to_json_value();
    assert_eq!(v["id"], "S41-eta");
    assert_eq!(v["prec"], "6");
    assert_eq!(v["status"], "pass");
    assert!(v.get("mismatch").is_none());
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys[..3], ["id", "prec", "status"]);
}

#[test]
fn results_ordered_by_id() {
    let reports = verify_all("S4*", Some(4)).unwrap();
    let ids: Vec<_> = reports.iter().map(|r| r.id.clone()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(reports.iter().all(|r| r.passed()));
}
