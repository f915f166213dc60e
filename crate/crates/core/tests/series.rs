use jacobi_core::catalog::{jacobi_eis, phi, theta};
use jacobi_core::identities::{first_mismatch, Equation};
use jacobi_core::rat::{frac, int};
use jacobi_core::series::json::{fjexp_from_json, fjexp_to_json, qseries_from_json, qseries_to_json};
use jacobi_core::series::{evaluate_at, FJExp, QSeries};
use jacobi_core::Rat;
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = Rat> {
    (-30i64..30, 1i64..5).prop_map(|(n, d)| frac(n, d))
}

fn qseries() -> impl Strategy<Value = QSeries> {
    (1i64..=4, 3i64..=14, prop::collection::vec((-4i64..14, coeff()), 0..10))
        .prop_map(|(s, p, ts)| QSeries::from_terms(s, p, ts))
}

fn fjexp() -> impl Strategy<Value = FJExp> {
    (1i64..=2, 1i64..=2, 2i64..=6, prop::collection::vec(((0i64..6, -6i64..=6), coeff()), 0..10))
        .prop_map(|(s, w, p, ts)| FJExp::from_terms(s, w, p, ts, None))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn qseries_ring_laws(a in qseries(), b in qseries(), c in qseries()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&(&b + &c)), &a.mul(&b) + &a.mul(&c));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn fjexp_ring_laws(a in fjexp(), b in fjexp(), c in fjexp()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&(&b + &c)), &a.mul(&b) + &a.mul(&c));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn json_round_trip(a in qseries(), b in fjexp()) {
        let qa = qseries_to_json(&a);
        let back = qseries_from_json(&qa).unwrap();
        prop_assert_eq!(qseries_to_json(&back), qa);
        prop_assert_eq!(back, a);
        let fb = fjexp_to_json(&b);
        let back = fjexp_from_json(&fb).unwrap();
        prop_assert_eq!(fjexp_to_json(&back), fb);
        prop_assert_eq!(back, b);
    }

    #[test]
    fn fj_division_by_theta(a in fjexp()) {
        let th = theta(8).unwrap();
        let back = a.mul(&th).div(&th).unwrap();
        prop_assert_eq!(back.truncate(&a.prec_q()), a.truncate(&back.prec_q()));
    }
}

#[test]
fn division_round_trip_on_catalog_forms() {
    let p = 8;
    let th = theta(p).unwrap();
    for b in [th.pow(2), phi(1, p).unwrap(), phi(2, p).unwrap(), jacobi_eis(4, 1, p).unwrap()] {
        for a in [th.pow(8), phi(3, p).unwrap(), jacobi_eis(6, 2, p).unwrap()] {
            let back = a.mul(&b).div(&b).unwrap();
            let eq = Equation { label: "(ab)/b".into(), lhs: back.into(), rhs: a.into() };
            assert_eq!(first_mismatch(&eq, p - 1).unwrap(), None);
        }
    }
}

#[test]
fn specialization_at_half_is_the_twisted_sum() {
    // φ(τ, 1/2) = Σ_t q^t Σ_r (−1)^r c(t, r)
    let a = jacobi_eis(4, 2, 8).unwrap();
    let value = evaluate_at(&a, &int(0), &frac(1, 2)).unwrap();
    for t in 0..8 {
        let want: Rat = a.level(t).iter().map(|(r, c)| if r.rem_euclid(2) == 0 { c.clone() } else { -c }).sum();
        assert_eq!(value.coeff_int(t).unwrap_or_default(), want, "q^{t}");
    }
}

#[test]
fn prec_zero_series_are_empty() {
    let a = QSeries::from_terms(1, 0, [(0, int(1))]);
    assert!(a.is_zero());
    assert_eq!(a.mul(&a).prec(), 0);
}
