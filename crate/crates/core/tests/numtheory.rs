use jacobi_core::numtheory::{cohen_h, cohen_h_int, is_fundamental, kronecker, zeta_nonpositive};
use jacobi_core::oracles::{cohen_h_by_definition, hurwitz_class_number};
use jacobi_core::rat::{frac, int, lcm_denoms};
use jacobi_core::{Error, Rat};
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn kronecker_is_multiplicative_and_periodic() {
    for d in -50i64..=50 {
        if !is_fundamental(d) {
            continue;
        }
        let f = d.abs();
        for m in 1..=60 {
            for n in 1..=60 {
                assert_eq!(kronecker(d, m * n), kronecker(d, m) * kronecker(d, n), "D = {d}, {m}·{n}");
            }
            assert_eq!(kronecker(d, m + f), kronecker(d, m), "D = {d}, n = {m}");
        }
        assert_eq!(kronecker(d, 1), 1);
    }
    assert_eq!(kronecker(-4, 3), -1);
    assert_eq!(kronecker(1, 0), 1);
    assert_eq!(kronecker(5, 0), 0);
}

#[test]
fn denominator_lcm_regression() {
    // lcm of the denominators of H(r, N) over 1 ≤ N ≤ 200
    for (r, want) in [(1u32, 6u32), (2, 60), (3, 126), (5, 66), (7, 6), (9, 7182), (11, 138)] {
        let fast: Vec<Rat> = (1..=200).map(|n| cohen_h_int(r, n).unwrap()).collect();
        let slow: Vec<Rat> = (1..=200).map(|n| cohen_h_by_definition(r, n)).collect();
        assert_eq!(lcm_denoms(fast.iter()), BigInt::from(want), "r = {r}");
        assert_eq!(fast, slow, "r = {r}");
    }
}

#[test]
fn zero_exactly_off_discriminants() {
    for r in 1..=6u32 {
        for n in 1..=120i64 {
            let signed = if r % 2 == 1 { -n } else { n };
            let off = matches!(signed.rem_euclid(4), 2 | 3);
            assert_eq!(cohen_h_int(r, n).unwrap() == int(0), off, "H({r}, {n})");
        }
    }
}

#[test]
fn fixtures() {
    assert_eq!(cohen_h(3, &int(3)).unwrap(), frac(-2, 9));
    assert_eq!(cohen_h(1, &int(3)).unwrap(), frac(1, 3));
    assert_eq!(cohen_h(1, &int(0)).unwrap(), frac(-1, 12));
    assert_eq!(cohen_h(7, &int(0)).unwrap(), zeta_nonpositive(-13));
    assert_eq!(zeta_nonpositive(-13), frac(-1, 12));
    assert_eq!(cohen_h(3, &frac(7, 4)).unwrap(), int(0));
    assert!(matches!(cohen_h(3, &int(-1)), Err(Error::NegativeCohenArgument(_))));
    assert!(matches!(cohen_h(0, &int(3)), Err(Error::Precondition(_))));
}

#[test]
fn weight_one_is_hurwitz() {
    for n in 0..=300 {
        assert_eq!(cohen_h_int(1, n).unwrap(), hurwitz_class_number(n), "N = {n}");
    }
}

proptest! {
    #[test]
    fn dual_definition(r in 1u32..=8, n in 1i64..=400) {
        prop_assert_eq!(cohen_h_int(r, n).unwrap(), cohen_h_by_definition(r, n));
    }

    #[test]
    fn rational_arguments_vanish_off_integers(r in 1u32..=6, p in 0i64..200, q in 2i64..9) {
        prop_assume!(p % q != 0);
        prop_assert_eq!(cohen_h(r, &frac(p, q)).unwrap(), int(0));
    }
}
