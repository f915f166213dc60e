//! One line per acceptance criterion. Criterion 6 also runs randomized
//! property checks through a proptest runner.

use std::process::ExitCode;

use jacobi_core::catalog::{eisenstein, theta_const};
use jacobi_core::rat::int;
use jacobi_core::selftest::{acceptance, Check};
use jacobi_core::series::json::{qseries_from_json, qseries_to_json};
use jacobi_core::series::QSeries;
use jacobi_core::Rat;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

fn small_series() -> impl Strategy<Value = QSeries> {
    (1i64..=3, 4i64..=12, prop::collection::vec((-3i64..12, -20i64..20, 1i64..4), 0..8)).prop_map(|(s, p, ts)| {
        QSeries::from_terms(s, p, ts.into_iter().map(|(t, n, d)| (t, Rat::new(n.into(), d.into()))))
    })
}

fn config(cases: u32) -> Config {
    Config { cases, failure_persistence: None, ..Config::default() }
}

fn randomized() -> Result<(), String> {
    let mut runner = TestRunner::new(config(128));
    runner
        .run(&(small_series(), small_series(), small_series()), |(a, b, c)| {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&(&b + &c)), &a.mul(&b) + &a.mul(&c));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(qseries_from_json(&qseries_to_json(&a)).unwrap(), a);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    let p = 12;
    let den = &eisenstein(4, p).unwrap() + &theta_const(0, 0, p).unwrap();
    let mut runner = TestRunner::new(config(64));
    runner
        .run(&small_series(), |a| {
            let a = a.truncate(&int(6));
            let back = a.mul(&den).div(&den).unwrap();
            prop_assert_eq!(back.truncate(&a.prec_q()), a.truncate(&back.prec_q()));
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(())
}

fn main() -> ExitCode {
    let mut checks: Vec<Check> = acceptance();
    let randomized = randomized();
    let last = checks.last_mut().expect("six criteria");
    match randomized {
        Ok(()) => last.detail.push_str("; randomized ring laws, JSON and q-series division round trips"),
        Err(e) => {
            last.passed = false;
            last.detail.push_str(&format!("; randomized property failed: {e}"));
        }
    }
    for c in &checks {
        println!("{c}");
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    println!("acceptance: {} of {} criteria pass", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
