mod common;

use multihead::analytic;
use multihead::oracle::{self, OracleState};
use multihead::validate::validate;
use multihead::{Error, Family};
use num_complex::Complex64 as C64;

use common::{cart, polar, spec, FAMILIES};

#[test]
fn doubling_the_cutoff_changes_nothing() {
    for family in FAMILIES {
        for n in [1, 3, 6] {
            let s = spec(cart(1.0, 1.0), n, family);
            let d = oracle::choose_cutoff(&s.alpha(), n, oracle::DEFAULT_EPS).unwrap();
            let a = oracle::build_state(&s, d).unwrap();
            let b = oracle::build_state(&s, 2 * d).unwrap();
            for (h, l) in [(1, 1), (2, 0), (2, 2), (3, 3)] {
                let ma = oracle::oracle_moment(&a, h, l).unwrap();
                let mb = oracle::oracle_moment(&b, h, l).unwrap();
                assert!((ma - mb).norm() < 1e-10, "{family} N={n} ({h},{l})");
            }
            let beta = C64::new(0.3, -0.8);
            let wa = oracle::oracle_wigner(&a, beta).unwrap();
            let wb = oracle::oracle_wigner(&b, beta).unwrap();
            assert!((wa - wb).abs() < 1e-10);
        }
    }
}

#[test]
fn density_matrices_are_physical() {
    for family in FAMILIES {
        for n in 1..=6 {
            let s = spec(polar(2.0, 0.4), n, family);
            let dm = match oracle::build_state_auto(&s, oracle::DEFAULT_EPS).unwrap() {
                OracleState::Pure(v) => v.density(),
                OracleState::Mixed(d) => d,
            };
            assert!(dm.hermiticity_defect() < 1e-14);
            assert!((dm.trace() - 1.0).abs() < 1e-10);
            assert!(dm.min_eigenvalue() > -1e-12);
        }
    }
}

#[test]
fn coherent_superposition_is_an_eigenstate_of_a_to_the_n() {
    for n in 1..=6 {
        for r in [0.5, 1.0, 2.5, 4.0] {
            let s = spec(polar(r, 1.1), n, Family::Coherent);
            let OracleState::Pure(psi) = oracle::build_state_auto(&s, oracle::DEFAULT_EPS).unwrap() else {
                panic!("coherent states are pure");
            };
            let residual = oracle::eigen_residual(&psi, n, s.alpha().to_complex()).unwrap();
            assert!(residual < 1e-8, "N={n} r={r}: {residual}");
        }
    }
}

#[test]
fn validation_at_the_edge_of_the_supported_range() {
    for family in FAMILIES {
        let report = validate(&spec(cart(3.0, 3.0), 6, family), oracle::DEFAULT_EPS).unwrap();
        assert!(report.passed(), "{:?}", report.checks);
    }
}

#[test]
fn single_head_reduces_to_a_coherent_state() {
    let a = cart(1.0, 1.0);
    for family in FAMILIES {
        let s = spec(a, 1, family);
        let t = analytic::moment_table(&s).unwrap();
        assert!((t.a - a.to_complex()).norm() < 1e-14);
        assert!((analytic::mandel_q(&s).unwrap()).abs() < 1e-12);
        assert!(validate(&s, oracle::DEFAULT_EPS).unwrap().passed());
    }
}

#[test]
fn oracle_rejects_points_outside_its_reach() {
    let s = spec(cart(1.0, 0.0), 2, Family::Coherent);
    let state = oracle::build_state(&s, 40).unwrap();
    assert!(matches!(
        oracle::oracle_wigner(&state, C64::new(5.0, 0.0)),
        Err(Error::CutoffInsufficient { .. })
    ));
    assert!(oracle::oracle_wigner(&state, C64::new(f64::NAN, 0.0)).is_err());
}

#[test]
fn oracle_capacity_is_enforced() {
    let a = polar(1e6, 0.0);
    assert!(matches!(
        oracle::choose_cutoff(&a, 1, oracle::DEFAULT_EPS),
        Err(Error::Capacity { .. })
    ));
}
