//! The suite's checks can fail: tightened tolerances and wrong inputs must
//! show up as failures rather than passes.

use dunkl::suite::{functional_equation_checks, gaussian_zeta_checks, run, Check, Status, Suite, SuiteConfig};
use dunkl_core::poly::q;

#[test]
fn measured_checks_compare_against_the_tolerance() {
    assert_eq!(Check::measured("a".into(), "x", 1e-3, 1e-4).status, Status::Fail);
    assert_eq!(Check::measured("a".into(), "x", 1e-5, 1e-4).status, Status::Pass);
    assert_eq!(Check::measured("a".into(), "x", f64::NAN, 1e-4).status, Status::Fail);
}

#[test]
fn functional_equation_fails_below_its_accuracy() {
    let checks = functional_equation_checks(&[1], None, &|_| 1e-12);
    let gaussian = checks.iter().find(|c| c.check_id.ends_with("gaussian")).unwrap();
    assert!(!gaussian.passed(), "{gaussian:?}");
}

#[test]
fn gaussian_zeta_checks_pass_within_tolerance() {
    let checks = gaussian_zeta_checks(&[1], None);
    assert_eq!(checks.len(), 5);
    for c in &checks {
        assert!(c.passed(), "{c:?}");
        assert!(c.residual.unwrap() <= c.tolerance);
    }
}

#[test]
fn fixed_k_is_honoured_and_reported() {
    let config = SuiteConfig { suite: Suite::Symbolic, seed: 3, n: Some(1), k: Some(q(2, 3)) };
    let checks = run(&config);
    assert!(!checks.is_empty());
    assert!(checks.iter().all(Check::passed));
    assert!(checks.iter().all(|c| c.check_id.contains(".n1")));
}
