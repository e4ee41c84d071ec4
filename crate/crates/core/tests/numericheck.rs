use num_complex::Complex64;
use transgression_core::checks::{Check, Residual, Status};
use transgression_core::csforms::gen_flat_pair;
use transgression_core::formcalc::{random_pair, ConnectionShape};
use transgression_core::numericheck::*;
use transgression_core::thetalib::ThetaKind;

fn assert_pass(checks: &[Check]) {
    for c in checks {
        assert_eq!(c.status, Status::Pass, "{}: {:?}", c.id, c.residual);
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn theta_products() {
    let cfg = NumericConfig::default();
    let tau = c(0.0, 2.0);
    assert!(theta_eval(ThetaKind::Theta, c(0.0, 0.0), tau, &cfg).norm() < 1e-15);
    let z = c(0.0, 0.0);
    let jac = std::f64::consts::PI
        * theta_eval(ThetaKind::Theta1, z, tau, &cfg)
        * theta_eval(ThetaKind::Theta2, z, tau, &cfg)
        * theta_eval(ThetaKind::Theta3, z, tau, &cfg);
    assert!((theta_eval_deriv(ThetaKind::Theta, z, tau, &cfg) - jac).norm() < 1e-12);
    let v = c(0.3, 0.1);
    let lhs = theta_eval(ThetaKind::Theta3, v, tau + 1.0, &cfg);
    assert!((lhs - theta_eval(ThetaKind::Theta2, v, tau, &cfg)).norm() < 1e-12);
    // derivative against a central difference
    let h = 1e-5;
    let fd = (theta_eval(ThetaKind::Theta2, v + h, tau, &cfg) - theta_eval(ThetaKind::Theta2, v - h, tau, &cfg)) / (2.0 * h);
    assert!((fd - theta_eval_deriv(ThetaKind::Theta2, v, tau, &cfg)).norm() < 1e-8);
}

#[test]
fn transformation_laws() {
    let cfg = NumericConfig { tol: 1e-10, ..NumericConfig::default() };
    let checks = check_transformations(&cfg).unwrap();
    assert_pass(&checks);
    // 3 τ × 2 v × 4 kinds × (S, T, dS, dT)
    assert_eq!(checks.iter().filter(|c| c.id.starts_with("numeric.S.") || c.id.starts_with("numeric.T.")).count(), 96 + 3 * 7);
    let w = convergence_witness(&cfg, 6);
    assert!(w.windows(2).all(|p| p[1].1 < p[0].1 / 10.0));
}

#[test]
fn products_match_series() {
    let cfg = NumericConfig { series_trunc: 289, ..NumericConfig::default() };
    assert_pass(&series_consistency(&cfg, 30).unwrap());
}

#[test]
fn bad_config_rejected() {
    let cfg = NumericConfig { tau_samples: vec![c(1.0, -1.0)], ..NumericConfig::default() };
    assert!(check_transformations(&cfg).is_err());
    let cfg = NumericConfig { tol: 0.0, ..NumericConfig::default() };
    assert!(cfg.validate().is_err());
}

#[test]
fn cs_modularity() {
    let cfg = NumericConfig { tol: 1e-8, ..NumericConfig::default() };
    let p = random_pair(&ConnectionShape::new(8, 3, 1).terms(5), 7, false).unwrap();
    let checks = check_cs_modularity_s(&p, 2, &cfg).unwrap();
    assert_pass(&checks);
    assert!(checks.iter().any(|c| c.id == "numeric.phi.S.phiL[tau=2i]"));
    assert!(checks.iter().all(|c| matches!(c.residual, Residual::Numeric { .. })));
}

#[test]
fn flat_psi_modularity() {
    let cfg = NumericConfig { tol: 1e-8, ..NumericConfig::default() };
    let p = gen_flat_pair(7, 4, 3, 12).unwrap();
    assert_pass(&check_flat_psi_modularity_s(&p, 2, &cfg).unwrap());
    assert!(check_flat_psi_modularity_s(&p, 1, &cfg).is_err());
    let curved = random_pair(&ConnectionShape::new(7, 2, 1), 1, false).unwrap();
    assert!(check_flat_psi_modularity_s(&curved, 2, &cfg).is_err());
}

