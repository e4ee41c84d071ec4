//! Acceptance suite: ten criteria, one PASS/FAIL line each, with the
//! measured runtime against its budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use transgression_core::charforms::{anomaly_residual_12, phi_form, phi_form_oracle};
use transgression_core::checks::{Check, Status};
use transgression_core::csforms::{
    beta_integral, dim3_closed_forms, eleven_dim_ledger, exactness_checks, flat_suite, gen_flat_pair, loop_suite,
    tshift_relations,
};
use transgression_core::exactscalar::{QSeries, Rational, Scalar};
use transgression_core::formcalc::{curvature, random_pair, ConnectionShape, CurvatureData, Truncation};
use transgression_core::numericheck::{
    check_cs_modularity_s, check_flat_psi_modularity_s, check_transformations, NumericConfig,
};
use transgression_core::thetalib::{jacobi_identity_check, modular_table, GenusKind};

type Outcome = Result<String, String>;

/// Every check passes; skipped checks are tolerated only when listed.
fn all_hold(checks: &[Check], may_skip: &[&str]) -> Outcome {
    let mut pass = 0;
    for c in checks {
        match &c.status {
            Status::Pass => pass += 1,
            Status::Fail => return Err(format!("{} failed: {:?}", c.id, c.residual)),
            Status::Skipped(_) if may_skip.iter().any(|p| c.id.starts_with(p)) => {}
            Status::Skipped(r) => return Err(format!("{} skipped: {}", c.id, r)),
        }
    }
    Ok(format!("{} identities", pass))
}

fn require(checks: &[Check], id: &str) -> Result<(), String> {
    match checks.iter().find(|c| c.id == id) {
        Some(c) if c.passed() => Ok(()),
        Some(c) => Err(format!("{} is {:?}", id, c.status)),
        None => Err(format!("{} missing", id)),
    }
}

fn series(trunc: i64, terms: &[(i64, i64, i64)]) -> QSeries {
    QSeries::from_terms(trunc, terms.iter().map(|&(k, a, b)| (k, Scalar::from_rational(Rational::new(a, b)))).collect())
}

fn c1_expansions() -> Outcome {
    let t = modular_table(49);
    let listed = [
        ("delta1", &t.delta[0], series(49, &[(0, 1, 4), (24, 6, 1), (48, 6, 1)])),
        ("eps1", &t.eps[0], series(49, &[(0, 1, 16), (24, -1, 1), (48, 7, 1)])),
        ("delta2", &t.delta[1], series(25, &[(0, -1, 8), (12, -3, 1), (24, -3, 1)])),
        ("eps2", &t.eps[1], series(25, &[(12, 1, 1), (24, 8, 1)])),
        ("delta3", &t.delta[2], series(25, &[(0, -1, 8), (12, 3, 1), (24, -3, 1)])),
        ("eps3", &t.eps[2], series(25, &[(12, -1, 1), (24, 8, 1)])),
    ];
    for (name, got, want) in listed {
        if got.truncate(want.trunc()) != want {
            return Err(format!("{} = {}", name, got.truncate(want.trunc())));
        }
    }
    Ok("6 expansions".into())
}

fn c2_jacobi() -> Outcome {
    let r = jacobi_identity_check(241);
    if r.is_zero() {
        Ok("exact through q^10".into())
    } else {
        Err(format!("residual {}", r))
    }
}

fn c3_exactness() -> Outcome {
    let mut checks = Vec::new();
    for (k, (m, n)) in [(3, 3), (5, 2), (7, 2), (3, 4), (5, 4), (7, 3)].into_iter().enumerate() {
        let p = random_pair(&ConnectionShape::new(m, n, 1), 100 + k as u64, false).map_err(|e| e.to_string())?;
        checks.extend(exactness_checks(&p, 49, p.weight_truncation(1)).map_err(|e| e.to_string())?);
    }
    all_hold(&checks, &[]).map(|s| format!("{} over 6 scenarios", s))
}

fn c4_dim3() -> Outcome {
    let mut checks = Vec::new();
    for seed in [1, 2, 3] {
        let p = random_pair(&ConnectionShape::new(3, 3, 1), seed, true).map_err(|e| e.to_string())?;
        checks.extend(dim3_closed_forms(&p, 73).map_err(|e| e.to_string())?);
    }
    all_hold(&checks, &[])
}

fn c5_anomaly_and_ledger() -> Outcome {
    let trunc = Truncation::PolyDegree(0);
    let p = random_pair(&ConnectionShape::new(12, 12, 1).terms(4), 7, true).map_err(|e| e.to_string())?;
    let mut data = CurvatureData::new(curvature(p.a1(), trunc).map_err(|e| e.to_string())?, 12, trunc);
    let agw = anomaly_residual_12(&mut data, 32).map_err(|e| e.to_string())?;
    if !agw.is_zero() {
        return Err("12-form anomaly residual is nonzero".into());
    }
    if anomaly_residual_12(&mut data, 31).map_err(|e| e.to_string())?.is_zero() {
        return Err("12-form identity is insensitive to its constant".into());
    }
    let p = random_pair(&ConnectionShape::new(11, 11, 1).skew(true), 7, false).map_err(|e| e.to_string())?;
    let l = eleven_dim_ledger(&p, 73, trunc).map_err(|e| e.to_string())?;
    all_hold(&l.checks, &[])?;
    for id in ["eleven.phiW", "eleven.phiL", "eleven.cancellation", "eleven.printed_61"] {
        require(&l.checks, id)?;
    }
    Ok(format!(
        "agw_12 zero; ledger {} identities (cancellation carries the factor 2^3; {} residual coefficient(s) without it)",
        l.checks.len(),
        l.unscaled_residual.nonzero
    ))
}

fn c6_flat_e4() -> Outcome {
    let p = gen_flat_pair(7, 4, 3, 12).map_err(|e| e.to_string())?;
    let checks = flat_suite(&p, 97, Truncation::PolyDegree(1)).map_err(|e| e.to_string())?;
    all_hold(&checks, &[])?;
    for id in ["flat.psiW_7_e4", "flat.psiW_7_grading", "flat.beta", "flat.e4_constant"] {
        require(&checks, id)?;
    }
    if beta_integral(3) != Rational::new(-1, 140) {
        return Err("beta integral".into());
    }
    Ok("7-component equals -E4 tr[A^7]/3225600pi^4 through q^4".into())
}

fn c7_tshift() -> Outcome {
    let p = random_pair(&ConnectionShape::new(7, 2, 1), 4, false).map_err(|e| e.to_string())?;
    let mut checks = tshift_relations(&p, 49, Truncation::PolyDegree(1)).map_err(|e| e.to_string())?;
    let f = gen_flat_pair(7, 4, 5, 12).map_err(|e| e.to_string())?;
    checks.extend(tshift_relations(&f, 49, Truncation::PolyDegree(1)).map_err(|e| e.to_string())?);
    for id in ["tshift.cs_phiW", "tshift.cs_phiWp", "tshift.cs_phiL", "tshift.cs_psiW_flat", "tshift.phiW"] {
        require(&checks, id)?;
    }
    all_hold(&checks, &[])
}

fn c8_two_routes() -> Outcome {
    let mut count = 0;
    for (m, n, seed) in [(4usize, 3usize, 1u64), (6, 3, 2), (8, 4, 3)] {
        let trunc = Truncation::Weight(m as u32 + 1);
        let p = random_pair(&ConnectionShape::new(m, n, 1).skew(true).terms(4), seed, true).map_err(|e| e.to_string())?;
        let mut data = CurvatureData::new(curvature(p.a1(), trunc).map_err(|e| e.to_string())?, m as u32, trunc);
        for kind in GenusKind::ALL {
            let a = phi_form(kind, &mut data, 25).map_err(|e| e.to_string())?;
            let b = phi_form_oracle(kind, &mut data, 25).map_err(|e| e.to_string())?;
            if a != b {
                return Err(format!("{} differs on m = {}", kind.name(), m));
            }
            count += 1;
        }
    }
    Ok(format!("{} comparisons", count))
}

fn c9_numeric() -> Outcome {
    let cfg = NumericConfig {
        product_terms: 60,
        tau_samples: vec![Complex64::new(0.0, 2.0), Complex64::new(0.0, 1.0)],
        tol: 1e-8,
        ..NumericConfig::default()
    };
    let mut checks = check_transformations(&cfg).map_err(|e| e.to_string())?;
    let p = random_pair(&ConnectionShape::new(8, 3, 1).terms(5), 7, false).map_err(|e| e.to_string())?;
    checks.extend(check_cs_modularity_s(&p, 2, &cfg).map_err(|e| e.to_string())?);
    let f = gen_flat_pair(7, 4, 3, 12).map_err(|e| e.to_string())?;
    checks.extend(check_flat_psi_modularity_s(&f, 2, &cfg).map_err(|e| e.to_string())?);
    for id in ["numeric.phi.S.phiL[tau=2i]", "numeric.cs.S.phiL[tau=2i]", "numeric.cs.S.phiW[tau=i]", "numeric.cs.S.psiW[tau=2i]"] {
        require(&checks, id)?;
    }
    all_hold(&checks, &[])
}

fn c10_loop() -> Outcome {
    let p = gen_flat_pair(7, 4, 11, 12).map_err(|e| e.to_string())?;
    let checks = loop_suite(&p, 49, p.weight_truncation(1)).map_err(|e| e.to_string())?;
    for id in ["loop.closed_V", "loop.tshift", "loop.nontrivial"] {
        require(&checks, id)?;
    }
    all_hold(&checks, &[])
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("modular-form expansions", c1_expansions, 1),
        ("Jacobi identity to q-order 240", c2_jacobi, 5),
        ("transgression exactness, four kinds", c3_exactness, 120),
        ("dimension-3 closed forms at q-order 72", c4_dim3, 30),
        ("12-form anomaly and 11-dimensional ledger", c5_anomaly_and_ledger, 600),
        ("flat 7-form equals E4 multiple at q-order 96", c6_flat_e4, 120),
        ("exact T-relations at q-order 48", c7_tshift, 600),
        ("theta route equals plethystic route", c8_two_routes, 600),
        ("numeric S-laws at tau in {2i, i}", c9_numeric, 60),
        ("loop-space transgression", c10_loop, 600),
    ];
    let mut failed = 0;
    for (k, (name, run, budget)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let r = run();
        let dt = t.elapsed();
        let r = match r {
            Ok(s) if dt > Duration::from_secs(budget) => Err(format!("{}; over the {} s budget", s, budget)),
            r => r,
        };
        match r {
            Ok(s) => println!("criterion {:>2} PASS  {} ({}) [{:.2} s]", k + 1, name, s, dt.as_secs_f64()),
            Err(s) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {}: {} [{:.2} s]", k + 1, name, s, dt.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
