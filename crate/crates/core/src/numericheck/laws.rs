//! Theta transformation laws under S: τ ↦ −1/τ and T: τ ↦ τ+1.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

use super::eval::{q24, theta_with_terms};
use super::{fmt_c, rel, NumericConfig};
use crate::checks::Check;
use crate::error::Result;
use crate::thetalib::{modular_table, theta_expand, ThetaKind};

const I: Complex64 = Complex64::new(0.0, 1.0);
const FLOOR: f64 = 1e-13;

fn s_partner(kind: ThetaKind) -> ThetaKind {
    match kind {
        ThetaKind::Theta => ThetaKind::Theta,
        ThetaKind::Theta1 => ThetaKind::Theta2,
        ThetaKind::Theta2 => ThetaKind::Theta1,
        ThetaKind::Theta3 => ThetaKind::Theta3,
    }
}

/// (τ/i)^{1/2} on the principal branch, with the extra 1/i for θ.
fn s_factor(kind: ThetaKind, tau: Complex64) -> Complex64 {
    let s = (tau / I).sqrt();
    if kind == ThetaKind::Theta {
        s / I
    } else {
        s
    }
}

/// Residuals of the value and derivative S-laws for one kind.
fn s_law(kind: ThetaKind, v: Complex64, tau: Complex64, terms: usize) -> (f64, f64) {
    let (lhs, dlhs) = theta_with_terms(kind, v, -tau.inv(), terms);
    let (p, dp) = theta_with_terms(s_partner(kind), tau * v, tau, terms);
    let f = s_factor(kind, tau) * (I * PI * tau * v * v).exp();
    let rhs = f * p;
    let drhs = f * (2.0 * PI * I * tau * v * p + tau * dp);
    (rel(lhs, rhs), rel(dlhs, drhs))
}

/// Residuals of the value and derivative T-laws for one kind.
fn t_law(kind: ThetaKind, v: Complex64, tau: Complex64, terms: usize) -> (f64, f64) {
    let (lhs, dlhs) = theta_with_terms(kind, v, tau + 1.0, terms);
    let (other, factor) = match kind {
        ThetaKind::Theta | ThetaKind::Theta1 => (kind, (I * PI / 4.0).exp()),
        ThetaKind::Theta2 => (ThetaKind::Theta3, Complex64::new(1.0, 0.0)),
        ThetaKind::Theta3 => (ThetaKind::Theta2, Complex64::new(1.0, 0.0)),
    };
    let (r, dr) = theta_with_terms(other, v, tau, terms);
    (rel(lhs, factor * r), rel(dlhs, factor * dr))
}

fn nulls(tau: Complex64, terms: usize) -> [Complex64; 3] {
    let z = Complex64::new(0.0, 0.0);
    [
        theta_with_terms(ThetaKind::Theta1, z, tau, terms).0,
        theta_with_terms(ThetaKind::Theta2, z, tau, terms).0,
        theta_with_terms(ThetaKind::Theta3, z, tau, terms).0,
    ]
}

/// δ₁, ε₁, δ₂, ε₂, δ₃, ε₃ from numeric theta constants.
fn delta_eps(tau: Complex64, terms: usize) -> [Complex64; 6] {
    let [t1, t2, t3] = nulls(tau, terms).map(|t| t.powi(4));
    [(t2 + t3) / 8.0, t2 * t3 / 16.0, -(t1 + t3) / 8.0, t1 * t3 / 16.0, (t1 - t2) / 8.0, -t1 * t2 / 16.0]
}

/// Every S- and T-law of θ, θ₁, θ₂, θ₃ and their v-derivatives at all
/// sample points, θ'(0, −1/τ), the Jacobi identity, and the laws of δ and ε.
pub fn check_transformations(cfg: &NumericConfig) -> Result<Vec<Check>> {
    cfg.validate()?;
    let terms = cfg.product_terms;
    let tol = cfg.tol;
    let zero = Complex64::new(0.0, 0.0);
    let mut out = Vec::new();
    for &tau in &cfg.tau_samples {
        let ts = fmt_c(tau);
        for &v in &cfg.v_samples {
            let at = alloc::format!("[tau={},v={}]", ts, fmt_c(v));
            for kind in ThetaKind::ALL {
                let name = kind.name();
                let (s, ds) = s_law(kind, v, tau, terms);
                let (t, dt) = t_law(kind, v, tau, terms);
                out.push(Check::numeric(&alloc::format!("numeric.S.{}{}", name, at), "S-law of the theta function", s, tol));
                out.push(Check::numeric(&alloc::format!("numeric.T.{}{}", name, at), "T-law of the theta function", t, tol));
                out.push(Check::numeric(&alloc::format!("numeric.S.d{}{}", name, at), "differentiated S-law", ds, tol));
                out.push(Check::numeric(&alloc::format!("numeric.T.d{}{}", name, at), "differentiated T-law", dt, tol));
            }
        }
        let at = alloc::format!("[tau={}]", ts);
        let (th0, _) = theta_with_terms(ThetaKind::Theta, zero, tau, terms);
        out.push(Check::numeric(&alloc::format!("numeric.theta_zero{}", at), "θ(0, τ) = 0", th0.norm(), tol));

        let (_, dl) = theta_with_terms(ThetaKind::Theta, zero, -tau.inv(), terms);
        let (_, dr) = theta_with_terms(ThetaKind::Theta, zero, tau, terms);
        let want = s_factor(ThetaKind::Theta, tau) * tau * dr;
        out.push(Check::numeric(&alloc::format!("numeric.S.dtheta0{}", at), "θ'(0, −1/τ) = (1/i)(τ/i)^{1/2} τ θ'(0, τ)", rel(dl, want), tol));

        let [t1, t2, t3] = nulls(tau, terms);
        out.push(Check::numeric(&alloc::format!("numeric.jacobi{}", at), "θ'(0, τ) = πθ₁θ₂θ₃", rel(dr, PI * t1 * t2 * t3), tol));

        let here = delta_eps(tau, terms);
        let there = delta_eps(-tau.inv(), terms);
        let shifted = delta_eps(tau + 1.0, terms);
        let tau2 = tau * tau;
        out.push(Check::numeric(&alloc::format!("numeric.S.delta2{}", at), "δ₂(−1/τ) = τ²δ₁(τ), from theta products", rel(there[2], tau2 * here[0]), tol));
        out.push(Check::numeric(&alloc::format!("numeric.S.eps2{}", at), "ε₂(−1/τ) = τ⁴ε₁(τ), from theta products", rel(there[3], tau2 * tau2 * here[1]), tol));
        out.push(Check::numeric(&alloc::format!("numeric.T.delta2{}", at), "δ₂(τ+1) = δ₃(τ)", rel(shifted[2], here[4]), tol));
        out.push(Check::numeric(&alloc::format!("numeric.T.eps2{}", at), "ε₂(τ+1) = ε₃(τ)", rel(shifted[3], here[5]), tol));

        // the same laws summed from the exact q-expansions
        let table = modular_table(cfg.series_trunc);
        let (qa, qb) = (q24(tau), q24(-tau.inv()));
        let d2 = rel(table.delta[1].eval(qb), tau2 * table.delta[0].eval(qa));
        let e2 = rel(table.eps[1].eval(qb), tau2 * tau2 * table.eps[0].eval(qa));
        out.push(Check::numeric(&alloc::format!("numeric.S.delta2_series{}", at), "δ₂(−1/τ) = τ²δ₁(τ), from q-expansions", d2, tol));
        out.push(Check::numeric(&alloc::format!("numeric.S.eps2_series{}", at), "ε₂(−1/τ) = τ⁴ε₁(τ), from q-expansions", e2, tol));
    }
    // at the fixed point τ = i the principal branch must reproduce θ₃ itself
    let i = I;
    for &v in &cfg.v_samples {
        let (lhs, _) = theta_with_terms(ThetaKind::Theta3, v, i, terms);
        let (rhs, _) = theta_with_terms(ThetaKind::Theta3, i * v, i, terms);
        let r = rel(lhs, (-PI * v * v).exp() * rhs);
        out.push(Check::numeric(&alloc::format!("numeric.branch_fixed_point[v={}]", fmt_c(v)), "θ₃(v, i) = e^{−πv²}θ₃(iv, i)", r, tol));
    }
    out.push(convergence_check(cfg));
    Ok(out)
}

/// Largest S-law residual (values, all kinds, first τ and v sample) for
/// 1, 2, …, `up_to` product factors.
pub fn convergence_witness(cfg: &NumericConfig, up_to: usize) -> Vec<(usize, f64)> {
    let tau = cfg.tau_samples.first().copied().unwrap_or(Complex64::new(0.0, 2.0));
    let v = cfg.v_samples.first().copied().unwrap_or(Complex64::new(0.3, 0.1));
    (1..=up_to)
        .map(|k| (k, ThetaKind::ALL.iter().map(|&kind| s_law(kind, v, tau, k).0).fold(0.0, f64::max)))
        .collect()
}

fn convergence_check(cfg: &NumericConfig) -> Check {
    let w = convergence_witness(cfg, 10);
    let ok = w.windows(2).all(|p| p[1].1 <= p[0].1 || p[1].1 < FLOOR) && w[0].1 > w[w.len() - 1].1;
    Check::flag("numeric.convergence", "S-law residuals decrease as product terms increase", ok)
}

/// Numeric products against the exact q-expansions, Σ_d c_d(q)(πv)^d, for
/// all four kinds at every sample point.
pub fn series_consistency(cfg: &NumericConfig, wdeg: usize) -> Result<Vec<Check>> {
    cfg.validate()?;
    let mut out = Vec::new();
    for kind in ThetaKind::ALL {
        let series = theta_expand(kind, wdeg, cfg.series_trunc);
        for &tau in &cfg.tau_samples {
            let q = q24(tau);
            for &v in &cfg.v_samples {
                let w = PI * v;
                let mut acc = Complex64::new(0.0, 0.0);
                for (d, c) in series.coeffs().iter().enumerate() {
                    acc += c.eval(q) * w.powi(d as i32);
                }
                let num = theta_with_terms(kind, v, tau, cfg.product_terms).0;
                out.push(Check::numeric(
                    &alloc::format!("numeric.series.{}[tau={},v={}]", kind.name(), fmt_c(tau), fmt_c(v)),
                    "product evaluation agrees with the exact q-expansion",
                    rel(num, acc),
                    cfg.tol,
                ));
            }
        }
    }
    Ok(out)
}
