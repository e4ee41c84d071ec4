//! S-modularity of the transgressed forms, checked by summing their exact
//! q-series at τ and at the transformed point.

use alloc::vec::Vec;
use num_complex::Complex64;

use super::eval::{eval_form, NumericForm};
use super::{fmt_c, NumericConfig};
use crate::charforms::phi_poly;
use crate::checks::Check;
use crate::csforms::{cs_poly, CsEngine};
use crate::error::{Error, Result};
use crate::formcalc::{first_curvature_violation, ConnectionPair, FormSeries, Truncation};
use crate::thetalib::GenusKind;

/// Numeric check builder: compares lhs with factor·rhs and treats a
/// residual that is dominated by the q-truncation as inconclusive.
fn compare(id: &str, anchor: &str, lhs: &NumericForm, rhs: &NumericForm, factor: Complex64, tol: f64) -> Check {
    let scale = lhs.max_abs().max(rhs.max_abs() * factor.norm());
    if scale == 0.0 {
        return Check::skipped(id, anchor, "the compared component vanishes on this chart");
    }
    let r = lhs.rel_residual(rhs, factor);
    let tail = lhs.tail.max(rhs.tail * factor.norm()) / scale;
    if r >= tol && tail >= tol * 1e-2 {
        return Check::skipped(
            id,
            anchor,
            &alloc::format!("residual {:.2e} is dominated by q-truncation (tail ~{:.1e}); raise the series order", r, tail),
        );
    }
    Check::numeric(id, anchor, r, tol)
}

fn pow(z: Complex64, k: u32) -> Complex64 {
    z.powi(k as i32)
}

struct Forms {
    l: FormSeries,
    w: FormSeries,
    wp: FormSeries,
}

fn cs_components(engine: &mut CsEngine, deg: u32, n: i64) -> Result<Forms> {
    let mut get = |kind| -> Result<FormSeries> { Ok(engine.eval(&cs_poly(kind, deg, n)?.component(deg))) };
    Ok(Forms { l: get(GenusKind::PhiL)?, w: get(GenusKind::PhiW)?, wp: get(GenusKind::PhiWPrime)? })
}

/// The weight-2i S-laws of the (4i−1)-components at every τ sample:
///
/// CSΦ_L(−1/τ) = (2τ)^{2i}CSΦ_W(τ), CSΦ_W(−1/τ) = (τ/2)^{2i}CSΦ_L(τ),
/// CSΦ_W'(−1/τ) = τ^{2i}CSΦ_W'(τ),
///
/// the T relations as a cross-check against the exact tower, the
/// generator words ST²ST (Γ₀(2), on CSΦ_L) and STS (Γ⁰(2), on CSΦ_W), and,
/// when the chart has room, the closed-form law
/// {Φ_L(−1/τ)}^{(4i)} = (2τ)^{2i}{Φ_W(τ)}^{(4i)} at ∇₁.
pub fn check_cs_modularity_s(pair: &ConnectionPair, i: u32, cfg: &NumericConfig) -> Result<Vec<Check>> {
    cfg.validate()?;
    if i == 0 {
        return Err(Error::InvalidConfig("i must be positive".into()));
    }
    let n = cfg.series_trunc;
    let tol = cfg.tol;
    let m = pair.m() as u32;
    let deg = 4 * i - 1;
    let w2 = 2 * i;
    let mut out = Vec::new();
    if deg > m {
        out.push(Check::skipped("cs.S", "weight-2i S-laws of the transgressed forms", &alloc::format!("needs m >= {}", deg)));
        return Ok(out);
    }
    let mut engine = CsEngine::new(pair, n, Truncation::PolyDegree(0))?;
    let f = cs_components(&mut engine, deg, n)?;
    for &tau in &cfg.tau_samples {
        let at = alloc::format!("[tau={}]", fmt_c(tau));
        let s = -tau.inv();
        let id = |law: &str| alloc::format!("numeric.cs.{}{}", law, at);
        out.push(compare(
            &id("S.phiL"),
            "{CSΦ_L(−1/τ)}⁽⁴ⁱ⁻¹⁾ = (2τ)^{2i}{CSΦ_W(τ)}⁽⁴ⁱ⁻¹⁾",
            &eval_form(&f.l, s),
            &eval_form(&f.w, tau),
            pow(2.0 * tau, w2),
            tol,
        ));
        out.push(compare(
            &id("S.phiW"),
            "{CSΦ_W(−1/τ)}⁽⁴ⁱ⁻¹⁾ = (τ/2)^{2i}{CSΦ_L(τ)}⁽⁴ⁱ⁻¹⁾",
            &eval_form(&f.w, s),
            &eval_form(&f.l, tau),
            pow(tau / 2.0, w2),
            tol,
        ));
        out.push(compare(
            &id("S.phiWp"),
            "{CSΦ_W'(−1/τ)}⁽⁴ⁱ⁻¹⁾ = τ^{2i}{CSΦ_W'(τ)}⁽⁴ⁱ⁻¹⁾",
            &eval_form(&f.wp, s),
            &eval_form(&f.wp, tau),
            pow(tau, w2),
            tol,
        ));
        let one = Complex64::new(1.0, 0.0);
        out.push(compare(&id("T.phiW"), "CSΦ_W(τ+1) = CSΦ_W'(τ)", &eval_form(&f.w, tau + 1.0), &eval_form(&f.wp, tau), one, tol));
        out.push(compare(&id("T.phiL"), "CSΦ_L(τ+1) = CSΦ_L(τ)", &eval_form(&f.l, tau + 1.0), &eval_form(&f.l, tau), one, tol));
        out.push(compare(&id("T2.phiWp"), "CSΦ_W'(τ+2) = CSΦ_W'(τ)", &eval_form(&f.wp, tau + 2.0), &eval_form(&f.wp, tau), one, tol));
    }

    // ST²ST τ = −(τ+1)/(2τ+1), away from its fixed point (−1+i)/2
    let t0 = Complex64::new(-0.5, 0.55);
    let g = -(t0 + 1.0) / (2.0 * t0 + 1.0);
    out.push(compare(
        &alloc::format!("numeric.cs.word.ST2ST[tau={}]", fmt_c(t0)),
        "{CSΦ_L(ST²STτ)}⁽⁴ⁱ⁻¹⁾ = (2τ+1)^{2i}{CSΦ_L(τ)}⁽⁴ⁱ⁻¹⁾",
        &eval_form(&f.l, g),
        &eval_form(&f.l, t0),
        pow(2.0 * t0 + 1.0, w2),
        tol,
    ));
    // STS τ = −τ/(τ−1)
    let t1 = Complex64::new(1.0, 0.8);
    let g = -t1 / (t1 - 1.0);
    out.push(compare(
        &alloc::format!("numeric.cs.word.STS[tau={}]", fmt_c(t1)),
        "{CSΦ_W(STSτ)}⁽⁴ⁱ⁻¹⁾ = (τ−1)^{2i}{CSΦ_W(τ)}⁽⁴ⁱ⁻¹⁾",
        &eval_form(&f.w, g),
        &eval_form(&f.w, t1),
        pow(t1 - 1.0, w2),
        tol,
    ));

    let top = 4 * i;
    if top <= m {
        let (_, pl) = engine.endpoint_eval(&phi_poly(GenusKind::PhiL, top, n)?.component(top));
        let (_, pw) = engine.endpoint_eval(&phi_poly(GenusKind::PhiW, top, n)?.component(top));
        for &tau in &cfg.tau_samples {
            out.push(compare(
                &alloc::format!("numeric.phi.S.phiL[tau={}]", fmt_c(tau)),
                "{Φ_L(−1/τ)}⁽⁴ⁱ⁾ = (2τ)^{2i}{Φ_W(τ)}⁽⁴ⁱ⁾",
                &eval_form(&pl, -tau.inv()),
                &eval_form(&pw, tau),
                pow(2.0 * tau, w2),
                tol,
            ));
        }
    } else {
        out.push(Check::skipped("numeric.phi.S.phiL", "{Φ_L(−1/τ)}⁽⁴ⁱ⁾ = (2τ)^{2i}{Φ_W(τ)}⁽⁴ⁱ⁾", &alloc::format!("needs m >= {}", top)));
    }
    Ok(out)
}

/// {CSΨ_W(−1/τ)}⁽⁴ⁱ⁻¹⁾ = τ^{2i}{CSΨ_W(τ)}⁽⁴ⁱ⁻¹⁾ for a flat pair, at the
/// self-dual point τ = i and every τ sample. With i ≥ 2 the form is built
/// from E₄ and higher; the 3-component carries E₂ and must fail the law.
pub fn check_flat_psi_modularity_s(pair: &ConnectionPair, i: u32, cfg: &NumericConfig) -> Result<Vec<Check>> {
    cfg.validate()?;
    if !pair.claims_flat() {
        for a in [pair.a0(), pair.a1()] {
            if let Some((r, c, term)) = first_curvature_violation(a)? {
                return Err(Error::FlatnessViolation(alloc::format!("entry ({}, {}): {}", r, c, term)));
            }
        }
    }
    if i < 2 {
        return Err(Error::InvalidConfig("the flat law is modular only for i >= 2".into()));
    }
    let n = cfg.series_trunc;
    let deg = 4 * i - 1;
    let m = pair.m() as u32;
    let mut out = Vec::new();
    let mut engine = CsEngine::new(pair, n, Truncation::PolyDegree(0))?;
    if deg > m {
        out.push(Check::skipped("numeric.cs.S.psiW", "{CSΨ_W(−1/τ)}⁽⁴ⁱ⁻¹⁾ = τ^{2i}{CSΨ_W(τ)}⁽⁴ⁱ⁻¹⁾", &alloc::format!("needs m >= {}", deg)));
    } else {
        let psi = engine.eval(&cs_poly(GenusKind::PsiW, deg, n)?.component(deg));
        let mut taus = alloc::vec![Complex64::new(0.0, 1.0)];
        taus.extend(cfg.tau_samples.iter().copied());
        for tau in taus {
            out.push(compare(
                &alloc::format!("numeric.cs.S.psiW[tau={}]", fmt_c(tau)),
                "{CSΨ_W(−1/τ)}⁽⁴ⁱ⁻¹⁾ = τ^{2i}{CSΨ_W(τ)}⁽⁴ⁱ⁻¹⁾",
                &eval_form(&psi, -tau.inv()),
                &eval_form(&psi, tau),
                pow(tau, 2 * i),
                cfg.tol,
            ));
        }
    }
    if m >= 3 {
        let psi3 = engine.eval(&cs_poly(GenusKind::PsiW, 3, n)?.component(3));
        let tau = Complex64::new(0.0, 2.0);
        let lhs = eval_form(&psi3, -tau.inv());
        let rhs = eval_form(&psi3, tau);
        let ok = lhs.max_abs() > 0.0 && lhs.rel_residual(&rhs, tau * tau) > 1e3 * cfg.tol;
        out.push(Check::flag("numeric.cs.S.psiW_3_quasimodular", "{CSΨ_W}⁽³⁾ carries E₂ and is not of weight 2", ok));
    }
    Ok(out)
}
