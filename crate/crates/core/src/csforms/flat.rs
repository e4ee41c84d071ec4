//! Flat pairs: R_t = (t² − t)A∧A, vanishing power sums, and the E₄
//! identity for the 7-component of CSΨ_W.

use alloc::vec::Vec;

use super::CsEngine;
use crate::charforms::phi_poly;
use crate::checks::Check;
use crate::error::{Error, Result};
use crate::exactscalar::{QSeries, Rational, Scalar};
use crate::formcalc::{first_curvature_violation, flat_pair_from_seed, ConnectionPair, Form, FormSeries, MatrixForm, Truncation};
use crate::thetalib::{e2, e4, theta_logderiv, GenusKind, LogDerivKind};

/// Seeds tried by [`gen_flat_pair`] before giving up.
pub const FLAT_RETRIES: u64 = 8;

/// tr[A^k].
pub fn trace_power(a: &MatrixForm, k: usize, trunc: Truncation) -> Form<Rational> {
    let pow = |e: usize| {
        let mut p = MatrixForm::identity(a.n());
        for _ in 0..e {
            p = p.mul(a, trunc).expect("square");
        }
        p
    };
    let hi = k.div_ceil(2);
    pow(hi).trace_of_product(&pow(k - hi), trunc).expect("square")
}

/// ∫₀¹ (t² − t)^k dt.
pub fn beta_integral(k: u8) -> Rational {
    let base = Form::<Rational>::one().mul_t(2).sub(&Form::one().mul_t(1));
    let mut acc = Form::<Rational>::one();
    for _ in 0..k {
        acc = acc.wedge(&base, Truncation::None);
    }
    acc.integrate_t().coeff(&crate::formcalc::Monomial::ONE)
}

/// A flat pair (d, d + g⁻¹dg) from a product of `shears` unimodular shears.
///
/// On charts with m ≥ 7 and rank n ≥ 4 the draw is retried until
/// tr[A⁷] ≠ 0 (checked at polynomial degree 0). Below rank 4, tr[A⁷]
/// vanishes identically and the first draw is returned.
pub fn gen_flat_pair(m: usize, n: usize, seed: u64, shears: usize) -> Result<ConnectionPair> {
    for k in 0..FLAT_RETRIES {
        let s = seed.wrapping_add(k.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let pair = flat_pair_from_seed(m, n, shears, 1, s)?;
        if m < 7 || n < 4 || !trace_power(pair.a1(), 7, Truncation::PolyDegree(0)).is_zero() {
            return Ok(pair);
        }
    }
    Err(Error::DegenerateScenario(alloc::format!("tr[A^7] vanished for {} seeds starting at {}", FLAT_RETRIES, seed)))
}

fn require_flat(pair: &ConnectionPair) -> Result<()> {
    for (label, a) in [("A0", pair.a0()), ("A1", pair.a1())] {
        if let Some((i, j, term)) = first_curvature_violation(a)? {
            return Err(Error::FlatnessViolation(alloc::format!("curvature of {} has nonzero entry ({}, {}): {}", label, i, j, term)));
        }
    }
    Ok(())
}

/// Identities for a flat pair, to q-order `n`.
pub fn flat_suite(pair: &ConnectionPair, n: i64, trunc: Truncation) -> Result<Vec<Check>> {
    if !pair.claims_flat() {
        require_flat(pair)?;
    }
    let m = pair.m();
    let a = pair.difference();
    let mut engine = CsEngine::new(pair, n, trunc)?;
    let mut out = Vec::new();

    let aa = a.mul(&a, trunc)?;
    let expected = aa.mul_t(2).sub(&aa.mul_t(1))?;
    let rt = engine.pair_data().curvature_family().clone();
    out.push(Check::flag("flat.curvature_family", "R_t = (t² − t)A∧A", rt.sub(&expected)?.is_zero()));

    let mut sums = Form::<Rational>::zero();
    for k in 1..=(m / 2) as u8 {
        sums = sums.add(&engine.pair_data().family_data().power_sum(k));
    }
    out.push(Check::zero("flat.power_sums", "tr[R_tᵏ] = 0 for all k", &sums.to_series()));

    let cap = engine.cap();
    let det = engine.pair_data().family_data().eval(&phi_poly(GenusKind::PsiW, cap, n)?);
    out.push(Check::zero(
        "flat.det_half",
        "det^{1/2} factor of Ψ_W along R_t is 1",
        &det.sub(&FormSeries::constant(QSeries::one().truncate(n))),
    ));

    out.push(Check::flag("flat.beta", "∫₀¹(t² − t)³dt = −1/140", beta_integral(3) == Rational::new(-1, 140)));

    let b = theta_logderiv(LogDerivKind::ThetaReg, 3, n)?;
    let c3 = b.coeff(3);
    // (1/512π⁸)(1/3!)∂³_z = c₃/512π⁸ with c₃ the z³ coefficient
    let lead = c3.coeff(0).scale(&(&beta_integral(3) * &Rational::new(1, 512))).shift_pi(-8);
    let want = Scalar::rat_pi(Rational::new(-1, 3225600), -4);
    out.push(Check::zero(
        "flat.e4_constant",
        "leading constant −1/3225600π⁴",
        &FormSeries::constant(QSeries::constant(lead.sub(&want))),
    ));
    let e4s = e4(n);
    out.push(Check::zero(
        "flat.bracket_e4",
        "z³ coefficient of 1/z − θ'/θ is (π⁴/45)E₄",
        &FormSeries::constant(c3.sub(&e4s.scale(&Scalar::rat_pi(Rational::new(1, 45), 4)))),
    ));
    out.push(Check::zero(
        "flat.bracket_e2",
        "z coefficient of 1/z − θ'/θ is (π²/3)E₂, quasimodular of weight 2",
        &FormSeries::constant(b.coeff(1).sub(&e2(n).scale(&Scalar::rat_pi(Rational::new(1, 3), 2)))),
    ));

    let psi = engine.cs(GenusKind::PsiW)?.form;
    if m >= 3 {
        let tr3 = trace_power(&a, 3, trunc).to_series();
        let rhs = tr3.scale(&e2(n).scale(&Scalar::rat_pi(Rational::new(-1, 576), -2)));
        out.push(Check::zero("flat.psiW_3", "{CSΨ_W}⁽³⁾ = −E₂ tr[A³]/576π² (not modular)", &psi.component(3).sub(&rhs)));
    }
    if m >= 7 {
        let tr7 = trace_power(&a, 7, trunc);
        if tr7.is_zero() {
            out.push(Check::skipped("flat.psiW_7_e4", "{CSΨ_W}⁽⁷⁾ = −E₄ tr[A⁷]/3225600π⁴", "degenerate scenario: tr[A^7] = 0"));
        } else {
            let psi7 = psi.component(7);
            let rhs = tr7.to_series().scale(&e4s.scale(&want));
            out.push(Check::zero("flat.psiW_7_e4", "{CSΨ_W}⁽⁷⁾ = −E₄ tr[A⁷]/3225600π⁴", &psi7.sub(&rhs)));
            out.push(Check::flag("flat.psiW_7_grading", "{CSΨ_W}⁽⁷⁾ is homogeneous of π-degree −4", psi7.pi_degree() == Some(Some(-4))));
        }
    } else {
        out.push(Check::skipped("flat.psiW_7_e4", "{CSΨ_W}⁽⁷⁾ = −E₄ tr[A⁷]/3225600π⁴", "needs m >= 7"));
    }
    Ok(out)
}
