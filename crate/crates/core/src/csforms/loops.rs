//! Transgressed Chern characters of the virtual loop-space bundles
//! V = ⊗Λ_{−q^{j−1/2}}(Ṽ) and V' = ⊗Λ_{q^{j−1/2}}(Ṽ) for flat connections.

use alloc::vec::Vec;

use super::CsEngine;
use crate::checks::Check;
use crate::error::{Error, Result};
use crate::exactscalar::{QSeries, Rational, Scalar};
use crate::formcalc::{ConnectionPair, FormSeries, PowerSumPoly, TransgressionPoly, Truncation};
use crate::thetalib::{theta_core, theta_logderiv, w_to_z, LogDerivKind, ThetaKind};

/// Which loop-space bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LoopBundle {
    /// Paired with θ₂.
    V,
    /// Paired with θ₃.
    VPrime,
}

impl LoopBundle {
    fn theta(self) -> (ThetaKind, LogDerivKind) {
        match self {
            LoopBundle::V => (ThetaKind::Theta2, LogDerivKind::Theta2),
            LoopBundle::VPrime => (ThetaKind::Theta3, LogDerivKind::Theta3),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LoopBundle::V => "V",
            LoopBundle::VPrime => "Vprime",
        }
    }
}

fn quarter_pi2() -> Scalar {
    Scalar::rat_pi(Rational::new(1, 4), -2)
}

/// (1/8π²)∫₀¹ tr[A θₖ'/θₖ(R_t/4π²)] dt as a symbolic transgression.
pub fn loop_cs_poly(which: LoopBundle, cap: u32, n: i64) -> Result<TransgressionPoly> {
    let (_, lk) = which.theta();
    let g = theta_logderiv(lk, (cap / 2) as usize, n)?
        .rescale(&quarter_pi2())
        .scale(&Scalar::rat_pi(Rational::new(1, 8), -2));
    Ok(TransgressionPoly::from_product(&PowerSumPoly::constant(QSeries::one(), cap), &g))
}

/// det^{1/2}(θₖ(R/4π²)/θₖ(0)) as a power-sum polynomial.
fn loop_det_half(which: LoopBundle, cap: u32, n: i64) -> Result<PowerSumPoly> {
    let (tk, _) = which.theta();
    let th = w_to_z(&theta_core(tk, (cap / 2) as usize, n));
    let norm = th.mul_q(&th.coeff(0).invert()?).rescale(&quarter_pi2());
    PowerSumPoly::det_half(&norm, cap)
}

fn require_flat(pair: &ConnectionPair) -> Result<()> {
    if pair.claims_flat() {
        return Ok(());
    }
    for a in [pair.a0(), pair.a1()] {
        if let Some((i, j, term)) = crate::formcalc::first_curvature_violation(a)? {
            return Err(Error::FlatnessViolation(alloc::format!("entry ({}, {}): {}", i, j, term)));
        }
    }
    Ok(())
}

/// The loop-space transgression for a flat pair.
pub fn loop_cs(which: LoopBundle, pair: &ConnectionPair, n: i64, trunc: Truncation) -> Result<FormSeries> {
    require_flat(pair)?;
    let mut engine = CsEngine::new(pair, n, trunc)?;
    let poly = loop_cs_poly(which, engine.cap(), n)?;
    Ok(engine.eval(&poly))
}

/// Closedness of both forms, the T relation CS(V)(τ+1) = CS(V')(τ), and
/// the trivial determinant factor along R_t.
pub fn loop_suite(pair: &ConnectionPair, n: i64, trunc: Truncation) -> Result<Vec<Check>> {
    require_flat(pair)?;
    let mut engine = CsEngine::new(pair, n, trunc)?;
    let cap = engine.cap();
    let v = engine.eval(&loop_cs_poly(LoopBundle::V, cap, n)?);
    let vp = engine.eval(&loop_cs_poly(LoopBundle::VPrime, cap, n)?);
    let mut out = Vec::new();
    out.push(Check::zero("loop.closed_V", "d CS(V) = 0 for flat connections", &v.d().truncate(trunc)));
    out.push(Check::zero("loop.closed_Vprime", "d CS(V') = 0 for flat connections", &vp.d().truncate(trunc)));
    out.push(Check::zero("loop.tshift", "CS(V)(τ+1) = CS(V')(τ)", &v.tshift().sub(&vp)));
    for which in [LoopBundle::V, LoopBundle::VPrime] {
        let det = engine.pair_data().family_data().eval(&loop_det_half(which, cap, n)?);
        out.push(Check::zero(
            &alloc::format!("loop.det_half_{}", which.name()),
            "det^{1/2}(θₖ(R_t/4π²)/θₖ(0)) = 1",
            &det.sub(&FormSeries::constant(QSeries::one().truncate(n))),
        ));
    }
    out.push(Check::flag("loop.nontrivial", "CS(V) is nonzero", !v.is_zero()));
    Ok(out)
}
