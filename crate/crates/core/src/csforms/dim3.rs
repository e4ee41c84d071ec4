//! The three closed forms on a 3-dimensional chart with ∇₀ = d.

use alloc::vec::Vec;

use super::CsEngine;
use crate::checks::Check;
use crate::error::{Error, Result};
use crate::exactscalar::{QSeries, Rational, Scalar};
use crate::formcalc::{cs_classic, ConnectionPair, FormSeries, Truncation};
use crate::thetalib::{modular_table, theta_logderiv, GenusKind, LogDerivKind};

/// ∂_z b_κ(z) at z = 0 for the unscaled bracket 1/z − θ'/θ + θₖ'/θₖ.
pub fn bracket_slope(kind: GenusKind, n: i64) -> Result<QSeries> {
    let mut b = theta_logderiv(LogDerivKind::ThetaReg, 1, n)?.coeff(1).clone();
    let partner = match kind {
        GenusKind::PhiL => Some(LogDerivKind::Theta1),
        GenusKind::PhiW => Some(LogDerivKind::Theta2),
        GenusKind::PhiWPrime => Some(LogDerivKind::Theta3),
        GenusKind::PsiW => None,
    };
    if let Some(k) = partner {
        b = b.add(theta_logderiv(k, 1, n)?.coeff(1));
    }
    Ok(b)
}

/// Checks CSΦ_L = −δ₁/6π²·CS(A), CSΦ_W = −δ₂/24π²·CS(A) and
/// CSΦ_W' = −δ₃/24π²·CS(A) with CS(A) = tr[A dA + ⅔A³], together with the
/// slope identity ∂_z b_L(0) = −(8/3)π²δ₁.
pub fn dim3_closed_forms(pair: &ConnectionPair, n: i64) -> Result<Vec<Check>> {
    if pair.m() != 3 {
        return Err(Error::InvalidConfig(alloc::format!("closed forms need m = 3, got {}", pair.m())));
    }
    if !pair.a0().is_zero() {
        return Err(Error::InvalidConfig("closed forms need the trivial base connection".into()));
    }
    let trunc = Truncation::None;
    let classic = cs_classic(pair.a1(), trunc)?.to_series();
    let table = modular_table(n);
    let mut engine = CsEngine::new(pair, n, trunc)?;
    let mut out = Vec::new();

    let cases = [
        (GenusKind::PhiL, &table.delta[0], Rational::new(-1, 6), "dim3.phiL"),
        (GenusKind::PhiW, &table.delta[1], Rational::new(-1, 24), "dim3.phiW"),
        (GenusKind::PhiWPrime, &table.delta[2], Rational::new(-1, 24), "dim3.phiWp"),
    ];
    for (kind, delta, c, id) in cases {
        let cs = engine.cs(kind)?.form;
        let rhs = classic.scale(&delta.scale(&Scalar::rat_pi(c, -2)));
        out.push(Check::zero(id, "3-dimensional transgression is a multiple of the classical Chern-Simons form", &cs.sub(&rhs)));
    }

    let slope = bracket_slope(GenusKind::PhiL, n)?;
    let expected = table.delta[0].scale(&Scalar::rat_pi(Rational::new(-8, 3), 2));
    out.push(Check::zero(
        "dim3.slope_phiL",
        "bracket slope at the origin is −(8/3)π²δ₁",
        &FormSeries::constant(slope.sub(&expected)),
    ));
    Ok(out)
}
