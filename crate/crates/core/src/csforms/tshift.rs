//! Exact τ ↦ τ+1 relations between the transgressed forms.

use alloc::vec::Vec;

use super::CsEngine;
use crate::charforms::phi_poly;
use crate::checks::Check;
use crate::error::Result;
use crate::formcalc::{ConnectionPair, Truncation};
use crate::thetalib::GenusKind;

/// T acts by swapping the two Witten transgressions and fixing the
/// Landweber-Stong one and Ψ_W; the same holds for the closed forms at ∇₁.
pub fn tshift_relations(pair: &ConnectionPair, n: i64, trunc: Truncation) -> Result<Vec<Check>> {
    let mut engine = CsEngine::new(pair, n, trunc)?;
    let l = engine.cs(GenusKind::PhiL)?.form;
    let w = engine.cs(GenusKind::PhiW)?.form;
    let wp = engine.cs(GenusKind::PhiWPrime)?.form;
    let psi = engine.cs(GenusKind::PsiW)?.form;
    let mut out = Vec::new();
    out.push(Check::zero("tshift.cs_phiW", "CSΦ_W(τ+1) = CSΦ_W'(τ)", &w.tshift().sub(&wp)));
    out.push(Check::zero("tshift.cs_phiWp", "CSΦ_W'(τ+1) = CSΦ_W(τ)", &wp.tshift().sub(&w)));
    out.push(Check::zero("tshift.cs_phiL", "CSΦ_L(τ+1) = CSΦ_L(τ)", &l.tshift().sub(&l)));
    let psi_id = if pair.claims_flat() { "tshift.cs_psiW_flat" } else { "tshift.cs_psiW" };
    out.push(Check::zero(psi_id, "CSΨ_W(τ+1) = CSΨ_W(τ)", &psi.tshift().sub(&psi)));
    out.push(Check::nonzero("tshift.cs_phiW_not_fixed", "T does not fix CSΦ_W", &w.tshift().sub(&w)));

    let cap = engine.cap();
    let (_, phi_w) = engine.endpoint_eval(&phi_poly(GenusKind::PhiW, cap, n)?);
    let (_, phi_wp) = engine.endpoint_eval(&phi_poly(GenusKind::PhiWPrime, cap, n)?);
    out.push(Check::zero("tshift.phiW", "Φ_W(τ+1) = Φ_W'(τ)", &phi_w.tshift().sub(&phi_wp)));
    Ok(out)
}
