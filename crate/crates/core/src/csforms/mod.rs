//! Chern-Simons transgressions of the theta-function forms.
//!
//! For a pair of connections with difference A and interpolating curvature
//! R_t, the transgressed form of kind κ is
//!
//! c_κ ∫₀¹ Φ_κ(R_t) ∧ tr[A·b_κ(s_κ R_t)] dt,  b_κ(z) = 1/z − θ'/θ(z) + θₖ'/θₖ(z),
//!
//! with (c, s) = (1/4π², 1/2π²) for Φ_L and (1/8π², 1/4π²) for the Witten
//! forms; Ψ_W drops the θₖ term. The submodules hold the identity suites:
//! the dimension-3 closed forms, the T-shift relations, the 11-dimensional
//! cancellation ledger, flat connections with the E₄ identity, and the
//! loop-space flat-bundle forms.

mod dim3;
mod eleven;
mod flat;
mod loops;
mod tshift;

pub use dim3::{bracket_slope, dim3_closed_forms};
pub use eleven::{eleven_dim_ledger, kernel_ahat, kernel_l, kernel_sin, ElevenLedger};
pub use flat::{beta_integral, flat_suite, gen_flat_pair, trace_power, FLAT_RETRIES};
pub use loops::{loop_cs, loop_cs_poly, loop_suite, LoopBundle};
pub use tshift::tshift_relations;

use crate::charforms::phi_poly;
use crate::checks::Check;
use crate::error::Result;
use crate::formcalc::{ConnectionPair, CurvatureData, FormSeries, PairData, PowerSumPoly, TransgressionPoly, Truncation};
use crate::thetalib::{cs_bracket_r, GenusKind};

/// A transgressed form together with how it was computed.
#[derive(Clone, Debug, PartialEq)]
pub struct CsResult {
    pub kind: GenusKind,
    /// Odd-degree form with q-series coefficients.
    pub form: FormSeries,
    /// Exclusive q-truncation in q^{1/24} units.
    pub qorder: i64,
    pub trunc: Truncation,
}

impl CsResult {
    /// The (4i−1)-component.
    pub fn component(&self, deg: u32) -> FormSeries {
        self.form.component(deg)
    }
}

/// Symbolic transgression of kind `kind` up to form degree `cap`.
pub fn cs_poly(kind: GenusKind, cap: u32, n: i64) -> Result<TransgressionPoly> {
    let phi = phi_poly(kind, cap, n)?;
    let bracket = cs_bracket_r(kind, (cap / 2) as usize, n)?;
    Ok(TransgressionPoly::from_product(&phi, &bracket))
}

/// The transgressed form of `kind` for `pair`, to q-order `n`.
pub fn cs_form(kind: GenusKind, pair: &ConnectionPair, n: i64, trunc: Truncation) -> Result<CsResult> {
    CsEngine::new(pair, n, trunc)?.cs(kind)
}

/// Shared curvature data for several transgressions of one pair.
#[derive(Clone, Debug)]
pub struct CsEngine {
    pair: ConnectionPair,
    data: PairData,
    ends: Option<(CurvatureData, CurvatureData)>,
    qorder: i64,
    trunc: Truncation,
}

impl CsEngine {
    pub fn new(pair: &ConnectionPair, qorder: i64, trunc: Truncation) -> Result<Self> {
        Ok(CsEngine { pair: pair.clone(), data: PairData::new(pair, trunc)?, ends: None, qorder, trunc })
    }

    pub fn pair(&self) -> &ConnectionPair {
        &self.pair
    }

    pub fn qorder(&self) -> i64 {
        self.qorder
    }

    pub fn trunc(&self) -> Truncation {
        self.trunc
    }

    /// Largest form degree of interest.
    pub fn cap(&self) -> u32 {
        self.pair.m() as u32
    }

    pub fn pair_data(&mut self) -> &mut PairData {
        &mut self.data
    }

    /// Evaluates a symbolic transgression on this pair.
    pub fn eval(&mut self, poly: &TransgressionPoly) -> FormSeries {
        self.data.eval(poly)
    }

    pub fn cs(&mut self, kind: GenusKind) -> Result<CsResult> {
        let poly = cs_poly(kind, self.cap(), self.qorder)?;
        Ok(CsResult { kind, form: self.data.eval(&poly), qorder: self.qorder, trunc: self.trunc })
    }

    fn ends(&mut self) -> &mut (CurvatureData, CurvatureData) {
        if self.ends.is_none() {
            let rt = self.data.curvature_family();
            let cap = self.pair.m() as u32;
            let r0 = rt.eval_t(&crate::exactscalar::Rational::ZERO);
            let r1 = rt.eval_t(&crate::exactscalar::Rational::ONE);
            self.ends = Some((CurvatureData::new(r0, cap, self.trunc), CurvatureData::new(r1, cap, self.trunc)));
        }
        self.ends.as_mut().unwrap()
    }

    /// Φ_κ(R₀) and Φ_κ(R₁).
    pub fn endpoint_phi(&mut self, kind: GenusKind) -> Result<(FormSeries, FormSeries)> {
        let poly = phi_poly(kind, self.cap(), self.qorder)?;
        Ok(self.endpoint_eval(&poly))
    }

    /// A closed-form polynomial at both endpoints.
    pub fn endpoint_eval(&mut self, poly: &PowerSumPoly) -> (FormSeries, FormSeries) {
        let (d0, d1) = self.ends();
        (d0.eval(poly), d1.eval(poly))
    }

    /// d(CS) − (Φ(R₁) − Φ(R₀)); needs a d-closed truncation.
    pub fn exactness_residual(&mut self, kind: GenusKind) -> Result<FormSeries> {
        let cs = self.cs(kind)?.form;
        let (p0, p1) = self.endpoint_phi(kind)?;
        Ok(cs.d().truncate(self.trunc).sub(&p1.sub(&p0)))
    }
}

/// d(CS) = Φ(∇₁) − Φ(∇₀) for every kind, plus odd-degree purity and
/// π-homogeneity of each component.
pub fn exactness_checks(pair: &ConnectionPair, n: i64, trunc: Truncation) -> Result<alloc::vec::Vec<Check>> {
    let mut engine = CsEngine::new(pair, n, trunc)?;
    let mut out = alloc::vec::Vec::new();
    for kind in GenusKind::ALL {
        let id = alloc::format!("cs.exactness.{}", kind.name());
        out.push(Check::zero(&id, "d of the transgressed form is the endpoint difference", &engine.exactness_residual(kind)?));
        let cs = engine.cs(kind)?.form;
        let odd = cs.degrees().iter().all(|d| d % 2 == 1);
        let graded = cs.degrees().iter().all(|&d| cs.component(d).pi_degree() == Some(Some(-((d as i32 + 1) / 2))));
        out.push(Check::flag(&alloc::format!("cs.odd_graded.{}", kind.name()), "odd degrees, π-degree −2i in degree 4i−1", odd && graded));
    }
    Ok(out)
}

/// d[cs(A₀, A₁) + cs(A₁, A₀)] for one kind.
pub fn swap_residual(kind: GenusKind, pair: &ConnectionPair, n: i64, trunc: Truncation) -> Result<FormSeries> {
    let a = cs_form(kind, pair, n, trunc)?.form;
    let b = cs_form(kind, &pair.swapped(), n, trunc)?.form;
    Ok(a.add(&b).d().truncate(trunc))
}
