//! Characteristic forms: Â, L, Chern characters, the Θ-bundle characters
//! and the four theta-function forms Φ_L, Φ_W, Φ_W', Ψ_W.
//!
//! Each form is a [`PowerSumPoly`] in p_k = tr R^k, evaluated through a
//! shared [`CurvatureData`]. The Θ-bundle characters are built by a second,
//! independent route (plethystic logarithms of symmetric and exterior
//! powers, exponentiated at the form level) and serve as an oracle for the
//! theta-function route.

use alloc::vec::Vec;

use crate::error::Result;
use crate::exactscalar::{CycloRational, QSeries, Rational, Scalar};
use crate::formcalc::{CurvatureData, FormSeries, PowerSumPoly, Truncation};
use crate::thetalib::wseries::{cos_coeffs, sin_coeffs};
use crate::thetalib::{genus_series_r, GenusKind, WSeries};

/// x/sin x to degree d.
pub(crate) fn x_over_sin(d: usize) -> Result<WSeries> {
    WSeries::from_rationals(&sin_coeffs(d + 1)).div_x_pow(1)?.inv()
}

/// x/tan x = x cos x / sin x to degree d.
pub(crate) fn x_over_tan(d: usize) -> Result<WSeries> {
    Ok(WSeries::from_rationals(&cos_coeffs(d)).mul(&x_over_sin(d)?))
}

/// Generating function of Â in R: (R/4π)/sin(R/4π), i.e. (√−1R/4π)/sinh(√−1R/4π).
pub fn ahat_series(d: usize) -> Result<WSeries> {
    Ok(x_over_sin(d)?.rescale(&Scalar::rat_pi(Rational::new(1, 4), -1)))
}

/// Generating function of L in R: (R/2π)/tan(R/2π).
pub fn l_series(d: usize) -> Result<WSeries> {
    Ok(x_over_tan(d)?.rescale(&Scalar::rat_pi(Rational::new(1, 2), -1)))
}

/// exp(c·R) to degree d.
pub fn exp_series(c: &Scalar, d: usize) -> WSeries {
    let mut coeffs = Vec::with_capacity(d + 1);
    let mut fact = Rational::ONE;
    for k in 0..=d {
        if k > 0 {
            fact = &fact * &Rational::from_int(k as i64);
        }
        coeffs.push(QSeries::from_rational(fact.recip().unwrap()));
    }
    WSeries::from_coeffs(coeffs).rescale(c)
}

/// √−1/2π.
pub fn ch_scale() -> Scalar {
    Scalar::monomial(-1, CycloRational::i().scale(&Rational::new(1, 2)))
}

/// √−1/π.
pub fn ch_tilde_scale() -> Scalar {
    Scalar::monomial(-1, CycloRational::i())
}

/// Â as a power-sum polynomial up to form degree `cap`.
pub fn ahat_poly(cap: u32) -> Result<PowerSumPoly> {
    PowerSumPoly::det_half(&ahat_series((cap / 2) as usize)?, cap)
}

/// L as a power-sum polynomial.
pub fn l_poly(cap: u32) -> Result<PowerSumPoly> {
    PowerSumPoly::det_half(&l_series((cap / 2) as usize)?, cap)
}

/// ch = tr exp(√−1R/2π) of a rank-n bundle.
pub fn ch_poly(rank: usize, cap: u32) -> PowerSumPoly {
    PowerSumPoly::trace_of_series(&exp_series(&ch_scale(), (cap / 2) as usize), rank, cap)
}

/// ch̃ = tr exp(√−1R/π).
pub fn ch_tilde_poly(rank: usize, cap: u32) -> PowerSumPoly {
    PowerSumPoly::trace_of_series(&exp_series(&ch_tilde_scale(), (cap / 2) as usize), rank, cap)
}

/// det^{1/2} of the theta generating function of `kind` at argument R/4π²
/// (R/2π² for Φ_L), to q-order `n`.
pub fn phi_poly(kind: GenusKind, cap: u32, n: i64) -> Result<PowerSumPoly> {
    PowerSumPoly::det_half(&genus_series_r(kind, (cap / 2) as usize, n)?, cap)
}

pub fn a_hat(data: &mut CurvatureData) -> Result<FormSeries> {
    Ok(data.eval(&ahat_poly(data.cap())?))
}

pub fn l_form(data: &mut CurvatureData) -> Result<FormSeries> {
    Ok(data.eval(&l_poly(data.cap())?))
}

pub fn ch(data: &mut CurvatureData) -> FormSeries {
    let p = ch_poly(data.rank(), data.cap());
    data.eval(&p)
}

pub fn ch_tilde(data: &mut CurvatureData) -> FormSeries {
    let p = ch_tilde_poly(data.rank(), data.cap());
    data.eval(&p)
}

/// The theta-function form of `kind` on the curvature in `data`.
pub fn phi_form(kind: GenusKind, data: &mut CurvatureData, n: i64) -> Result<FormSeries> {
    let p = phi_poly(kind, data.cap(), n)?;
    Ok(data.eval(&p))
}

/// The four Θ-bundles built from the complexified tangent bundle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaBundle {
    /// ⊗ S_{qⁿ}(Ẽ) ⊗ ⊗ Λ_{qᵐ}(Ẽ)
    Theta1,
    /// ⊗ S_{qⁿ}(Ẽ) ⊗ ⊗ Λ_{−q^{m−1/2}}(Ẽ)
    Theta2,
    /// ⊗ S_{qⁿ}(Ẽ) ⊗ ⊗ Λ_{q^{m−1/2}}(Ẽ)
    Theta3,
    /// ⊗ S_{qⁿ}(Ẽ)
    Theta,
}

impl ThetaBundle {
    pub const ALL: [ThetaBundle; 4] = [ThetaBundle::Theta1, ThetaBundle::Theta2, ThetaBundle::Theta3, ThetaBundle::Theta];

    /// Bundle paired with a theta-function form.
    pub fn for_kind(kind: GenusKind) -> Self {
        match kind {
            GenusKind::PhiL => ThetaBundle::Theta1,
            GenusKind::PhiW => ThetaBundle::Theta2,
            GenusKind::PhiWPrime => ThetaBundle::Theta3,
            GenusKind::PsiW => ThetaBundle::Theta,
        }
    }
}

/// Σ_k c_k q^{k·e}/k: the q-series weight of the k-th Adams operation in
/// log S_t or log Λ_t with t = ±q^{e/24}.
fn adams_weights(bundle: ThetaBundle, k: i64, n: i64) -> QSeries {
    let mut terms = Vec::new();
    let kr = Rational::new(1, k);
    // symmetric powers S_{q^j}: + q^{jk}/k
    let mut j = 1;
    while 24 * j * k < n {
        terms.push((24 * j * k, Scalar::from_rational(kr.clone())));
        j += 1;
    }
    let sign_k = if k % 2 == 1 { Rational::ONE } else { Rational::from_int(-1) };
    let mut j = 1;
    loop {
        let (e, c) = match bundle {
            ThetaBundle::Theta => break,
            // Λ_{q^j}: (−1)^{k+1} q^{jk}/k
            ThetaBundle::Theta1 => (24 * j * k, &sign_k * &kr),
            // Λ_{−q^{j−1/2}}: (−1)^{k+1}(−1)^k q^{k(j−1/2)}/k = −q^{k(j−1/2)}/k
            ThetaBundle::Theta2 => ((24 * j - 12) * k, -&kr),
            // Λ_{q^{j−1/2}}: (−1)^{k+1} q^{k(j−1/2)}/k
            ThetaBundle::Theta3 => ((24 * j - 12) * k, &sign_k * &kr),
        };
        if e >= n {
            break;
        }
        terms.push((e, Scalar::from_rational(c)));
        j += 1;
    }
    QSeries::from_terms(n, terms)
}

/// log ch(Θ) as a linear polynomial Σ_j C_j p_j, from
/// log ch(S_t Ẽ) = Σ t^k ψ̃_k/k and log ch(Λ_t Ẽ) = Σ (−1)^{k+1} t^k ψ̃_k/k,
/// where ψ̃_k = tr exp(k·s·R) − rank and s is √−1/2π (or √−1/π for ch̃).
pub fn theta_bundle_log_poly(bundle: ThetaBundle, s: &Scalar, cap: u32, n: i64) -> PowerSumPoly {
    let dmax = (cap / 2) as usize;
    let mut out = PowerSumPoly::zero(cap);
    // k ranges over Adams degrees with a q-term below n
    let mut k = 1i64;
    while 12 * k < n {
        let w = adams_weights(bundle, k, n);
        if !w.is_zero() {
            // ψ̃_k = Σ_{j ≥ 1} (k s)^j/j! p_j
            let ks = s.scale(&Rational::from_int(k));
            let e = exp_series(&ks, dmax);
            for j in 1..=dmax {
                out = out.add(&PowerSumPoly::power_sum(j as u8, w.mul(e.coeff(j)), cap));
            }
        }
        k += 1;
    }
    out
}

/// exp of an even nilpotent form.
pub fn form_exp(l: &FormSeries, trunc: Truncation) -> FormSeries {
    let qt = l.qtrunc();
    let mut acc = FormSeries::constant(QSeries::one().truncate(qt));
    let mut power = acc.clone();
    let mut j = 1i64;
    loop {
        power = power.wedge(l, trunc).scale_rational(&Rational::new(1, j));
        if power.is_zero() {
            break;
        }
        acc = acc.add(&power);
        j += 1;
    }
    acc
}

/// ch(Θ) (or ch̃ when `tilde`) on the curvature in `data`, by the
/// plethystic route.
pub fn theta_bundle_ch(bundle: ThetaBundle, data: &mut CurvatureData, n: i64, tilde: bool) -> FormSeries {
    let s = if tilde { ch_tilde_scale() } else { ch_scale() };
    let log_poly = theta_bundle_log_poly(bundle, &s, data.cap(), n);
    let l = data.eval(&log_poly);
    form_exp(&l, data.trunc())
}

/// Â·ch(Θ) or L·ch̃(Θ₁): the oracle for [`phi_form`].
pub fn phi_form_oracle(kind: GenusKind, data: &mut CurvatureData, n: i64) -> Result<FormSeries> {
    let bundle = ThetaBundle::for_kind(kind);
    let trunc = data.trunc();
    let (base, tilde) = match kind {
        GenusKind::PhiL => (l_form(data)?, true),
        _ => (a_hat(data)?, false),
    };
    let chern = theta_bundle_ch(bundle, data, n, tilde);
    Ok(base.wedge(&chern, trunc).truncate_q(n))
}

/// Residual of the 12-dimensional cancellation formula
/// {L}^{(12)} − {8Â·ch − c·Â}^{(12)} with c = 32 in the true identity.
pub fn anomaly_residual_12(data: &mut CurvatureData, c: i64) -> Result<FormSeries> {
    let trunc = data.trunc();
    let l = l_form(data)?.component(12);
    let ahat = a_hat(data)?;
    let chern = ch(data);
    let rhs = ahat
        .wedge(&chern, trunc)
        .scale_rational(&Rational::from_int(8))
        .sub(&ahat.scale_rational(&Rational::from_int(c)))
        .component(12);
    Ok(l.sub(&rhs))
}

/// Anomaly check on a 12-dimensional chart with curvature `r`.
pub fn anomaly_check_12(r: crate::formcalc::MatrixForm, trunc: Truncation) -> Result<FormSeries> {
    let mut data = CurvatureData::new(r, 12, trunc);
    anomaly_residual_12(&mut data, 32)
}
