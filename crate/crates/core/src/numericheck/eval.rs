//! Numeric theta functions and numeric evaluation of exact form series.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

use super::NumericConfig;
use crate::exactscalar::EXACT;
use crate::formcalc::{FormSeries, Monomial};
use crate::thetalib::ThetaKind;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// e^{2πiτ/24}.
pub fn q24(tau: Complex64) -> Complex64 {
    (I * 2.0 * PI * tau / 24.0).exp()
}

/// (prefactor, its v-derivative, signed exponent of q per factor pair, sign).
fn parts(kind: ThetaKind, v: Complex64, tau: Complex64) -> (Complex64, Complex64, f64, f64) {
    let q18 = 2.0 * (I * 2.0 * PI * tau / 8.0).exp();
    let pv = PI * v;
    match kind {
        ThetaKind::Theta => (q18 * pv.sin(), q18 * PI * pv.cos(), 0.0, -1.0),
        ThetaKind::Theta1 => (q18 * pv.cos(), -q18 * PI * pv.sin(), 0.0, 1.0),
        ThetaKind::Theta2 => (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), 0.5, -1.0),
        ThetaKind::Theta3 => (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), 0.5, 1.0),
    }
}

/// Truncated product value and its v-derivative.
fn theta_pair(kind: ThetaKind, v: Complex64, tau: Complex64, terms: usize) -> (Complex64, Complex64) {
    let (pre, dpre, shift, sign) = parts(kind, v, tau);
    let ep = (I * 2.0 * PI * v).exp();
    let em = ep.inv();
    let mut prod = Complex64::new(1.0, 0.0);
    // Σ f_j'/f_j, summed alongside the product
    let mut logd = Complex64::new(0.0, 0.0);
    for j in 1..=terms {
        let qj = (I * 2.0 * PI * tau * j as f64).exp();
        let qh = (I * 2.0 * PI * tau * (j as f64 - shift)).exp();
        let a = 1.0 + sign * ep * qh;
        let b = 1.0 + sign * em * qh;
        prod *= (1.0 - qj) * a * b;
        logd += sign * I * 2.0 * PI * (ep * qh / a - em * qh / b);
    }
    (pre * prod, dpre * prod + pre * prod * logd)
}

/// θ_kind(v, τ) from the product with `cfg.product_terms` factors.
pub fn theta_eval(kind: ThetaKind, v: Complex64, tau: Complex64, cfg: &NumericConfig) -> Complex64 {
    theta_pair(kind, v, tau, cfg.product_terms).0
}

/// ∂θ_kind/∂v at (v, τ), differentiating the product term by term.
pub fn theta_eval_deriv(kind: ThetaKind, v: Complex64, tau: Complex64, cfg: &NumericConfig) -> Complex64 {
    theta_pair(kind, v, tau, cfg.product_terms).1
}

pub(crate) fn theta_with_terms(kind: ThetaKind, v: Complex64, tau: Complex64, terms: usize) -> (Complex64, Complex64) {
    theta_pair(kind, v, tau, terms)
}

/// A form series evaluated at one τ, with a tail estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericForm {
    pub coeffs: Vec<(Monomial, Complex64)>,
    /// Size of the first omitted q-power times the largest retained
    /// coefficient: a rough truncation estimate, not a bound.
    pub tail: f64,
}

impl NumericForm {
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max)
    }

    /// Max |self − factor·other| relative to the larger of the two sides.
    pub fn rel_residual(&self, other: &NumericForm, factor: Complex64) -> f64 {
        let mut keys: Vec<Monomial> = self.coeffs.iter().chain(other.coeffs.iter()).map(|(m, _)| *m).collect();
        keys.sort();
        keys.dedup();
        let get = |f: &NumericForm, m: &Monomial| {
            f.coeffs.iter().find(|(k, _)| k == m).map_or(Complex64::new(0.0, 0.0), |(_, c)| *c)
        };
        let mut diff: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for m in &keys {
            let a = get(self, m);
            let b = get(other, m) * factor;
            diff = diff.max((a - b).norm());
            scale = scale.max(a.norm()).max(b.norm());
        }
        if scale == 0.0 {
            0.0
        } else {
            diff / scale
        }
    }
}

/// Sums every q-series coefficient of `f` at τ.
pub fn eval_form(f: &FormSeries, tau: Complex64) -> NumericForm {
    let q = q24(tau);
    let mut tail: f64 = 0.0;
    let coeffs = f
        .terms()
        .iter()
        .map(|(m, s)| {
            if s.trunc() != EXACT {
                let biggest = s.terms().iter().map(|(_, c)| c.to_complex().norm()).fold(0.0, f64::max);
                tail = tail.max(biggest * libm::pow(q.norm(), s.trunc() as f64));
            }
            (*m, s.eval(q))
        })
        .collect();
    NumericForm { coeffs, tail }
}
