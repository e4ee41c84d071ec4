//! Jacobi theta functions expanded in w = πv and q^{1/24}.

use super::wseries::{cos_coeffs, sin_coeffs, WSeries};
use crate::error::{Error, Result};
use crate::exactscalar::{QSeries, Rational, Scalar};

/// Which theta function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaKind {
    Theta,
    Theta1,
    Theta2,
    Theta3,
}

impl ThetaKind {
    pub const ALL: [ThetaKind; 4] = [ThetaKind::Theta, ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3];

    /// Exponent (in q^{1/24} units) of the prefactor: 2q^{1/8} for θ, θ₁.
    pub fn prefactor_exponent(self) -> i64 {
        match self {
            ThetaKind::Theta | ThetaKind::Theta1 => 3,
            ThetaKind::Theta2 | ThetaKind::Theta3 => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ThetaKind::Theta => "theta",
            ThetaKind::Theta1 => "theta1",
            ThetaKind::Theta2 => "theta2",
            ThetaKind::Theta3 => "theta3",
        }
    }
}

/// Kinds accepted by [`theta_logderiv`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LogDerivKind {
    /// 1/z − θ'/θ, regularized.
    ThetaReg,
    Theta1,
    Theta2,
    Theta3,
}

/// The theta function with its monomial prefactor (2q^{1/8} for θ, θ₁)
/// removed, to q-order `n` and w-degree `d`.
///
/// The result has constant q-term sin w, cos w, 1, 1 respectively.
pub fn theta_core(kind: ThetaKind, d: usize, n: i64) -> WSeries {
    let cos2 = WSeries::from_rationals(&cos_coeffs(d)).rescale(&Scalar::from_int(2));
    let mut acc = match kind {
        ThetaKind::Theta => WSeries::from_rationals(&sin_coeffs(d)),
        ThetaKind::Theta1 => WSeries::from_rationals(&cos_coeffs(d)),
        _ => WSeries::one(d),
    }
    .truncate_q(n);
    let (sign, half) = match kind {
        ThetaKind::Theta => (-1, false),
        ThetaKind::Theta1 => (1, false),
        ThetaKind::Theta2 => (-1, true),
        ThetaKind::Theta3 => (1, true),
    };
    let mut j = 1i64;
    loop {
        let k = if half { 24 * j - 12 } else { 24 * j };
        if k >= n && 24 * j >= n {
            break;
        }
        // (1 − q^j)
        let eta_factor = QSeries::one().sub(&QSeries::monomial(24 * j, Scalar::one(), n));
        acc = acc.mul_q(&eta_factor);
        if k < n {
            // 1 ± 2cos(2w) q^k + q^{2k}
            let qk = QSeries::monomial(k, Scalar::from_int(2 * sign), n);
            let q2k = QSeries::monomial(2 * k, Scalar::one(), n);
            let middle = cos2.mul_q(&qk);
            acc = acc.add(&acc.mul(&middle)).add(&acc.mul_q(&q2k));
        }
        j += 1;
    }
    acc.truncate_q(n)
}

/// Expands a theta function to w-degree `d` and q-order `n` (exclusive,
/// in q^{1/24} units).
pub fn theta_expand(kind: ThetaKind, d: usize, n: i64) -> WSeries {
    let core = theta_core(kind, d, n);
    let e = kind.prefactor_exponent();
    if e == 0 {
        return core;
    }
    let pre = QSeries::monomial(e, Scalar::from_int(2), n);
    core.mul_q(&pre)
}

/// Value θ_k(0, τ) as a q-series, prefactor included.
pub fn theta_null(kind: ThetaKind, n: i64) -> QSeries {
    theta_expand(kind, 0, n).coeff(0).clone()
}

/// θ'(0, τ) = π·(w¹ coefficient of θ).
pub fn theta_prime_zero(n: i64) -> QSeries {
    theta_expand(ThetaKind::Theta, 1, n).coeff(1).shift_pi(1)
}

/// Converts a w-series into a series in z = w/π: slot d gains π^d.
pub fn w_to_z(f: &WSeries) -> WSeries {
    WSeries::from_coeffs(f.coeffs().iter().enumerate().map(|(k, c)| c.shift_pi(k as i32)).collect())
}

/// Logarithmic derivatives as series in z (= v), π-powers in the scalars.
///
/// For `Theta1..3` returns θₖ'(z)/θₖ(z); for `ThetaReg` returns the power
/// series 1/z − θ'(z)/θ(z) computed as [θ − zθ']/z² divided by θ/z.
/// Slot d carries π^{d+1}.
pub fn theta_logderiv(kind: LogDerivKind, d: usize, n: i64) -> Result<WSeries> {
    match kind {
        LogDerivKind::ThetaReg => {
            let th = w_to_z(&theta_core(ThetaKind::Theta, d + 3, n));
            let z_dth = th.deriv().mul_x();
            let num = th.with_wdeg(d + 2).sub(&z_dth).div_x_pow(2)?;
            let den = th.div_x_pow(1)?.with_wdeg(d);
            num.div(&den)
        }
        LogDerivKind::Theta1 | LogDerivKind::Theta2 | LogDerivKind::Theta3 => {
            let tk = match kind {
                LogDerivKind::Theta1 => ThetaKind::Theta1,
                LogDerivKind::Theta2 => ThetaKind::Theta2,
                _ => ThetaKind::Theta3,
            };
            let th = w_to_z(&theta_core(tk, d + 1, n));
            th.deriv().div(&th.with_wdeg(d))
        }
    }
}

/// Characteristic-form generating functions of the theta route.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenusKind {
    PhiL,
    PhiW,
    PhiWPrime,
    PsiW,
}

impl GenusKind {
    pub const ALL: [GenusKind; 4] = [GenusKind::PhiL, GenusKind::PhiW, GenusKind::PhiWPrime, GenusKind::PsiW];

    /// Theta function in the numerator of the generating function, if any.
    pub fn partner(self) -> Option<ThetaKind> {
        match self {
            GenusKind::PhiL => Some(ThetaKind::Theta1),
            GenusKind::PhiW => Some(ThetaKind::Theta2),
            GenusKind::PhiWPrime => Some(ThetaKind::Theta3),
            GenusKind::PsiW => None,
        }
    }

    /// Scale s with w = s·R: 1/2π for Φ_L (doubled argument), 1/4π otherwise.
    pub fn curvature_scale(self) -> Scalar {
        match self {
            GenusKind::PhiL => Scalar::rat_pi(Rational::new(1, 2), -1),
            _ => Scalar::rat_pi(Rational::new(1, 4), -1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GenusKind::PhiL => "phiL",
            GenusKind::PhiW => "phiW",
            GenusKind::PhiWPrime => "phiWp",
            GenusKind::PsiW => "psiW",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        GenusKind::ALL.into_iter().find(|k| k.name() == s)
    }
}

/// Generating function w·θ'(0)/θ(w)·θₖ(w)/θₖ(0) as a π-free w-series with
/// constant term exactly 1.
pub fn genus_series_w(kind: GenusKind, d: usize, n: i64) -> Result<WSeries> {
    let th = theta_core(ThetaKind::Theta, d + 1, n);
    let lead = th.coeff(1).clone();
    // w·θ_1/θ(w) = θ_1 / (θ(w)/w)
    let base = th.div_x_pow(1)?.inv()?.mul_q(&lead);
    let f = match kind.partner() {
        None => base,
        Some(tk) => {
            let part = theta_core(tk, d, n);
            let at0 = part.coeff(0).invert()?;
            base.mul(&part.mul_q(&at0))
        }
    };
    let c0 = f.coeff(0);
    if !(c0.terms().len() == 1 && c0.terms()[0].0 == 0 && c0.terms()[0].1.is_one()) {
        return Err(Error::BranchError("generating function not normalized to 1".into()));
    }
    Ok(f)
}

/// Generating function as a series in the curvature variable R.
pub fn genus_series_r(kind: GenusKind, d: usize, n: i64) -> Result<WSeries> {
    Ok(genus_series_w(kind, d, n)?.rescale(&kind.curvature_scale()))
}

/// Bracket of the transgressed form as a series in R, prefactor included:
/// prefactor·[1/z − θ'/θ + θₖ'/θₖ](z = c·R) with (prefactor, c) equal to
/// (1/4π², 1/2π²) for Φ_L and (1/8π², 1/4π²) otherwise.
pub fn cs_bracket_r(kind: GenusKind, d: usize, n: i64) -> Result<WSeries> {
    let mut b = theta_logderiv(LogDerivKind::ThetaReg, d, n)?;
    if let Some(tk) = kind.partner() {
        let lk = match tk {
            ThetaKind::Theta1 => LogDerivKind::Theta1,
            ThetaKind::Theta2 => LogDerivKind::Theta2,
            _ => LogDerivKind::Theta3,
        };
        b = b.add(&theta_logderiv(lk, d, n)?);
    }
    let (pre, c) = match kind {
        GenusKind::PhiL => (Scalar::rat_pi(Rational::new(1, 4), -2), Scalar::rat_pi(Rational::new(1, 2), -2)),
        _ => (Scalar::rat_pi(Rational::new(1, 8), -2), Scalar::rat_pi(Rational::new(1, 4), -2)),
    };
    Ok(b.rescale(&c).scale(&pre))
}
