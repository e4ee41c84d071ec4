//! Truncated power series in one variable with [`QSeries`] coefficients.
//!
//! Used both for theta functions in w = πv and for characteristic-form
//! generating functions in the curvature variable.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::exactscalar::{QSeries, Rational, Scalar, EXACT};

/// Σ_{d ≤ D} c_d x^d with c_d ∈ q-series.
#[derive(Clone, PartialEq, Eq)]
pub struct WSeries {
    coeffs: Vec<QSeries>,
}

impl WSeries {
    /// Zero series of degree bound `wdeg`.
    pub fn zero(wdeg: usize) -> Self {
        WSeries { coeffs: alloc::vec![QSeries::zero(); wdeg + 1] }
    }

    /// The constant series 1.
    pub fn one(wdeg: usize) -> Self {
        let mut s = Self::zero(wdeg);
        s.coeffs[0] = QSeries::one();
        s
    }

    /// Builds from coefficients; `coeffs[d]` multiplies x^d.
    pub fn from_coeffs(coeffs: Vec<QSeries>) -> Self {
        assert!(!coeffs.is_empty(), "a w-series needs at least one slot");
        WSeries { coeffs }
    }

    /// Builds a q-constant series from rational Taylor coefficients.
    pub fn from_rationals(coeffs: &[Rational]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|c| QSeries::from_rational(c.clone())).collect())
    }

    pub fn wdeg(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[QSeries] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> &QSeries {
        &self.coeffs[d]
    }

    /// Smallest q-truncation among the slots.
    pub fn qtrunc(&self) -> i64 {
        self.coeffs.iter().map(QSeries::trunc).min().unwrap_or(EXACT)
    }

    /// Re-truncates every slot to a common q-order.
    pub fn truncate_q(&self, trunc: i64) -> Self {
        WSeries { coeffs: self.coeffs.iter().map(|c| c.truncate(trunc)).collect() }
    }

    /// Keeps only degrees ≤ `wdeg` (pads with zeros when growing).
    pub fn with_wdeg(&self, wdeg: usize) -> Self {
        let mut coeffs: Vec<QSeries> = self.coeffs.iter().take(wdeg + 1).cloned().collect();
        coeffs.resize(wdeg + 1, QSeries::zero());
        WSeries { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let d = self.wdeg().min(other.wdeg());
        WSeries { coeffs: (0..=d).map(|i| self.coeffs[i].add(&other.coeffs[i])).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let d = self.wdeg().min(other.wdeg());
        WSeries { coeffs: (0..=d).map(|i| self.coeffs[i].sub(&other.coeffs[i])).collect() }
    }

    pub fn neg(&self) -> Self {
        WSeries { coeffs: self.coeffs.iter().map(QSeries::neg).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let d = self.wdeg().min(other.wdeg());
        let mut out = alloc::vec![QSeries::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(d + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        // keep the truncation of every slot honest even where products vanished
        let t = self.qtrunc().min(other.qtrunc());
        WSeries { coeffs: out.into_iter().map(|c| c.truncate(t)).collect() }
    }

    /// Multiplies every slot by a q-series.
    pub fn mul_q(&self, f: &QSeries) -> Self {
        WSeries { coeffs: self.coeffs.iter().map(|c| c.mul(f)).collect() }
    }

    /// Multiplies every slot by a scalar.
    pub fn scale(&self, s: &Scalar) -> Self {
        WSeries { coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect() }
    }

    /// x ↦ s·x: slot d is multiplied by s^d.
    pub fn rescale(&self, s: &Scalar) -> Self {
        let mut p = Scalar::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.scale(&p));
            p = p.mul(s);
        }
        WSeries { coeffs }
    }

    /// Formal derivative d/dx (degree bound drops by one).
    pub fn deriv(&self) -> Self {
        if self.wdeg() == 0 {
            return Self::zero(0);
        }
        WSeries {
            coeffs: (1..self.coeffs.len())
                .map(|d| self.coeffs[d].scale_rational(&Rational::from_int(d as i64)))
                .collect(),
        }
    }

    /// x·f (degree bound unchanged; top slot is dropped).
    pub fn mul_x(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(QSeries::zero_to(self.qtrunc()));
        coeffs.extend(self.coeffs[..self.wdeg()].iter().cloned());
        WSeries { coeffs }
    }

    /// f/x^k; requires the low slots to vanish. Degree bound drops by k.
    pub fn div_x_pow(&self, k: usize) -> Result<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::InvalidInverse("series is not divisible by the requested power".into()));
        }
        if k > self.wdeg() {
            return Err(Error::ShapeError("division leaves no coefficients".into()));
        }
        Ok(WSeries { coeffs: self.coeffs[k..].to_vec() })
    }

    /// Multiplicative inverse; the constant slot must be an invertible q-series.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.coeffs[0].invert()?;
        let d = self.wdeg();
        let mut out: Vec<QSeries> = Vec::with_capacity(d + 1);
        out.push(c0.clone());
        for n in 1..=d {
            let mut acc = QSeries::zero();
            for i in 1..=n {
                if self.coeffs[i].is_zero() || out[n - i].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[i].mul(&out[n - i]));
            }
            out.push(acc.mul(&c0).neg());
        }
        let t = out.iter().map(QSeries::trunc).min().unwrap_or(EXACT);
        Ok(WSeries { coeffs: out.into_iter().map(|c| c.truncate(t)).collect() })
    }

    /// Quotient self/other.
    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// log f for f with constant slot exactly 1.
    pub fn log(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !(c0.terms().len() == 1 && c0.terms()[0].0 == 0 && c0.terms()[0].1.is_one()) {
            return Err(Error::BranchError("log needs constant term 1".into()));
        }
        // (log f)' = f'/f
        let q = self.deriv().div(&self.with_wdeg(self.wdeg().saturating_sub(1)))?;
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(QSeries::zero_to(q.qtrunc()));
        for (d, c) in q.coeffs.iter().enumerate() {
            coeffs.push(c.scale_rational(&Rational::new(1, d as i64 + 1)));
        }
        Ok(WSeries { coeffs })
    }

    /// exp f for f with vanishing constant slot.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BranchError("exp needs a vanishing constant term".into()));
        }
        let d = self.wdeg();
        // n g_n = Σ_{k=1}^{n} k f_k g_{n−k}
        let mut g: Vec<QSeries> = Vec::with_capacity(d + 1);
        g.push(QSeries::one().truncate(self.qtrunc()));
        for n in 1..=d {
            let mut acc = QSeries::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() || g[n - k].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[k].mul(&g[n - k]).scale_rational(&Rational::from_int(k as i64)));
            }
            g.push(acc.scale_rational(&Rational::new(1, n as i64)));
        }
        let t = self.qtrunc();
        Ok(WSeries { coeffs: g.into_iter().map(|c| c.truncate(t)).collect() })
    }

    /// Applies τ ↦ τ + 1 slot-wise.
    pub fn tshift(&self) -> Self {
        WSeries { coeffs: self.coeffs.iter().map(QSeries::tshift).collect() }
    }

    /// Keeps odd (parity 1) or even (parity 0) slots, zeroing the others.
    pub fn parity_part(&self, parity: usize) -> Self {
        WSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(d, c)| if d % 2 == parity { c.clone() } else { QSeries::zero_to(c.trunc()) })
                .collect(),
        }
    }
}

impl fmt::Display for WSeries {
    /// One line per nonzero slot: `w^d: <q-expansion>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            any = true;
            writeln!(f, "w^{}: {}", d, c)?;
        }
        if !any {
            writeln!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for WSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "w^{}: {:?}", d, c)?;
        }
        Ok(())
    }
}

/// Taylor coefficients of sin(x) up to degree `d`.
pub fn sin_coeffs(d: usize) -> Vec<Rational> {
    trig_coeffs(d, 1)
}

/// Taylor coefficients of cos(x) up to degree `d`.
pub fn cos_coeffs(d: usize) -> Vec<Rational> {
    trig_coeffs(d, 0)
}

fn trig_coeffs(d: usize, parity: usize) -> Vec<Rational> {
    let mut out = alloc::vec![Rational::ZERO; d + 1];
    let mut fact = Rational::ONE;
    for (k, slot) in out.iter_mut().enumerate() {
        if k > 0 {
            fact = &fact * &Rational::from_int(k as i64);
        }
        if k % 2 == parity {
            let sign = if (k / 2) % 2 == 0 { Rational::ONE } else { Rational::from_int(-1) };
            *slot = &sign / &fact;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sin_over_cos_is_tan() {
        let s = WSeries::from_rationals(&sin_coeffs(7));
        let c = WSeries::from_rationals(&cos_coeffs(7));
        let t = s.div(&c).unwrap();
        let expect = [0, 1, 0, 1, 0, 2, 0, 17];
        let den = [1, 1, 1, 3, 1, 15, 1, 315];
        for d in 0..8 {
            assert_eq!(
                t.coeff(d),
                &QSeries::from_rational(Rational::new(expect[d], den[d])),
                "degree {}",
                d
            );
        }
    }

    #[test]
    fn exp_log_roundtrip() {
        let c = WSeries::from_rationals(&cos_coeffs(8));
        let back = c.log().unwrap().exp().unwrap();
        assert_eq!(back, c);
    }
}
