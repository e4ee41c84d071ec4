//! Truncated series in q^{1/24} with [`Scalar`] coefficients.

use alloc::vec::Vec;
use core::fmt;

use super::rational::Rational;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Truncation value meaning "known exactly".
pub const EXACT: i64 = i64::MAX;

/// A series Σ aₖ q^{k/24} known modulo q^{trunc/24}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QSeries {
    trunc: i64,
    /// Sorted by exponent, no zeros, every exponent < trunc.
    terms: Vec<(i64, Scalar)>,
}

impl Default for QSeries {
    fn default() -> Self {
        Self::zero()
    }
}

impl QSeries {
    /// The exact zero series.
    pub fn zero() -> Self {
        QSeries { trunc: EXACT, terms: Vec::new() }
    }

    /// Zero known to the given truncation.
    pub fn zero_to(trunc: i64) -> Self {
        QSeries { trunc, terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    /// An exact constant.
    pub fn constant(s: Scalar) -> Self {
        Self::monomial(0, s, EXACT)
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::constant(Scalar::from_rational(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    /// s·q^{k/24} truncated at `trunc`.
    pub fn monomial(k: i64, s: Scalar, trunc: i64) -> Self {
        if s.is_zero() || k >= trunc {
            Self::zero_to(trunc)
        } else {
            QSeries { trunc, terms: alloc::vec![(k, s)] }
        }
    }

    /// Builds from arbitrary terms; merges duplicates, drops zeros and
    /// exponents at or beyond `trunc`.
    pub fn from_terms(trunc: i64, mut raw: Vec<(i64, Scalar)>) -> Self {
        raw.retain(|t| t.0 < trunc);
        raw.sort_by_key(|t| t.0);
        let mut terms: Vec<(i64, Scalar)> = Vec::with_capacity(raw.len());
        for (k, s) in raw {
            match terms.last_mut() {
                Some((lk, ls)) if *lk == k => *ls = ls.add(&s),
                _ => terms.push((k, s)),
            }
        }
        terms.retain(|t| !t.1.is_zero());
        QSeries { trunc, terms }
    }

    /// Builds from rational coefficients on a dense grid `k = offset + step·i`.
    pub fn from_rational_dense(trunc: i64, offset: i64, step: i64, coeffs: &[Rational]) -> Self {
        let raw = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (offset + step * i as i64, Scalar::from_rational(c.clone())))
            .collect();
        Self::from_terms(trunc, raw)
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc == EXACT
    }

    pub fn terms(&self) -> &[(i64, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of q^{k/24}.
    pub fn coeff(&self, k: i64) -> Scalar {
        self.terms
            .binary_search_by_key(&k, |t| t.0)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    /// Same series re-truncated to `min(self.trunc, trunc)`.
    pub fn truncate(&self, trunc: i64) -> Self {
        let t = self.trunc.min(trunc);
        QSeries { trunc: t, terms: self.terms.iter().filter(|x| x.0 < t).cloned().collect() }
    }

    /// Overrides the truncation marker (used to declare a series exact).
    pub fn with_trunc(mut self, trunc: i64) -> Self {
        self.terms.retain(|t| t.0 < trunc);
        self.trunc = trunc;
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        loop {
            let next = match (a.get(i), b.get(j)) {
                (None, None) => break,
                (Some(x), None) => {
                    i += 1;
                    x.clone()
                }
                (None, Some(y)) => {
                    j += 1;
                    y.clone()
                }
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    core::cmp::Ordering::Less => {
                        i += 1;
                        x.clone()
                    }
                    core::cmp::Ordering::Greater => {
                        j += 1;
                        y.clone()
                    }
                    core::cmp::Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (x.0, x.1.add(&y.1))
                    }
                },
            };
            if next.0 >= trunc {
                continue;
            }
            if !next.1.is_zero() {
                out.push(next);
            }
        }
        QSeries { trunc, terms: out }
    }

    pub fn neg(&self) -> Self {
        QSeries { trunc: self.trunc, terms: self.terms.iter().map(|(k, s)| (*k, s.neg())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero_to(self.trunc);
        }
        if s.is_one() {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (*k, c.mul(s)))
            .filter(|t| !t.1.is_zero())
            .collect();
        QSeries { trunc: self.trunc, terms }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero_to(self.trunc);
        }
        QSeries {
            trunc: self.trunc,
            terms: self.terms.iter().map(|(k, c)| (*k, c.scale(r))).collect(),
        }
    }

    /// Truncated product; result truncation is the smaller operand truncation.
    pub fn mul(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        if self.is_zero() || other.is_zero() {
            return Self::zero_to(trunc);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ka, sa) in &self.terms {
            for (kb, sb) in &other.terms {
                let k = ka.saturating_add(*kb);
                if k >= trunc {
                    break;
                }
                raw.push((k, sa.mul(sb)));
            }
        }
        Self::from_terms(trunc, raw)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplies by q^{k/24}, shifting the truncation too.
    pub fn shift(&self, k: i64) -> Self {
        let trunc = if self.trunc == EXACT { EXACT } else { self.trunc + k };
        QSeries { trunc, terms: self.terms.iter().map(|(e, s)| (e + k, s.clone())).collect() }
    }

    /// Multiplicative inverse.
    ///
    /// For a lowest term c·q^{k₀} the result is known to order `trunc − 2k₀`.
    /// An exact non-monomial series has no finite inverse and is rejected.
    pub fn invert(&self) -> Result<Self> {
        let (k0, c) = self
            .terms
            .first()
            .ok_or_else(|| Error::NotInvertible("zero series".into()))?;
        let c_inv = c
            .inv()
            .map_err(|_| Error::NotInvertible("leading coefficient is not an invertible π-monomial".into()))?;
        if self.terms.len() == 1 {
            let trunc = if self.trunc == EXACT { EXACT } else { self.trunc - 2 * k0 };
            return Ok(Self::monomial(-k0, c_inv, trunc));
        }
        if self.trunc == EXACT {
            return Err(Error::NotInvertible("exact non-monomial series needs a truncation".into()));
        }
        let k0 = *k0;
        let out_trunc = self.trunc - 2 * k0;
        // relative expansion: self = q^{k0}·c·(1 + Σ_{i≥1} a_i q^i)
        let len = (self.trunc - k0).max(0) as usize;
        let rel: Vec<(usize, Scalar)> = self.terms[1..]
            .iter()
            .map(|(k, s)| ((k - k0) as usize, s.mul(&c_inv)))
            .filter(|(i, _)| *i < len)
            .collect();
        let mut b: Vec<Scalar> = alloc::vec![Scalar::zero(); len];
        if len > 0 {
            b[0] = Scalar::one();
        }
        for n in 1..len {
            let mut acc = Scalar::zero();
            for (i, a) in &rel {
                if *i > n {
                    break;
                }
                let prev = &b[n - i];
                if !prev.is_zero() {
                    acc = acc.add(&a.mul(prev));
                }
            }
            b[n] = acc.neg();
        }
        let raw = b
            .into_iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(|(n, s)| (n as i64 - k0, s.mul(&c_inv)))
            .collect();
        Ok(Self::from_terms(out_trunc, raw))
    }

    /// exp(f) for f with only positive exponents.
    pub fn exp(&self) -> Result<Self> {
        if self.terms.iter().any(|t| t.0 <= 0) {
            return Err(Error::BranchError("exp needs a series without constant or polar terms".into()));
        }
        if self.is_zero() {
            return Ok(Self::one().truncate(self.trunc));
        }
        if self.trunc == EXACT {
            return Err(Error::NotInvertible("exp of an exact nonzero series needs a truncation".into()));
        }
        let len = self.trunc.max(0) as usize;
        let mut g: Vec<Scalar> = alloc::vec![Scalar::zero(); len];
        if len > 0 {
            g[0] = Scalar::one();
        }
        // k g_k = Σ_j j f_j g_{k−j}
        for k in 1..len {
            let mut acc = Scalar::zero();
            for (j, fj) in &self.terms {
                let j = *j as usize;
                if j > k {
                    break;
                }
                let prev = &g[k - j];
                if !prev.is_zero() {
                    acc = acc.add(&fj.mul(prev).scale(&Rational::from_int(j as i64)));
                }
            }
            g[k] = acc.scale(&Rational::new(1, k as i64));
        }
        let raw = g.into_iter().enumerate().map(|(k, s)| (k as i64, s)).collect();
        Ok(Self::from_terms(self.trunc, raw))
    }

    /// log(f) for f = 1 + (positive exponents).
    pub fn log(&self) -> Result<Self> {
        let ok = matches!(self.terms.first(), Some((0, s)) if s.is_one());
        if !ok || self.terms.iter().any(|t| t.0 < 0) {
            return Err(Error::BranchError("log needs constant term 1".into()));
        }
        if self.terms.len() == 1 {
            return Ok(Self::zero_to(self.trunc));
        }
        if self.trunc == EXACT {
            return Err(Error::NotInvertible("log of an exact non-constant series needs a truncation".into()));
        }
        let len = self.trunc.max(0) as usize;
        // h = θ log f solves θf = f·h
        let mut h: Vec<Scalar> = alloc::vec![Scalar::zero(); len];
        for k in 1..len {
            let mut acc = self.coeff(k as i64).scale(&Rational::from_int(k as i64));
            for (j, fj) in &self.terms[1..] {
                let j = *j as usize;
                if j >= k {
                    break;
                }
                let prev = &h[k - j];
                if !prev.is_zero() {
                    acc = acc.sub(&fj.mul(prev));
                }
            }
            h[k] = acc;
        }
        let raw = h
            .into_iter()
            .enumerate()
            .skip(1)
            .map(|(k, s)| (k as i64, s.scale(&Rational::new(1, k as i64))))
            .collect();
        Ok(Self::from_terms(self.trunc, raw))
    }

    /// τ ↦ τ + 1: multiplies the q^{k/24} coefficient by ζ₂₄^k.
    pub fn tshift(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, s)| (*k, s.mul(&Scalar::zeta_pow(*k))))
            .collect();
        QSeries { trunc: self.trunc, terms }
    }

    /// Multiplies every coefficient by π^k.
    pub fn shift_pi(&self, k: i32) -> Self {
        QSeries { trunc: self.trunc, terms: self.terms.iter().map(|(e, s)| (*e, s.shift_pi(k))).collect() }
    }

    /// Numeric value at q^{1/24} = `q24`, with π at its true value.
    pub fn eval(&self, q24: num_complex::Complex64) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for (k, s) in &self.terms {
            acc += s.to_complex() * q24.powi(*k as i32);
        }
        acc
    }
}

fn fmt_exponent(f: &mut fmt::Formatter<'_>, k: i64) -> fmt::Result {
    let r = Rational::new(k, 24);
    if r.is_one() {
        write!(f, "q")
    } else if r.is_integer() {
        write!(f, "q^{}", r)
    } else {
        write!(f, "q^({})", r)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (n, (k, s)) in self.terms.iter().enumerate() {
            let rat = s.as_rational();
            let (neg, body) = match &rat {
                Some(r) if r.is_negative() => (true, Some(r.abs())),
                Some(r) => (false, Some(r.clone())),
                None => (false, None),
            };
            if n > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            match body {
                Some(r) => {
                    if *k == 0 {
                        write!(f, "{}", r)?;
                    } else {
                        if !r.is_one() {
                            write!(f, "{}", r)?;
                        }
                        fmt_exponent(f, *k)?;
                    }
                }
                None => {
                    write!(f, "({})", s)?;
                    if *k != 0 {
                        fmt_exponent(f, *k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)?;
        if self.trunc != EXACT {
            write!(f, " + O(")?;
            fmt_exponent(f, self.trunc)?;
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64, c: i64, trunc: i64) -> QSeries {
        QSeries::monomial(k, Scalar::from_int(c), trunc)
    }

    #[test]
    fn difference_of_squares() {
        let a = QSeries::one().add(&q(12, -1, EXACT));
        let b = QSeries::one().add(&q(12, 1, EXACT));
        assert_eq!(a.mul(&b), QSeries::one().add(&q(24, -1, EXACT)));
    }

    #[test]
    fn eighth_powers_add() {
        assert_eq!(q(3, 1, EXACT).mul(&q(3, 1, EXACT)), q(6, 1, EXACT));
    }

    #[test]
    fn geometric_inverse() {
        let f = QSeries::one().add(&q(24, -1, 120));
        let g = f.invert().unwrap();
        let expect = QSeries::from_terms(120, (0..5).map(|i| (24 * i, Scalar::one())).collect());
        assert_eq!(g, expect);
    }

    #[test]
    fn monomial_inverse() {
        let g = q(12, 1, EXACT).invert().unwrap();
        assert_eq!(g.terms(), &[(-12, Scalar::one())]);
    }

    #[test]
    fn mercator() {
        let f = QSeries::one().add(&q(24, -1, 96));
        let l = f.log().unwrap();
        let expect = QSeries::from_terms(
            96,
            (1..4).map(|i| (24 * i, Scalar::from_rational(Rational::new(-1, i)))).collect(),
        );
        assert_eq!(l, expect);
        assert_eq!(l.exp().unwrap(), f);
    }

    #[test]
    fn log_branch() {
        assert!(matches!(q(0, 2, 48).log(), Err(Error::BranchError(_))));
        assert!(matches!(q(0, 2, 48).exp(), Err(Error::BranchError(_))));
    }

    #[test]
    fn tshift_examples() {
        assert_eq!(q(12, 1, EXACT).tshift(), q(12, -1, EXACT));
        assert_eq!(q(24, 1, EXACT).tshift(), q(24, 1, EXACT));
        assert_eq!(q(3, 1, EXACT).tshift(), QSeries::monomial(3, Scalar::zeta_pow(3), EXACT));
    }

    #[test]
    fn display() {
        let f = QSeries::from_terms(
            72,
            alloc::vec![
                (0, Scalar::from_rational(Rational::new(1, 4))),
                (12, Scalar::from_int(-3)),
                (24, Scalar::from_int(6)),
            ],
        );
        assert_eq!(alloc::format!("{}", f), "1/4 - 3q^(1/2) + 6q");
    }
}
