//! Laurent polynomials in a formal symbol π over Q(ζ₂₄).

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use super::cyclo::CycloRational;
use super::rational::Rational;
use crate::error::{Error, Result};

/// An exact scalar Σ cₖ πᵏ with cₖ ∈ Q(ζ₂₄); finitely many nonzero terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    /// Sorted by exponent, no zero coefficients.
    terms: Vec<(i32, CycloRational)>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::ONE)
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::monomial(0, CycloRational::from_rational(r))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    pub fn from_cyclo(c: CycloRational) -> Self {
        Self::monomial(0, c)
    }

    /// c·π^k.
    pub fn monomial(k: i32, c: CycloRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Scalar { terms: alloc::vec![(k, c)] }
        }
    }

    /// π^k.
    pub fn pi_pow(k: i32) -> Self {
        Self::monomial(k, CycloRational::one())
    }

    /// r·π^k for rational r.
    pub fn rat_pi(r: Rational, k: i32) -> Self {
        Self::monomial(k, CycloRational::from_rational(r))
    }

    /// ζ₂₄^k.
    pub fn zeta_pow(k: i64) -> Self {
        Self::from_cyclo(CycloRational::zeta_pow(k))
    }

    /// Builds from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms(mut raw: Vec<(i32, CycloRational)>) -> Self {
        raw.sort_by_key(|t| t.0);
        let mut terms: Vec<(i32, CycloRational)> = Vec::with_capacity(raw.len());
        for (k, c) in raw {
            match terms.last_mut() {
                Some((lk, lc)) if *lk == k => *lc = lc.add(&c),
                _ => terms.push((k, c)),
            }
        }
        terms.retain(|t| !t.1.is_zero());
        Scalar { terms }
    }

    pub fn terms(&self) -> &[(i32, CycloRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// The single term if this is a monomial c·π^k.
    pub fn as_monomial(&self) -> Option<(i32, &CycloRational)> {
        match self.terms.as_slice() {
            [(k, c)] => Some((*k, c)),
            _ => None,
        }
    }

    /// Rational value for a π-free rational scalar (zero included).
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::ZERO),
            [(0, c)] => c.as_rational().cloned(),
            _ => None,
        }
    }

    /// Coefficient of π^k.
    pub fn pi_coeff(&self, k: i32) -> CycloRational {
        self.terms
            .binary_search_by_key(&k, |t| t.0)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    /// The single π-degree if homogeneous and nonzero.
    pub fn pi_degree(&self) -> Option<i32> {
        match self.terms.as_slice() {
            [(k, _)] => Some(*k),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match a.0.cmp(&b.0) {
                core::cmp::Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    let s = a.1.add(&b.1);
                    if !s.is_zero() {
                        out.push((a.0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Scalar { terms: out }
    }

    pub fn neg(&self) -> Self {
        Scalar { terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Scalar { terms: self.terms.iter().map(|(k, c)| (*k, c.scale(r))).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let ([(ka, ca)], [(kb, cb)]) = (self.terms.as_slice(), other.terms.as_slice()) {
            return Self::monomial(ka + kb, ca.mul(cb));
        }
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                raw.push((ka + kb, ca.mul(cb)));
            }
        }
        Self::from_terms(raw)
    }

    /// Inverse of a monomial c·π^k.
    pub fn inv(&self) -> Result<Self> {
        match self.terms.as_slice() {
            [] => Err(Error::InvalidInverse("zero scalar".into())),
            [(k, c)] => Ok(Self::monomial(-k, c.inv()?)),
            _ => Err(Error::InvalidInverse("scalar is not a single π-monomial".into())),
        }
    }

    /// Multiplies by π^k.
    pub fn shift_pi(&self, k: i32) -> Self {
        Scalar { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Numeric value with π replaced by the given real number.
    pub fn to_complex_at(&self, pi: f64) -> Complex64 {
        self.terms
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, (k, c)| acc + c.to_complex() * libm::pow(pi, *k as f64))
    }

    /// Numeric value at π = 3.14159….
    pub fn to_complex(&self) -> Complex64 {
        self.to_complex_at(core::f64::consts::PI)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let rational = c.as_rational().is_some();
            match (*k, rational) {
                (0, true) => write!(f, "{}", c)?,
                (0, false) => write!(f, "({})", c)?,
                (_, true) => write!(f, "{}·π^{}", c, k)?,
                (_, false) => write!(f, "({})·π^{}", c, k)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_exponents_cancel() {
        assert!(Scalar::pi_pow(2).mul(&Scalar::pi_pow(-2)).is_one());
    }

    #[test]
    fn inverse_requires_monomial() {
        let s = Scalar::pi_pow(1).add(&Scalar::one());
        assert!(matches!(s.inv(), Err(Error::InvalidInverse(_))));
        assert!(matches!(Scalar::zero().inv(), Err(Error::InvalidInverse(_))));
        let m = Scalar::rat_pi(Rational::new(3, 4), -3);
        assert!(m.mul(&m.inv().unwrap()).is_one());
    }

    #[test]
    fn addition_cancels_to_zero() {
        let s = Scalar::pi_pow(2).add(&Scalar::zeta_pow(3));
        assert!(s.sub(&s).is_zero());
        assert_eq!(s.terms().len(), 2);
    }
}
