//! Exact coefficient arithmetic: rationals, the cyclotomic field Q(ζ₂₄),
//! π-graded Laurent scalars and truncated q-series.

pub mod cyclo;
pub mod qseries;
pub mod rational;
pub mod scalar;

pub use cyclo::CycloRational;
pub use qseries::{QSeries, EXACT};
pub use rational::Rational;
pub use scalar::Scalar;

use core::fmt::Debug;

/// Coefficient ring usable inside forms and matrices.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn from_rational(r: Rational) -> Self;

    fn sub(&self, other: &Self) -> Self {
        Coeff::add(self, &Coeff::neg(other))
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }
    fn one() -> Self {
        Rational::ONE
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Scalar::add(self, other)
    }
    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        Scalar::mul(self, other)
    }
    fn scale(&self, r: &Rational) -> Self {
        Scalar::scale(self, r)
    }
    fn from_rational(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl Coeff for QSeries {
    fn zero() -> Self {
        QSeries::zero()
    }
    fn one() -> Self {
        QSeries::one()
    }
    fn is_zero(&self) -> bool {
        QSeries::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        QSeries::add(self, other)
    }
    fn neg(&self) -> Self {
        QSeries::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        QSeries::mul(self, other)
    }
    fn scale(&self, r: &Rational) -> Self {
        QSeries::scale_rational(self, r)
    }
    fn from_rational(r: Rational) -> Self {
        QSeries::from_rational(r)
    }
}
