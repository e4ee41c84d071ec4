//! Square matrices whose entries are differential forms.

use alloc::vec::Vec;

use super::form::{Form, FormSeries};
use super::monomial::{Monomial, Truncation};
use super::par_map;
use crate::error::{Error, Result};
use crate::exactscalar::{Coeff, QSeries, Rational};

/// An n×n matrix of forms, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct MatrixForm<C = Rational> {
    n: usize,
    entries: Vec<Form<C>>,
}

/// Parity of the form degrees appearing in a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl<C: Coeff> MatrixForm<C> {
    pub fn zero(n: usize) -> Self {
        MatrixForm { n, entries: alloc::vec![Form::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = Form::one();
        }
        m
    }

    /// Builds from row-major entries.
    pub fn from_entries(n: usize, entries: Vec<Form<C>>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::ShapeError(alloc::format!("expected {} entries, got {}", n * n, entries.len())));
        }
        Ok(MatrixForm { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Form<C> {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: Form<C>) {
        self.entries[i * self.n + j] = f;
    }

    pub fn entries(&self) -> &[Form<C>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Form::is_zero)
    }

    /// Total number of stored terms.
    pub fn nnz(&self) -> usize {
        self.entries.iter().map(Form::len).sum()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ShapeError(alloc::format!("matrix sizes {} and {} differ", self.n, other.n)));
        }
        Ok(())
    }

    fn zip(&self, other: &Self, f: impl Fn(&Form<C>, &Form<C>) -> Form<C>) -> Result<Self> {
        self.check(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(MatrixForm { n: self.n, entries })
    }

    fn map_entries(&self, f: impl Fn(&Form<C>) -> Form<C> + Sync + Send) -> Self {
        MatrixForm { n: self.n, entries: par_map(&self.entries, f) }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, Form::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, Form::sub)
    }

    pub fn neg(&self) -> Self {
        self.map_entries(Form::neg)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map_entries(|f| f.scale(c))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.map_entries(|f| f.scale_rational(r))
    }

    /// Matrix product with entries multiplied by ∧.
    pub fn mul(&self, other: &Self, trunc: Truncation) -> Result<Self> {
        self.check(other)?;
        let n = self.n;
        let idx: Vec<usize> = (0..n * n).collect();
        let entries = par_map(&idx, |&e| {
            let (i, j) = (e / n, e % n);
            let mut raw = Vec::new();
            for k in 0..n {
                let a = &self.entries[i * n + k];
                let b = &other.entries[k * n + j];
                if !a.is_zero() && !b.is_zero() {
                    a.wedge_into(b, trunc, &mut raw);
                }
            }
            Form::from_terms(raw)
        });
        Ok(MatrixForm { n, entries })
    }

    /// Σᵢ Xᵢᵢ.
    pub fn trace(&self) -> Form<C> {
        let mut raw = Vec::new();
        for i in 0..self.n {
            raw.extend(self.entries[i * self.n + i].terms().iter().cloned());
        }
        Form::from_terms(raw)
    }

    /// tr(XY) without forming the product.
    pub fn trace_of_product(&self, other: &Self, trunc: Truncation) -> Result<Form<C>> {
        self.check(other)?;
        let n = self.n;
        let idx: Vec<usize> = (0..n).collect();
        let parts = par_map(&idx, |&i| {
            let mut raw = Vec::new();
            for k in 0..n {
                let a = &self.entries[i * n + k];
                let b = &other.entries[k * n + i];
                if !a.is_zero() && !b.is_zero() {
                    a.wedge_into(b, trunc, &mut raw);
                }
            }
            raw
        });
        Ok(Form::from_terms(parts.into_iter().flatten().collect()))
    }

    /// Parity of all form degrees, or `None` if mixed (zero counts as even).
    pub fn parity(&self) -> Option<Parity> {
        let mut seen: Option<Parity> = None;
        for f in &self.entries {
            for (m, _) in f.terms() {
                let p = if m.form_degree() % 2 == 0 { Parity::Even } else { Parity::Odd };
                match seen {
                    None => seen = Some(p),
                    Some(s) if s != p => return None,
                    _ => {}
                }
            }
        }
        Some(seen.unwrap_or(Parity::Even))
    }

    /// Graded commutator XY − (−1)^{|X||Y|} YX for homogeneous X, Y.
    pub fn supercommutator(&self, other: &Self, trunc: Truncation) -> Result<Self> {
        let (Some(pa), Some(pb)) = (self.parity(), other.parity()) else {
            return Err(Error::ShapeError("supercommutator needs parity-homogeneous matrices".into()));
        };
        let xy = self.mul(other, trunc)?;
        let yx = other.mul(self, trunc)?;
        if pa == Parity::Odd && pb == Parity::Odd {
            xy.add(&yx)
        } else {
            xy.sub(&yx)
        }
    }

    /// Entrywise exterior derivative.
    pub fn d(&self) -> Self {
        self.map_entries(Form::d)
    }

    pub fn truncate(&self, trunc: Truncation) -> Self {
        self.map_entries(|f| f.truncate(trunc))
    }

    pub fn mul_t(&self, k: u8) -> Self {
        self.map_entries(|f| f.mul_t(k))
    }

    pub fn eval_t(&self, t: &Rational) -> Self {
        self.map_entries(|f| f.eval_t(t))
    }

    pub fn integrate_t(&self) -> Self {
        self.map_entries(Form::integrate_t)
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let entries = (0..n * n).map(|e| self.entries[(e % n) * n + e / n].clone()).collect();
        MatrixForm { n, entries }
    }

    /// Maps coefficients into another ring.
    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D + Sync + Send) -> MatrixForm<D> {
        let idx: Vec<usize> = (0..self.entries.len()).collect();
        MatrixForm { n: self.n, entries: par_map(&idx, |&e| self.entries[e].map(&f)) }
    }

    /// Largest form degree present in any entry.
    pub fn max_degree(&self) -> Option<u32> {
        self.entries.iter().filter_map(Form::max_degree).max()
    }

    /// Largest chart coordinate index (0-based) used in any entry.
    pub fn max_coordinate(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for f in &self.entries {
            for (m, _) in f.terms() {
                let hi = highest_coordinate(m);
                best = match (best, hi) {
                    (b, None) => b,
                    (None, h) => h,
                    (Some(b), Some(h)) => Some(b.max(h)),
                };
            }
        }
        best
    }
}

fn highest_coordinate(m: &Monomial) -> Option<usize> {
    let mut hi = if m.mask == 0 { None } else { Some(15 - m.mask.leading_zeros() as usize) };
    for i in (0..super::monomial::MAX_DIM).rev() {
        if m.exp(i) > 0 {
            hi = Some(hi.map_or(i, |h: usize| h.max(i)));
            break;
        }
    }
    hi
}

impl MatrixForm<Rational> {
    /// Lifts to q-series coefficients.
    pub fn to_series(&self) -> MatrixForm<QSeries> {
        MatrixForm { n: self.n, entries: self.entries.iter().map(Form::to_series).collect() }
    }
}

impl MatrixForm<QSeries> {
    pub fn tshift(&self) -> Self {
        MatrixForm { n: self.n, entries: self.entries.iter().map(FormSeries::tshift).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_form(i: usize, c: i64) -> Form<Rational> {
        Form::term(Monomial::dx(i), Rational::from_int(c))
    }

    #[test]
    fn trace_of_supercommutator_vanishes() {
        let mut a = MatrixForm::zero(2);
        let mut b = MatrixForm::zero(2);
        a.set(0, 1, one_form(0, 1));
        a.set(1, 0, one_form(1, 2));
        b.set(0, 0, one_form(2, 3));
        b.set(1, 0, one_form(0, -1));
        let t = Truncation::None;
        assert!(a.supercommutator(&b, t).unwrap().trace().is_zero());
        assert_eq!(a.trace_of_product(&b, t).unwrap(), a.mul(&b, t).unwrap().trace());
    }
}
