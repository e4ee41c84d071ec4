//! Sparse differential forms with polynomial coefficients.

use alloc::vec::Vec;
use core::fmt;

use super::monomial::{Monomial, Truncation};
use crate::exactscalar::{Coeff, QSeries, Rational};

/// A form Σ c·x^α t^k dx_I, stored sorted by monomial with no zero terms.
#[derive(Clone, PartialEq)]
pub struct Form<C> {
    terms: Vec<(Monomial, C)>,
}

/// Forms with q-series coefficients.
pub type FormSeries = Form<QSeries>;

impl<C: Coeff> Default for Form<C> {
    fn default() -> Self {
        Self::zero()
    }
}

fn normalize<C: Coeff>(mut raw: Vec<(Monomial, C)>) -> Vec<(Monomial, C)> {
    raw.sort_unstable_by_key(|a| a.0);
    let mut out: Vec<(Monomial, C)> = Vec::with_capacity(raw.len());
    for (m, c) in raw {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
            _ => {
                if let Some((_, lc)) = out.last() {
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                out.push((m, c));
            }
        }
    }
    if let Some((_, lc)) = out.last() {
        if lc.is_zero() {
            out.pop();
        }
    }
    out
}

impl<C: Coeff> Form<C> {
    pub fn zero() -> Self {
        Form { terms: Vec::new() }
    }

    /// The constant 0-form c.
    pub fn constant(c: C) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn term(m: Monomial, c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Form { terms: alloc::vec![(m, c)] }
        }
    }

    /// Builds from unsorted terms, merging duplicates.
    pub fn from_terms(raw: Vec<(Monomial, C)>) -> Self {
        Form { terms: normalize(raw) }
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms
            .binary_search_by(|t| t.0.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| C::zero())
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
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                core::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    let s = a[i].1.add(&b[j].1);
                    if !s.is_zero() {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Form { terms: out }
    }

    pub fn neg(&self) -> Self {
        Form { terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.mul(s)))
            .filter(|t| !t.1.is_zero())
            .collect();
        Form { terms }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Form { terms: self.terms.iter().map(|(m, c)| (*m, c.scale(r))).collect() }
    }

    /// Exterior product, truncated.
    pub fn wedge(&self, other: &Self, trunc: Truncation) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut raw = Vec::new();
        self.wedge_into(other, trunc, &mut raw);
        Self::from_terms(raw)
    }

    /// Appends the unnormalized terms of self ∧ other to `raw`.
    pub fn wedge_into(&self, other: &Self, trunc: Truncation, raw: &mut Vec<(Monomial, C)>) {
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, neg)) = ma.mul(mb) {
                    if !trunc.keeps(&m) {
                        continue;
                    }
                    let c = ca.mul(cb);
                    raw.push((m, if neg { c.neg() } else { c }));
                }
            }
        }
    }

    /// Exterior derivative in the chart coordinates (t is a parameter).
    pub fn d(&self) -> Self {
        let mut raw = Vec::new();
        for (m, c) in &self.terms {
            for i in 0..super::monomial::MAX_DIM {
                let e = m.exp(i);
                if e == 0 || m.mask & (1 << i) != 0 {
                    continue;
                }
                let below = (m.mask & ((1u16 << i) - 1)).count_ones();
                let nm = Monomial { mask: m.mask | (1 << i), exps: m.exps - (1u128 << (8 * i)) };
                let cc = c.scale(&Rational::from_int(e as i64));
                raw.push((nm, if below % 2 == 1 { cc.neg() } else { cc }));
            }
        }
        Self::from_terms(raw)
    }

    /// Degree-k part.
    pub fn component(&self, k: u32) -> Self {
        Form { terms: self.terms.iter().filter(|t| t.0.form_degree() == k).cloned().collect() }
    }

    /// Keeps terms satisfying the truncation.
    pub fn truncate(&self, trunc: Truncation) -> Self {
        Form { terms: self.terms.iter().filter(|t| trunc.keeps(&t.0)).cloned().collect() }
    }

    /// Largest form degree present.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.form_degree()).max()
    }

    /// Smallest form degree present.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.form_degree()).min()
    }

    /// Form degrees present, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.iter().map(|t| t.0.form_degree()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Multiplies by t^k.
    pub fn mul_t(&self, k: u8) -> Self {
        let s = Monomial::t_pow(k);
        Form { terms: self.terms.iter().map(|(m, c)| (Monomial { mask: m.mask, exps: m.exps + s.exps }, c.clone())).collect() }
    }

    /// ∫₀¹ dt, term by term: t^k ↦ 1/(k+1).
    pub fn integrate_t(&self) -> Self {
        let raw = self
            .terms
            .iter()
            .map(|(m, c)| (m.without_t(), c.scale(&Rational::new(1, m.t_exp() as i64 + 1))))
            .collect();
        Self::from_terms(raw)
    }

    /// Substitutes a rational value for t.
    pub fn eval_t(&self, t: &Rational) -> Self {
        let raw = self
            .terms
            .iter()
            .map(|(m, c)| (m.without_t(), c.scale(&t.pow(m.t_exp() as u32))))
            .collect();
        Self::from_terms(raw)
    }

    /// True if no term carries a power of t.
    pub fn is_t_free(&self) -> bool {
        self.terms.iter().all(|t| t.0.t_exp() == 0)
    }

    /// Maps coefficients into another ring.
    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Form<D> {
        Form::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))).collect())
    }
}

impl Form<Rational> {
    /// Lifts to q-series coefficients.
    pub fn to_series(&self) -> FormSeries {
        Form { terms: self.terms.iter().map(|(m, c)| (*m, QSeries::from_rational(c.clone()))).collect() }
    }
}

impl FormSeries {
    /// Applies τ ↦ τ+1 to every coefficient.
    pub fn tshift(&self) -> Self {
        Form { terms: self.terms.iter().map(|(m, c)| (*m, c.tshift())).collect() }
    }

    /// Multiplies every coefficient by a q-series.
    pub fn mul_q(&self, q: &QSeries) -> Self {
        self.scale(q)
    }

    /// Re-truncates all coefficients in q.
    pub fn truncate_q(&self, trunc: i64) -> Self {
        Form::from_terms(self.terms.iter().map(|(m, c)| (*m, c.truncate(trunc))).collect())
    }

    /// Smallest q-truncation among coefficients.
    pub fn qtrunc(&self) -> i64 {
        self.terms.iter().map(|t| t.1.trunc()).min().unwrap_or(crate::exactscalar::EXACT)
    }

    /// The π-degree shared by all coefficients, if they are homogeneous.
    pub fn pi_degree(&self) -> Option<Option<i32>> {
        let mut deg: Option<i32> = None;
        for (_, c) in &self.terms {
            for (_, s) in c.terms() {
                for (p, _) in s.terms() {
                    match deg {
                        None => deg = Some(*p),
                        Some(d) if d == *p => {}
                        Some(_) => return None,
                    }
                }
            }
        }
        Some(deg)
    }

    /// Coefficient form of q^{k/24}.
    pub fn q_coeff(&self, k: i64) -> Form<crate::exactscalar::Scalar> {
        Form::from_terms(self.terms.iter().map(|(m, c)| (*m, c.coeff(k))).collect())
    }
}

/// Σᵢ qᵢ ⊗ fᵢ assembled into a single form with q-series coefficients.
pub fn tensor_sum(pairs: &[(QSeries, Form<Rational>)]) -> FormSeries {
    let mut entries: Vec<(Monomial, usize, &Rational)> = Vec::new();
    for (i, (q, f)) in pairs.iter().enumerate() {
        if q.is_zero() {
            continue;
        }
        for (m, r) in f.terms() {
            entries.push((*m, i, r));
        }
    }
    entries.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut out: Vec<(Monomial, QSeries)> = Vec::new();
    let mut idx = 0;
    while idx < entries.len() {
        let m = entries[idx].0;
        let mut acc = QSeries::zero();
        while idx < entries.len() && entries[idx].0 == m {
            let (_, i, r) = entries[idx];
            acc = acc.add(&pairs[i].0.scale_rational(r));
            idx += 1;
        }
        if !acc.is_zero() {
            out.push((m, acc));
        }
    }
    Form { terms: out }
}

impl<C: Coeff + fmt::Display> fmt::Display for Form<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}] {}", m, c)?;
        }
        Ok(())
    }
}

impl<C: fmt::Debug> fmt::Debug for Form<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn d_of_x1_dx2() {
        let f = Form::term(Monomial::new(&[1], &[1]), r(1));
        assert_eq!(f.d(), Form::term(Monomial::new(&[], &[0, 1]), r(1)));
    }

    #[test]
    fn antisymmetry() {
        let a = Form::term(Monomial::dx(0), r(1));
        let b = Form::term(Monomial::dx(1), r(1));
        let t = Truncation::None;
        assert_eq!(a.wedge(&b, t), b.wedge(&a, t).neg());
    }

    #[test]
    fn d_squared_vanishes() {
        let f = Form::from_terms(alloc::vec![
            (Monomial::new(&[2, 1, 3], &[]), r(3)),
            (Monomial::new(&[1, 0, 2], &[1]), r(-2)),
        ]);
        assert!(f.d().d().is_zero());
    }

    #[test]
    fn t_integration() {
        let f = Form::term(Monomial::new(&[1], &[0]), r(6)).mul_t(2);
        assert_eq!(f.integrate_t(), Form::term(Monomial::new(&[1], &[0]), r(2)));
        assert_eq!(f.eval_t(&r(2)), Form::term(Monomial::new(&[1], &[0]), r(24)));
    }
}
