//! Chern-Weil forms and their transgressions.
//!
//! Every characteristic form used here is a polynomial in the power sums
//! p_k = tr R^k, and every transgressed form is a combination of
//! ∫₀¹ (Π p_k(R_t)) ∧ tr[A R_t^j] dt. Both are first built symbolically with
//! q-series coefficients ([`PowerSumPoly`], [`TransgressionPoly`]) and then
//! evaluated on concrete curvature data, which is computed once and shared.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::connection::{curvature, curvature_family, ConnectionPair};
use super::form::{tensor_sum, Form, FormSeries};
use super::matrix::MatrixForm;
use super::monomial::Truncation;
use crate::error::{Error, Result};
use crate::exactscalar::{QSeries, Rational};
use crate::thetalib::WSeries;

/// Sorted power-sum indices λ = (k₁ ≤ k₂ ≤ …) standing for p_{k₁} p_{k₂} ⋯.
pub type Parts = Vec<u8>;

fn parts_degree(p: &[u8]) -> u32 {
    p.iter().map(|&k| 2 * k as u32).sum()
}

fn merge_parts(a: &[u8], b: &[u8]) -> Parts {
    let mut v: Parts = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v
}

fn add_into(map: &mut BTreeMap<Parts, QSeries>, key: Parts, c: QSeries) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(old) => {
            let s = old.add(&c);
            if s.is_zero() {
                map.remove(&key);
            } else {
                *old = s;
            }
        }
        None => {
            map.insert(key, c);
        }
    }
}

/// A polynomial in p₁, p₂, … with q-series coefficients, truncated to
/// form degree ≤ `cap` (p_k has degree 2k).
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSumPoly {
    cap: u32,
    terms: BTreeMap<Parts, QSeries>,
}

impl PowerSumPoly {
    pub fn zero(cap: u32) -> Self {
        PowerSumPoly { cap, terms: BTreeMap::new() }
    }

    pub fn constant(c: QSeries, cap: u32) -> Self {
        let mut s = Self::zero(cap);
        add_into(&mut s.terms, Parts::new(), c);
        s
    }

    /// c·p_k.
    pub fn power_sum(k: u8, c: QSeries, cap: u32) -> Self {
        let mut s = Self::zero(cap);
        if 2 * k as u32 <= cap {
            add_into(&mut s.terms, alloc::vec![k], c);
        }
        s
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn terms(&self) -> &BTreeMap<Parts, QSeries> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, parts: &[u8]) -> QSeries {
        self.terms.get(parts).cloned().unwrap_or_else(QSeries::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.cap = self.cap.min(other.cap);
        for (k, c) in &other.terms {
            add_into(&mut out.terms, k.clone(), c.clone());
        }
        out.terms.retain(|k, _| parts_degree(k) <= out.cap);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&QSeries::from_int(-1)))
    }

    pub fn scale(&self, c: &QSeries) -> Self {
        let mut out = Self::zero(self.cap);
        for (k, v) in &self.terms {
            add_into(&mut out.terms, k.clone(), v.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cap = self.cap.min(other.cap);
        let mut out = Self::zero(cap);
        for (ka, ca) in &self.terms {
            let da = parts_degree(ka);
            for (kb, cb) in &other.terms {
                if da + parts_degree(kb) > cap {
                    continue;
                }
                add_into(&mut out.terms, merge_parts(ka, kb), ca.mul(cb));
            }
        }
        out
    }

    /// exp of a polynomial without constant term (nilpotent by degree).
    pub fn exp(&self) -> Result<Self> {
        if self.terms.contains_key(&Parts::new()) {
            return Err(Error::BranchError("exp of a power-sum polynomial with a constant term".into()));
        }
        let trunc = self.terms.values().map(QSeries::trunc).min().unwrap_or(crate::exactscalar::EXACT);
        let mut acc = Self::constant(QSeries::one().truncate(trunc), self.cap);
        let mut power = acc.clone();
        let mut j = 1i64;
        loop {
            power = power.mul(self).scale(&QSeries::from_rational(Rational::new(1, j)));
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
            j += 1;
        }
        Ok(acc)
    }

    /// Degree-`deg` part.
    pub fn component(&self, deg: u32) -> Self {
        let mut out = self.clone();
        out.terms.retain(|k, _| parts_degree(k) == deg);
        out
    }

    /// Applies τ ↦ τ + 1 to the coefficients.
    pub fn tshift(&self) -> Self {
        PowerSumPoly { cap: self.cap, terms: self.terms.iter().map(|(k, c)| (k.clone(), c.tshift())).collect() }
    }

    /// Re-truncates all coefficients in q.
    pub fn truncate_q(&self, trunc: i64) -> Self {
        let mut out = Self::zero(self.cap);
        for (k, c) in &self.terms {
            add_into(&mut out.terms, k.clone(), c.truncate(trunc));
        }
        out
    }

    /// tr g(R) = g₀·rank + Σ g_k p_k.
    pub fn trace_of_series(g: &WSeries, rank: usize, cap: u32) -> Self {
        let mut out = Self::constant(g.coeff(0).scale_rational(&Rational::from_int(rank as i64)), cap);
        for k in 1..=g.wdeg() {
            if 2 * k as u32 > cap {
                break;
            }
            add_into(&mut out.terms, alloc::vec![k as u8], g.coeff(k).clone());
        }
        out
    }

    /// det^{1/2} f(R) = exp(½ Σ ℓ_k p_k) where log f = Σ ℓ_k x^k; f(0) must be 1.
    pub fn det_half(f: &WSeries, cap: u32) -> Result<Self> {
        let need = (cap / 2) as usize;
        if f.wdeg() < need {
            return Err(Error::ShapeError(alloc::format!(
                "series degree {} below the {} needed for forms of degree {}",
                f.wdeg(),
                need,
                cap
            )));
        }
        let l = f.log()?;
        let half = Rational::new(1, 2);
        let mut s = Self::zero(cap);
        for k in 1..=need {
            add_into(&mut s.terms, alloc::vec![k as u8], l.coeff(k).scale_rational(&half));
        }
        s.exp()
    }

    /// Smallest q-truncation among coefficients.
    pub fn qtrunc(&self) -> i64 {
        self.terms.values().map(QSeries::trunc).min().unwrap_or(crate::exactscalar::EXACT)
    }
}

/// Σ c_{λ,j} ∫₀¹ p_λ(R_t) ∧ tr[A R_t^j] dt, stored as (λ, j) ↦ c.
#[derive(Clone, Debug, PartialEq)]
pub struct TransgressionPoly {
    cap: u32,
    terms: BTreeMap<(Parts, u8), QSeries>,
}

impl TransgressionPoly {
    pub fn zero(cap: u32) -> Self {
        TransgressionPoly { cap, terms: BTreeMap::new() }
    }

    /// P ∧ tr[A·g(R_t)] for a closed-form polynomial P and a series g.
    pub fn from_product(p: &PowerSumPoly, g: &WSeries) -> Self {
        let cap = p.cap;
        let mut out = Self::zero(cap);
        for (parts, c) in &p.terms {
            let d = parts_degree(parts);
            for j in 0..=g.wdeg() {
                if d + 2 * j as u32 + 1 > cap {
                    break;
                }
                let b = g.coeff(j);
                if b.is_zero() {
                    continue;
                }
                out.add_term(parts.clone(), j as u8, c.mul(b));
            }
        }
        out
    }

    fn add_term(&mut self, parts: Parts, j: u8, c: QSeries) {
        if c.is_zero() {
            return;
        }
        let key = (parts, j);
        match self.terms.get_mut(&key) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<(Parts, u8), QSeries> {
        &self.terms
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((p, j), c) in &other.terms {
            out.add_term(p.clone(), *j, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &QSeries) -> Self {
        let mut out = Self::zero(self.cap);
        for ((p, j), v) in &self.terms {
            out.add_term(p.clone(), *j, v.mul(c));
        }
        out
    }

    /// Degree-`deg` part.
    pub fn component(&self, deg: u32) -> Self {
        let mut out = self.clone();
        out.terms.retain(|(p, j), _| parts_degree(p) + 2 * *j as u32 + 1 == deg);
        out
    }

    pub fn tshift(&self) -> Self {
        TransgressionPoly { cap: self.cap, terms: self.terms.iter().map(|(k, c)| (k.clone(), c.tshift())).collect() }
    }
}

/// Powers, power sums and their products for one curvature matrix.
#[derive(Clone, Debug)]
pub struct CurvatureData {
    trunc: Truncation,
    cap: u32,
    powers: Vec<MatrixForm>,
    sums: BTreeMap<u8, Form<Rational>>,
    products: BTreeMap<Parts, Form<Rational>>,
}

impl CurvatureData {
    /// `cap` is the largest form degree of interest (the chart dimension).
    pub fn new(r: MatrixForm, cap: u32, trunc: Truncation) -> Self {
        let n = r.n();
        CurvatureData {
            trunc,
            cap,
            powers: alloc::vec![MatrixForm::identity(n), r],
            sums: BTreeMap::new(),
            products: BTreeMap::new(),
        }
    }

    pub fn curvature(&self) -> &MatrixForm {
        &self.powers[1]
    }

    pub fn rank(&self) -> usize {
        self.powers[1].n()
    }

    pub fn trunc(&self) -> Truncation {
        self.trunc
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// R^a.
    pub fn power(&mut self, a: usize) -> &MatrixForm {
        while self.powers.len() <= a {
            let next = self.powers.last().unwrap().mul(&self.powers[1], self.trunc).expect("square");
            self.powers.push(next);
        }
        &self.powers[a]
    }

    /// p_k = tr R^k.
    pub fn power_sum(&mut self, k: u8) -> Form<Rational> {
        if let Some(f) = self.sums.get(&k) {
            return f.clone();
        }
        let f = if 2 * k as u32 > self.cap {
            Form::zero()
        } else {
            let hi = (k as usize).div_ceil(2);
            let lo = k as usize - hi;
            self.power(hi);
            self.power(lo);
            self.powers[hi].trace_of_product(&self.powers[lo], self.trunc).expect("square")
        };
        self.sums.insert(k, f.clone());
        f
    }

    /// Π p_k over the parts.
    pub fn product(&mut self, parts: &[u8]) -> Form<Rational> {
        if parts.is_empty() {
            return Form::one();
        }
        if let Some(f) = self.products.get(parts) {
            return f.clone();
        }
        let (last, rest) = parts.split_last().unwrap();
        let head = self.product(rest);
        let f = if head.is_zero() { head } else { head.wedge(&self.power_sum(*last), self.trunc) };
        self.products.insert(parts.to_vec(), f.clone());
        f
    }

    /// Evaluates a power-sum polynomial.
    pub fn eval(&mut self, poly: &PowerSumPoly) -> FormSeries {
        let mut pairs = Vec::with_capacity(poly.terms.len());
        for (parts, c) in &poly.terms {
            pairs.push((c.clone(), self.product(parts)));
        }
        tensor_sum(&pairs)
    }
}

/// Shared data for transgressions along ∇_t = ∇₀ + tA.
#[derive(Clone, Debug)]
pub struct PairData {
    a: MatrixForm,
    family: CurvatureData,
    a_powers: Vec<MatrixForm>,
    traces: BTreeMap<u8, Form<Rational>>,
    integrated: BTreeMap<(Parts, u8), Form<Rational>>,
}

impl PairData {
    pub fn new(pair: &ConnectionPair, trunc: Truncation) -> Result<Self> {
        let rt = curvature_family(pair, trunc)?;
        let a = pair.difference();
        Ok(PairData {
            a_powers: alloc::vec![a.clone()],
            a,
            family: CurvatureData::new(rt, pair.m() as u32, trunc),
            traces: BTreeMap::new(),
            integrated: BTreeMap::new(),
        })
    }

    /// R_t as a matrix polynomial in t.
    pub fn curvature_family(&self) -> &MatrixForm {
        self.family.curvature()
    }

    pub fn family_data(&mut self) -> &mut CurvatureData {
        &mut self.family
    }

    pub fn difference(&self) -> &MatrixForm {
        &self.a
    }

    /// tr[A R_t^j] (t-dependent).
    pub fn trace_a(&mut self, j: u8) -> Form<Rational> {
        if let Some(f) = self.traces.get(&j) {
            return f.clone();
        }
        let trunc = self.family.trunc;
        let f = if 2 * j as u32 + 1 > self.family.cap {
            Form::zero()
        } else {
            let c = (j as usize).div_ceil(2);
            while self.a_powers.len() <= c {
                let r = self.family.power(1).clone();
                let next = self.a_powers.last().unwrap().mul(&r, trunc).expect("square");
                self.a_powers.push(next);
            }
            let rest = self.family.power(j as usize - c).clone();
            self.a_powers[c].trace_of_product(&rest, trunc).expect("square")
        };
        self.traces.insert(j, f.clone());
        f
    }

    /// ∫₀¹ p_λ(R_t) ∧ tr[A R_t^j] dt.
    pub fn integrated(&mut self, parts: &[u8], j: u8) -> Form<Rational> {
        let key = (parts.to_vec(), j);
        if let Some(f) = self.integrated.get(&key) {
            return f.clone();
        }
        let tr = self.trace_a(j);
        let f = if tr.is_zero() {
            tr
        } else {
            let p = self.family.product(parts);
            p.wedge(&tr, self.family.trunc).integrate_t()
        };
        self.integrated.insert(key, f.clone());
        f
    }

    pub fn eval(&mut self, poly: &TransgressionPoly) -> FormSeries {
        let mut pairs = Vec::with_capacity(poly.terms.len());
        for ((parts, j), c) in &poly.terms {
            pairs.push((c.clone(), self.integrated(parts, *j)));
        }
        tensor_sum(&pairs)
    }
}

fn positive_degree(x: &MatrixForm) -> bool {
    x.entries().iter().all(|f| f.terms().iter().all(|(m, _)| m.form_degree() > 0))
}

/// Σ f_k X^k for a matrix of forms X.
///
/// X must have no 0-form part unless f is affine; the series must reach
/// the degree where X^k vanishes.
pub fn apply_series(f: &WSeries, x: &MatrixForm, trunc: Truncation) -> Result<MatrixForm<QSeries>> {
    let affine = (2..=f.wdeg()).all(|k| f.coeff(k).is_zero());
    if !positive_degree(x) && !affine {
        return Err(Error::NotNilpotent("matrix has a 0-form part and the series is not affine".into()));
    }
    let n = x.n();
    let mut powers = alloc::vec![MatrixForm::identity(n)];
    for _ in 1..=f.wdeg() {
        let next = powers.last().unwrap().mul(x, trunc)?;
        powers.push(next);
    }
    if !affine {
        let beyond = powers.last().unwrap().mul(x, trunc)?;
        if !beyond.is_zero() {
            return Err(Error::ShapeError(alloc::format!("X^{} does not vanish; raise the series degree", f.wdeg() + 1)));
        }
    }
    let mut entries = Vec::with_capacity(n * n);
    for e in 0..n * n {
        let pairs: Vec<(QSeries, Form<Rational>)> = powers
            .iter()
            .enumerate()
            .filter(|(k, _)| !f.coeff(*k).is_zero())
            .map(|(k, p)| (f.coeff(k).clone(), p.entries()[e].clone()))
            .collect();
        entries.push(tensor_sum(&pairs));
    }
    MatrixForm::from_entries(n, entries)
}

/// tr f(R).
pub fn tr_f(f: &WSeries, r: &MatrixForm, cap: u32, trunc: Truncation) -> FormSeries {
    let poly = PowerSumPoly::trace_of_series(f, r.n(), cap);
    CurvatureData::new(r.clone(), cap, trunc).eval(&poly)
}

/// det^{1/2} f(R), principal branch (value 1 at R = 0).
pub fn det_half(f: &WSeries, r: &MatrixForm, cap: u32, trunc: Truncation) -> Result<FormSeries> {
    let poly = PowerSumPoly::det_half(f, cap)?;
    Ok(CurvatureData::new(r.clone(), cap, trunc).eval(&poly))
}

/// Symbolic ∫₀¹ tr[A f'(R_t)] dt.
pub fn transgress_tr_poly(f: &WSeries, cap: u32) -> TransgressionPoly {
    TransgressionPoly::from_product(&PowerSumPoly::constant(QSeries::one(), cap), &f.deriv())
}

/// Symbolic ∫₀¹ ½ det^{1/2} f(R_t) tr[A f'/f(R_t)] dt.
pub fn transgress_det_half_poly(f: &WSeries, cap: u32) -> Result<TransgressionPoly> {
    let dh = PowerSumPoly::det_half(f, cap)?;
    let lead = f.with_wdeg(f.wdeg().saturating_sub(1));
    let g = f.deriv().div(&lead)?;
    let half = WSeries::from_coeffs(g.coeffs().iter().map(|c| c.scale_rational(&Rational::new(1, 2))).collect());
    Ok(TransgressionPoly::from_product(&dh, &half))
}

/// ∫₀¹ tr[A f'(R_t)] dt with tr f(R₁) − tr f(R₀) = d(result).
pub fn transgress_tr(f: &WSeries, pair: &ConnectionPair, trunc: Truncation) -> Result<FormSeries> {
    let mut data = PairData::new(pair, trunc)?;
    Ok(data.eval(&transgress_tr_poly(f, pair.m() as u32)))
}

/// ∫₀¹ ½ det^{1/2} f(R_t) tr[A f'/f(R_t)] dt.
pub fn transgress_det_half(f: &WSeries, pair: &ConnectionPair, trunc: Truncation) -> Result<FormSeries> {
    let mut data = PairData::new(pair, trunc)?;
    Ok(data.eval(&transgress_det_half_poly(f, pair.m() as u32)?))
}

/// tr[A∧dA + (2/3) A∧A∧A].
pub fn cs_classic(a: &MatrixForm, trunc: Truncation) -> Result<Form<Rational>> {
    let da = a.d().truncate(trunc);
    let aa = a.mul(a, trunc)?;
    let first = a.trace_of_product(&da, trunc)?;
    let second = aa.trace_of_product(a, trunc)?.scale_rational(&Rational::new(2, 3));
    Ok(first.add(&second))
}

/// Curvatures of both endpoints.
pub fn endpoint_curvatures(pair: &ConnectionPair, trunc: Truncation) -> Result<(MatrixForm, MatrixForm)> {
    Ok((curvature(pair.a0(), trunc)?, curvature(pair.a1(), trunc)?))
}
