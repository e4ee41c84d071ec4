//! Seeded random connections and flat (Maurer-Cartan) connections.

use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::connection::{curvature, ConnectionPair};
use super::form::Form;
use super::matrix::MatrixForm;
use super::monomial::{Monomial, Truncation, MAX_DIM};
use crate::error::{Error, Result};
use crate::exactscalar::Rational;

/// Shape of a random connection matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConnectionShape {
    /// Chart dimension.
    pub m: usize,
    /// Bundle rank.
    pub n: usize,
    /// Maximal polynomial degree of the coefficients.
    pub degree_cap: u32,
    /// Number of random terms per matrix entry.
    pub terms_per_entry: usize,
    /// Antisymmetric (so(n)) instead of generic (gl(n)).
    pub skew: bool,
}

impl ConnectionShape {
    pub fn new(m: usize, n: usize, degree_cap: u32) -> Self {
        ConnectionShape { m, n, degree_cap, terms_per_entry: 3, skew: false }
    }

    pub fn skew(mut self, skew: bool) -> Self {
        self.skew = skew;
        self
    }

    pub fn terms(mut self, k: usize) -> Self {
        self.terms_per_entry = k;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.m == 0 || self.m > MAX_DIM {
            return Err(Error::InvalidConfig(alloc::format!("m = {} outside 1..={}", self.m, MAX_DIM)));
        }
        if self.n == 0 {
            return Err(Error::InvalidConfig("rank must be positive".into()));
        }
        Ok(())
    }
}

/// Deterministic generator for a given seed.
pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_exps<R: Rng>(rng: &mut R, m: usize, cap: u32) -> Vec<u8> {
    let mut e = alloc::vec![0u8; m];
    let d = rng.gen_range(0..=cap);
    for _ in 0..d {
        e[rng.gen_range(0..m)] += 1;
    }
    e
}

fn random_coeff<R: Rng>(rng: &mut R) -> Rational {
    let mut v = rng.gen_range(1..=3i64);
    if rng.gen_bool(0.5) {
        v = -v;
    }
    let den = if rng.gen_bool(0.25) { 2 } else { 1 };
    Rational::new(v, den)
}

/// A random polynomial of degree ≤ cap with `terms` terms (before merging).
pub fn random_poly<R: Rng>(rng: &mut R, m: usize, cap: u32, terms: usize) -> Form<Rational> {
    let raw = (0..terms).map(|_| (Monomial::new(&random_exps(rng, m, cap), &[]), random_coeff(rng))).collect();
    Form::from_terms(raw)
}

/// A random 1-form Σ a_i(x) dx_i.
pub fn random_one_form<R: Rng>(rng: &mut R, m: usize, cap: u32, terms: usize) -> Form<Rational> {
    let raw = (0..terms)
        .map(|_| {
            let i = rng.gen_range(0..m);
            (Monomial::new(&random_exps(rng, m, cap), &[i]), random_coeff(rng))
        })
        .collect();
    Form::from_terms(raw)
}

/// A random matrix of 1-forms.
pub fn random_connection<R: Rng>(rng: &mut R, shape: &ConnectionShape) -> Result<MatrixForm> {
    shape.validate()?;
    let n = shape.n;
    let mut a = MatrixForm::zero(n);
    for i in 0..n {
        for j in 0..n {
            if shape.skew {
                if j <= i {
                    continue;
                }
                let f = random_one_form(rng, shape.m, shape.degree_cap, shape.terms_per_entry);
                a.set(j, i, f.neg());
                a.set(i, j, f);
            } else {
                a.set(i, j, random_one_form(rng, shape.m, shape.degree_cap, shape.terms_per_entry));
            }
        }
    }
    Ok(a)
}

/// A random pair (A₀, A₁); with `trivial_base` A₀ = 0.
pub fn random_pair(shape: &ConnectionShape, seed: u64, trivial_base: bool) -> Result<ConnectionPair> {
    let mut rng = rng_for(seed);
    let a0 = if trivial_base { MatrixForm::zero(shape.n) } else { random_connection(&mut rng, shape)? };
    let a1 = random_connection(&mut rng, shape)?;
    ConnectionPair::new(shape.m, a0, a1, false)
}

/// A product of elementary shears I + p(x)E_ij, with its inverse built as
/// the reversed product of inverse shears.
///
/// Lower shears (i > j) are applied before upper ones, so g = LU with L, U
/// unitriangular and entry degrees stay below 2(n − 1)·deg p.
pub fn shear_product<R: Rng>(rng: &mut R, m: usize, n: usize, shears: usize, cap: u32) -> (MatrixForm, MatrixForm) {
    let mut g = MatrixForm::identity(n);
    let mut g_inv = MatrixForm::identity(n);
    if n < 2 {
        return (g, g_inv);
    }
    let mut drawn = Vec::with_capacity(shears);
    for _ in 0..shears {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        // a nonconstant linear part keeps dg of full rank generically
        let linear = (0..2).map(|_| {
            let mut e = alloc::vec![0u8; m];
            e[rng.gen_range(0..m)] = 1;
            (Monomial::new(&e, &[]), random_coeff(rng))
        });
        let p = Form::from_terms(linear.collect()).add(&random_poly(rng, m, cap.max(1), 1));
        drawn.push((i, j, p));
    }
    drawn.sort_by_key(|&(i, j, _)| i < j);
    for (i, j, p) in drawn {
        let mut e = MatrixForm::identity(n);
        e.set(i, j, p.clone());
        let mut e_inv = MatrixForm::identity(n);
        e_inv.set(i, j, p.neg());
        g = g.mul(&e, Truncation::None).expect("square");
        g_inv = e_inv.mul(&g_inv, Truncation::None).expect("square");
    }
    (g, g_inv)
}

/// Determinant of a matrix of 0-forms by Laplace expansion along the first row.
pub fn determinant(g: &MatrixForm) -> Form<Rational> {
    let n = g.n();
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    minor_det(g, &rows, &cols)
}

fn minor_det(g: &MatrixForm, rows: &[usize], cols: &[usize]) -> Form<Rational> {
    if rows.is_empty() {
        return Form::one();
    }
    if rows.len() == 1 {
        return g.get(rows[0], cols[0]).clone();
    }
    let r = rows[0];
    let sub_rows = &rows[1..];
    let mut acc = Form::zero();
    for (k, &c) in cols.iter().enumerate() {
        let e = g.get(r, c);
        if e.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = e.wedge(&minor_det(g, sub_rows, &sub_cols), Truncation::None);
        acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Adjugate (transposed cofactor matrix) of a matrix of 0-forms.
pub fn adjugate(g: &MatrixForm) -> MatrixForm {
    let n = g.n();
    let mut adj = MatrixForm::zero(n);
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let c = minor_det(g, &rows, &cols);
            adj.set(i, j, if (i + j) % 2 == 0 { c } else { c.neg() });
        }
    }
    adj
}

/// Maurer-Cartan form g⁻¹dg.
pub fn maurer_cartan(g: &MatrixForm, g_inv: &MatrixForm) -> MatrixForm {
    g_inv.mul(&g.d(), Truncation::None).expect("square")
}

/// A flat pair (d, d + g⁻¹dg) with g a product of `shears` random shears.
///
/// The inverse is the adjugate (det g = 1); it is cross-checked against the
/// reversed product of inverse shears.
pub fn flat_pair_from_seed(m: usize, n: usize, shears: usize, cap: u32, seed: u64) -> Result<ConnectionPair> {
    let mut rng = rng_for(seed);
    let (g, g_inv_shears) = shear_product(&mut rng, m, n, shears, cap);
    if determinant(&g) != Form::one() {
        return Err(Error::DegenerateScenario("shear product is not unimodular".into()));
    }
    let g_inv = adjugate(&g);
    if g_inv != g_inv_shears {
        return Err(Error::DegenerateScenario("adjugate disagrees with the inverse shear product".into()));
    }
    let a1 = maurer_cartan(&g, &g_inv);
    debug_assert!(curvature(&a1, Truncation::None).map(|r| r.is_zero()).unwrap_or(false));
    ConnectionPair::new(m, MatrixForm::zero(n), a1, true)
}
