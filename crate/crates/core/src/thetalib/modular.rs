//! Theta-null modular forms δᵢ, εᵢ, the Eisenstein series and η.

use alloc::vec::Vec;

use super::theta::{theta_null, theta_prime_zero, ThetaKind};
use crate::error::{Error, Result};
use crate::exactscalar::{QSeries, Rational, Scalar};

/// The six theta-null forms plus E₄ and η, all to a common q-order.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularFormTable {
    pub delta: [QSeries; 3],
    pub eps: [QSeries; 3],
    pub e4: QSeries,
    pub eta: QSeries,
}

/// σ_k(n) = Σ_{d | n} d^k.
pub fn sigma(k: u32, n: u64) -> u64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| d.pow(k)).sum()
}

/// 1 + c·Σ σ_k(n) qⁿ truncated at `trunc` (q^{1/24} units).
fn eisenstein(k: u32, c: i64, trunc: i64) -> QSeries {
    let mut terms = alloc::vec![(0, Scalar::one())];
    let mut n = 1u64;
    while (24 * n as i64) < trunc {
        terms.push((24 * n as i64, Scalar::from_int(c * sigma(k, n) as i64)));
        n += 1;
    }
    QSeries::from_terms(trunc, terms)
}

/// E₄ = 1 + 240 Σ σ₃(n) qⁿ.
pub fn e4(trunc: i64) -> QSeries {
    eisenstein(3, 240, trunc)
}

/// E₂ = 1 − 24 Σ σ₁(n) qⁿ (quasimodular).
pub fn e2(trunc: i64) -> QSeries {
    eisenstein(1, -24, trunc)
}

/// η = q^{1/24} Π (1 − q^j).
pub fn eta(trunc: i64) -> QSeries {
    let mut acc = QSeries::monomial(1, Scalar::one(), trunc);
    let mut j = 1i64;
    while 24 * j + 1 < trunc {
        acc = acc.mul(&QSeries::one().sub(&QSeries::monomial(24 * j, Scalar::one(), trunc)));
        j += 1;
    }
    acc
}

fn fourth(kind: ThetaKind, trunc: i64) -> QSeries {
    theta_null(kind, trunc).pow(4)
}

/// δ₁, δ₂, δ₃, ε₁, ε₂, ε₃ from fourth powers of theta-nulls, E₄ and η.
pub fn modular_table(trunc: i64) -> ModularFormTable {
    let t1 = fourth(ThetaKind::Theta1, trunc);
    let t2 = fourth(ThetaKind::Theta2, trunc);
    let t3 = fourth(ThetaKind::Theta3, trunc);
    let r = |n, d| Rational::new(n, d);
    let delta = [
        t2.add(&t3).scale_rational(&r(1, 8)),
        t1.add(&t3).scale_rational(&r(-1, 8)),
        t1.sub(&t2).scale_rational(&r(1, 8)),
    ];
    let eps = [
        t2.mul(&t3).scale_rational(&r(1, 16)),
        t1.mul(&t3).scale_rational(&r(1, 16)),
        t1.mul(&t2).scale_rational(&r(-1, 16)),
    ];
    ModularFormTable { delta, eps, e4: e4(trunc), eta: eta(trunc) }
}

/// θ'(0, τ) − π θ₁(0, τ) θ₂(0, τ) θ₃(0, τ); identically zero.
pub fn jacobi_identity_check(trunc: i64) -> QSeries {
    let lhs = theta_prime_zero(trunc);
    let rhs = theta_null(ThetaKind::Theta1, trunc)
        .mul(&theta_null(ThetaKind::Theta2, trunc))
        .mul(&theta_null(ThetaKind::Theta3, trunc))
        .shift_pi(1);
    lhs.sub(&rhs)
}

/// A monomial δ^a ε^b in a two-generator ring of modular forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisMonomial {
    pub a: u32,
    pub b: u32,
}

/// Coefficients of a decomposition, ordered by decreasing power of δ.
pub type Decomposition = Vec<(BasisMonomial, Scalar)>;

/// Monomials δ^a ε^b with 2a + 4b = weight.
pub fn weight_basis(weight: u32) -> Result<Vec<BasisMonomial>> {
    if !weight.is_multiple_of(2) {
        return Err(Error::InvalidConfig("weight must be even".into()));
    }
    Ok((0..=weight / 4).map(|b| BasisMonomial { a: (weight - 4 * b) / 2, b }).collect())
}

/// Decomposes f over {δ^a ε^b} for the given generators.
///
/// Solves the linear system on every (π-power, ζ-coordinate) component of
/// the coefficients and checks the reconstruction up to `f.trunc()`.
pub fn decompose(f: &QSeries, weight: u32, delta: &QSeries, eps: &QSeries) -> Result<Decomposition> {
    let basis = weight_basis(weight)?;
    let trunc = f.trunc().min(delta.trunc()).min(eps.trunc());
    let elems: Vec<QSeries> = basis.iter().map(|m| delta.pow(m.a).mul(&eps.pow(m.b)).truncate(trunc)).collect();
    // exponents present in either f or the basis
    let mut rows: Vec<i64> = elems.iter().flat_map(|e| e.terms().iter().map(|t| t.0)).collect();
    rows.extend(f.terms().iter().map(|t| t.0));
    rows.sort_unstable();
    rows.dedup();
    rows.retain(|&k| k < trunc);
    // components present in f
    let mut comps: Vec<(i32, usize)> = Vec::new();
    for (_, s) in f.terms() {
        for (p, c) in s.terms() {
            for (i, x) in c.coords().iter().enumerate() {
                if !x.is_zero() {
                    comps.push((*p, i));
                }
            }
        }
    }
    comps.sort_unstable();
    comps.dedup();
    let mut sol: Vec<Scalar> = alloc::vec![Scalar::zero(); basis.len()];
    for (p, i) in comps {
        let rhs: Vec<Rational> = rows
            .iter()
            .map(|&k| f.coeff(k).pi_coeff(p).coords()[i].clone())
            .collect();
        let mat: Vec<Vec<Rational>> = rows
            .iter()
            .map(|&k| elems.iter().map(|e| e.coeff(k).as_rational().expect("rational basis")).collect())
            .collect();
        let x = solve_least(&mat, &rhs).ok_or_else(|| {
            Error::NotInRing(alloc::format!("inconsistent system for π^{} ζ^{} component", p, i))
        })?;
        for (j, v) in x.into_iter().enumerate() {
            if !v.is_zero() {
                let mut coords: [Rational; 8] = Default::default();
                coords[i] = v;
                let term = Scalar::monomial(p, crate::exactscalar::CycloRational::from_coords(coords));
                sol[j] = sol[j].add(&term);
            }
        }
    }
    // verify the reconstruction
    let mut recon = QSeries::zero_to(trunc);
    for (e, c) in elems.iter().zip(sol.iter()) {
        recon = recon.add(&e.scale(c));
    }
    let resid = recon.sub(&f.truncate(trunc));
    if let Some(k) = resid.valuation() {
        return Err(Error::NotInRing(alloc::format!("reconstruction differs at q-exponent {}/24", k)));
    }
    Ok(basis.into_iter().zip(sol).collect())
}

/// Decomposition over M(Γ⁰(2)) = C[δ₂, ε₂].
pub fn decompose_gamma0_2(f: &QSeries, weight: u32) -> Result<Decomposition> {
    let t = modular_table(f.trunc().min(crate::thetalib::MAX_AUTO_TRUNC));
    decompose(f, weight, &t.delta[1], &t.eps[1])
}

/// Rebuilds Σ c·δ^a ε^b.
pub fn reconstruct(dec: &Decomposition, delta: &QSeries, eps: &QSeries) -> QSeries {
    let mut acc = QSeries::zero();
    for (m, c) in dec {
        acc = acc.add(&delta.pow(m.a).mul(&eps.pow(m.b)).scale(c));
    }
    acc
}

/// Solves A x = b exactly; returns `None` when inconsistent. Free variables
/// are set to zero.
fn solve_least(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut r = r.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip().expect("nonzero pivot");
        for k in col..=cols {
            m[row][k] = &m[row][k] * &inv;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for k in col..=cols {
                    let v = &m[row][k] * &f;
                    m[r][k] = &m[r][k] - &v;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = alloc::vec![Rational::ZERO; cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}
