//! Connections d + A on a trivial bundle over a chart, their curvature and
//! the linear interpolation between two of them.

use super::matrix::MatrixForm;
use super::monomial::{Truncation, MAX_DIM};
use crate::error::{Error, Result};
use crate::exactscalar::Rational;

/// R = dA + A∧A.
pub fn curvature(a: &MatrixForm, trunc: Truncation) -> Result<MatrixForm> {
    a.d().truncate(trunc).add(&a.mul(a, trunc)?)
}

/// Two connections ∇₀ = d + A₀ and ∇₁ = d + A₁ on a rank-n bundle over an
/// m-dimensional chart.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionPair {
    m: usize,
    a0: MatrixForm,
    a1: MatrixForm,
    claims_flat: bool,
}

fn check_one_forms(a: &MatrixForm, m: usize, label: &str) -> Result<()> {
    for (e, f) in a.entries().iter().enumerate() {
        for (mono, _) in f.terms() {
            if mono.form_degree() != 1 || mono.t_exp() != 0 {
                return Err(Error::ShapeError(alloc::format!(
                    "{} entry ({}, {}) has a non-1-form term {}",
                    label,
                    e / a.n(),
                    e % a.n(),
                    mono
                )));
            }
            if (m..MAX_DIM).any(|i| mono.exp(i) > 0 || mono.mask & (1 << i) != 0) {
                return Err(Error::ShapeError(alloc::format!(
                    "{} entry ({}, {}) uses a coordinate beyond m = {}",
                    label,
                    e / a.n(),
                    e % a.n(),
                    m
                )));
            }
        }
    }
    Ok(())
}

/// First nonzero curvature entry, if any.
pub fn first_curvature_violation(a: &MatrixForm) -> Result<Option<(usize, usize, alloc::string::String)>> {
    let r = curvature(a, Truncation::None)?;
    for i in 0..r.n() {
        for j in 0..r.n() {
            let f = r.get(i, j);
            if !f.is_zero() {
                let (mono, c) = &f.terms()[0];
                return Ok(Some((i, j, alloc::format!("{} {}", c, mono))));
            }
        }
    }
    Ok(None)
}

impl ConnectionPair {
    /// Validates shapes and, when `claims_flat`, both Maurer-Cartan equations.
    pub fn new(m: usize, a0: MatrixForm, a1: MatrixForm, claims_flat: bool) -> Result<Self> {
        if m == 0 || m > MAX_DIM {
            return Err(Error::InvalidConfig(alloc::format!("chart dimension {} outside 1..={}", m, MAX_DIM)));
        }
        if a0.n() != a1.n() || a0.n() == 0 {
            return Err(Error::ShapeError(alloc::format!("ranks {} and {} differ or vanish", a0.n(), a1.n())));
        }
        check_one_forms(&a0, m, "A0")?;
        check_one_forms(&a1, m, "A1")?;
        if claims_flat {
            for (label, a) in [("A0", &a0), ("A1", &a1)] {
                if let Some((i, j, term)) = first_curvature_violation(a)? {
                    return Err(Error::FlatnessViolation(alloc::format!(
                        "curvature of {} has nonzero entry ({}, {}): {} ...",
                        label,
                        i,
                        j,
                        term
                    )));
                }
            }
        }
        Ok(ConnectionPair { m, a0, a1, claims_flat })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.a0.n()
    }

    pub fn a0(&self) -> &MatrixForm {
        &self.a0
    }

    pub fn a1(&self) -> &MatrixForm {
        &self.a1
    }

    pub fn claims_flat(&self) -> bool {
        self.claims_flat
    }

    /// A = A₁ − A₀ = ∇₁ − ∇₀.
    pub fn difference(&self) -> MatrixForm {
        self.a1.sub(&self.a0).expect("validated shapes")
    }

    /// The pair with the endpoints exchanged.
    pub fn swapped(&self) -> Self {
        ConnectionPair { m: self.m, a0: self.a1.clone(), a1: self.a0.clone(), claims_flat: self.claims_flat }
    }

    /// A_t = A₀ + tA with t carried as a formal monomial.
    pub fn interpolated(&self) -> MatrixForm {
        self.a0.add(&self.difference().mul_t(1)).expect("validated shapes")
    }

    /// Truncation keeping every form degree up to m with at least `cap`
    /// polynomial degree on the top forms; closed under d and ∧.
    pub fn weight_truncation(&self, cap: u32) -> Truncation {
        Truncation::Weight(self.m as u32 + cap)
    }
}

/// R_t = d(A₀ + tA) + (A₀ + tA)∧(A₀ + tA), quadratic in the formal t.
pub fn curvature_family(pair: &ConnectionPair, trunc: Truncation) -> Result<MatrixForm> {
    curvature(&pair.interpolated(), trunc)
}

/// Evaluates a t-dependent matrix at t.
pub fn at_t(x: &MatrixForm, t: i64) -> MatrixForm {
    x.eval_t(&Rational::from_int(t))
}
