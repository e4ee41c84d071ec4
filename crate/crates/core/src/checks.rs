//! Named identity checks with a compact summary of their residuals.

use alloc::string::String;

use crate::formcalc::FormSeries;

/// What a check expects of its residual.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    /// The identity holds: the residual vanishes.
    Zero,
    /// A sharpness witness: the perturbed identity must fail.
    Nonzero,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Status {
    Pass,
    Fail,
    /// Not applicable to this scenario; the reason is attached.
    Skipped(String),
}

/// Location and size of an exact residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSummary {
    /// Number of nonzero (form monomial, q-exponent) coefficients.
    pub nonzero: usize,
    /// Lowest form degree carrying a nonzero coefficient, and its lowest
    /// q-exponent in q^{1/24} units.
    pub first: Option<(u32, i64)>,
}

impl ExactSummary {
    pub fn of(residual: &FormSeries) -> Self {
        let mut nonzero = 0;
        let mut first: Option<(u32, i64)> = None;
        for (m, c) in residual.terms() {
            nonzero += c.terms().len();
            if let Some(k) = c.valuation() {
                let here = (m.form_degree(), k);
                if first.is_none_or(|f| here < f) {
                    first = Some(here);
                }
            }
        }
        ExactSummary { nonzero, first }
    }
}

/// Residual of a check.
#[derive(Clone, Debug, PartialEq)]
pub enum Residual {
    Exact(ExactSummary),
    /// Largest absolute residual against a tolerance.
    Numeric { max_abs: f64, tol: f64 },
    None,
}

/// One verified identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub id: String,
    /// Short description of the statement being checked.
    pub anchor: String,
    pub expect: Expect,
    pub status: Status,
    pub residual: Residual,
}

impl Check {
    fn exact(id: &str, anchor: &str, residual: &FormSeries, expect: Expect) -> Self {
        let summary = ExactSummary::of(residual);
        let ok = match expect {
            Expect::Zero => summary.nonzero == 0,
            Expect::Nonzero => summary.nonzero > 0,
        };
        Check {
            id: id.into(),
            anchor: anchor.into(),
            expect,
            status: if ok { Status::Pass } else { Status::Fail },
            residual: Residual::Exact(summary),
        }
    }

    /// Passes iff `residual` is exactly zero.
    pub fn zero(id: &str, anchor: &str, residual: &FormSeries) -> Self {
        Self::exact(id, anchor, residual, Expect::Zero)
    }

    /// Passes iff `residual` is nonzero.
    pub fn nonzero(id: &str, anchor: &str, residual: &FormSeries) -> Self {
        Self::exact(id, anchor, residual, Expect::Nonzero)
    }

    /// Passes iff `max_abs < tol` (NaN fails).
    pub fn numeric(id: &str, anchor: &str, max_abs: f64, tol: f64) -> Self {
        Check {
            id: id.into(),
            anchor: anchor.into(),
            expect: Expect::Zero,
            status: if max_abs < tol { Status::Pass } else { Status::Fail },
            residual: Residual::Numeric { max_abs, tol },
        }
    }

    /// A boolean fact.
    pub fn flag(id: &str, anchor: &str, ok: bool) -> Self {
        Check {
            id: id.into(),
            anchor: anchor.into(),
            expect: Expect::Zero,
            status: if ok { Status::Pass } else { Status::Fail },
            residual: Residual::None,
        }
    }

    pub fn skipped(id: &str, anchor: &str, reason: &str) -> Self {
        Check {
            id: id.into(),
            anchor: anchor.into(),
            expect: Expect::Zero,
            status: Status::Skipped(reason.into()),
            residual: Residual::None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

/// True when no check failed.
pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| !c.failed())
}
