//! Floating-point evaluation of theta functions and exact q-series, used
//! for the S-transformation laws that exact arithmetic cannot express.
//!
//! Theta functions are evaluated from truncated products; exact q-series
//! are summed at q^{1/24} = e^{2πiτ/24} with π replaced by its value.
//! Residuals are relative to the size of the compared quantities.

mod eval;
mod laws;
mod modularity;

pub use eval::{eval_form, q24, theta_eval, theta_eval_deriv, NumericForm};
pub use laws::{check_transformations, convergence_witness, series_consistency};
pub use modularity::{check_cs_modularity_s, check_flat_psi_modularity_s};

use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Sample points and tolerances for the numeric checks.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericConfig {
    /// Factors kept in each infinite product.
    pub product_terms: usize,
    /// Points τ in the upper half plane.
    pub tau_samples: Vec<Complex64>,
    pub v_samples: Vec<Complex64>,
    pub tol: f64,
    /// Exclusive q-truncation (q^{1/24} units) of exact series that are
    /// summed numerically.
    pub series_trunc: i64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            product_terms: 60,
            tau_samples: alloc::vec![Complex64::new(0.0, 2.0), Complex64::new(1.0, 2.0), Complex64::new(-0.5, 1.5)],
            v_samples: alloc::vec![Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.05)],
            tol: 1e-9,
            series_trunc: 385,
        }
    }
}

impl NumericConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(t) = self.tau_samples.iter().find(|t| !(t.im > 0.0)) {
            return Err(Error::InvalidConfig(alloc::format!("tau sample {} is not in the upper half plane", fmt_c(*t))));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig(alloc::format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.product_terms == 0 {
            return Err(Error::InvalidConfig("product_terms must be positive".into()));
        }
        if self.series_trunc <= 0 {
            return Err(Error::InvalidConfig("series_trunc must be positive".into()));
        }
        Ok(())
    }
}

/// Compact rendering such as `1+2i` or `-0.5+1.5i`.
pub fn fmt_c(z: Complex64) -> String {
    let re = z.re;
    let im = z.im;
    if im == 0.0 {
        return alloc::format!("{}", re);
    }
    let im_part = if im == 1.0 {
        String::from("i")
    } else if im == -1.0 {
        String::from("-i")
    } else {
        alloc::format!("{}i", im)
    };
    if re == 0.0 {
        im_part
    } else if im > 0.0 {
        alloc::format!("{}+{}", re, im_part)
    } else {
        alloc::format!("{}{}", re, im_part)
    }
}

/// |a − b| / max(|a|, |b|, 1).
pub(crate) fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}
