//! Differential forms on a formal coordinate chart, matrices of forms,
//! connections, curvature and Chern-Weil transgression.

pub mod chern_weil;
pub mod connection;
pub mod form;
pub mod generate;
pub mod matrix;
pub mod monomial;

pub use chern_weil::{
    apply_series, cs_classic, det_half, endpoint_curvatures, tr_f, transgress_det_half, transgress_det_half_poly,
    transgress_tr, transgress_tr_poly, CurvatureData, PairData, Parts, PowerSumPoly, TransgressionPoly,
};
pub use connection::{curvature, curvature_family, first_curvature_violation, ConnectionPair};
pub use form::{tensor_sum, Form, FormSeries};
pub use generate::{flat_pair_from_seed, random_connection, random_pair, ConnectionShape};
pub use matrix::{MatrixForm, Parity};
pub use monomial::{Monomial, Truncation, MAX_DIM};

use alloc::vec::Vec;

#[cfg(feature = "parallel")]
pub(crate) fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    items.iter().map(f).collect()
}
