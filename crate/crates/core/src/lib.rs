//! Exact q-series, Jacobi theta functions and Chern-Simons transgression on
//! formal coordinate charts.
//!
//! The crate is `no_std` with `alloc`. Coefficients live in
//! Q(ζ₂₄)[π, π⁻¹]; forms are polynomial-coefficient differential forms on an
//! m-dimensional chart; every identity is checked by exact arithmetic, with
//! a separate floating-point tower ([`numericheck`]) for the S-transformation
//! laws.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(feature = "std")]
extern crate std;

pub mod error;
pub mod exactscalar;
pub mod charforms;
pub mod checks;
pub mod csforms;
pub mod formcalc;
pub mod numericheck;
pub mod thetalib;

pub use error::{Error, Result};
