//! Jacobi theta functions, their logarithmic derivatives, the
//! characteristic-form generating functions built from them, and the
//! modular forms δᵢ, εᵢ, E₄, η.

pub mod modular;
pub mod theta;
pub mod wseries;

pub use modular::{
    decompose, decompose_gamma0_2, e2, e4, eta, jacobi_identity_check, modular_table, reconstruct,
    weight_basis, BasisMonomial, Decomposition, ModularFormTable,
};
pub use theta::{
    cs_bracket_r, genus_series_r, genus_series_w, theta_core, theta_expand, theta_logderiv, theta_null,
    theta_prime_zero, w_to_z, GenusKind, LogDerivKind, ThetaKind,
};
pub use wseries::WSeries;

/// q-order used when an exact input gives no truncation to inherit.
pub const MAX_AUTO_TRUNC: i64 = 240;
