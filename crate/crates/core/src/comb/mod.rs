//! Exact binomial arithmetic and the b ↔ d ↔ a linear algebra.

mod binom;
mod dvec;
pub mod identities;
mod matrix;

pub use binom::{binom_ext, binom_u128};
pub use dvec::{a_from_d, d_from_b, DSolve, DVector};
pub use identities::{
    bdw_identity_check, bdw_sweep, build_matrix_suite, vdm_identity_check, vdm_sweep, MatrixSuite,
};
pub use matrix::ExactMatrix;
