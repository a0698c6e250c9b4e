//! Finite fields and Miquelian inversive planes.

mod field;
mod plane;

pub use field::{PrimeField, QuadExtField};
pub use plane::{
    build_plane, dual_family, incidence_counts, verify_3design, InversivePlane, ProjPoint, MAX_PLANE_ORDER,
};
