//! Exact toolkit for H-free subfamily problems on finite hypergraphs.
//!
//! The crate builds the extremal constructions (sunflowers, `F_m^{d}`,
//! level-intersecting families, duals of Miquelian inversive planes),
//! computes `ex(F, H)` exactly by branch and bound, and evaluates the known
//! bound formulas and binomial identities with exact arithmetic.

pub mod bounds;
pub mod certificate;
pub mod comb;
pub mod constructions;
pub mod error;
pub mod family;
pub mod geometry;
pub mod io;
pub mod oracle;
pub mod profile;
pub mod subsets;

pub use certificate::Certificate;
pub use bounds::{BoundsReport, RegionLabel};
pub use comb::{DVector, ExactMatrix};
pub use error::{Error, Result};
pub use family::{Edge, Family, VertexId};
pub use geometry::InversivePlane;
pub use oracle::{ConflictHypergraph, OracleResult, Pattern};
pub use profile::{AVector, BVector, EipOutcome, EvennessVerdict, VennProfile};
