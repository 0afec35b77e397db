#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::too_many_arguments)]

//! Numerics for the compact helicoid inside a solid cylinder.
//!
//! The crate is organised bottom-up:
//!
//! - [`cylinder`]: the ambient cylinder, curves on its side surface, the
//!   development map, rotation angle, total curvature and helical geodesics.
//! - [`helicoid`]: exact helicoid patches, their areas, boundary helices and
//!   the rotated family that foliates the cylinder minus its axis.
//! - [`barrier`]: the screw-motion barrier surface, its fundamental forms,
//!   closed-form mean curvature and the positivity phase table.
//! - [`surface`]: triangle meshes with boundary roles, competitor surfaces,
//!   cylinder slicing, transversality, meeting angles, the monotone
//!   projection test and a constrained discrete area minimizer.
//! - [`experiments`]: reproducible experiment drivers behind the
//!   `helicoid-lab` binary.
//!
//! All geometry uses the canonical placement: the cylinder axis is the
//! z-axis, the bottom disk lies in `z = 0` and the top disk in `z = h`.

pub mod barrier;
pub mod cylinder;
pub mod error;
pub mod experiments;
pub mod helicoid;
pub mod quadrature;
pub mod surface;

pub use barrier::{BarrierPatch, FundamentalForms, PhaseRow, PhaseTable};
pub use cylinder::{CylinderConfig, DevelopedCurve, SideCurve, SidePoint};
pub use error::{Error, Result};
pub use helicoid::{DistanceEstimate, HelicoidPatch};
pub use surface::{SliceProfile, SolverOptions, SolverReport, SurfaceMesh, VertexRole};

/// Three-component vector used for all points and directions.
pub type Vec3 = nalgebra::Vector3<f64>;
