//! Arcs in the annulus with `g` marked points on the outer boundary and `h` on
//! the inner one, used as a combinatorial model for the module category and the
//! cluster category of affine type A.
//!
//! The crate is organised bottom-up:
//!
//! - [`geometry`]: configurations, lifts to the universal cover, arc classes, τ.
//! - [`moves`]: elementary and long moves, lift propagation along move words.
//! - [`arquiver`]: the truncated translation quiver of admissible arcs.
//! - [`brustle`]: the coordinate quiver built from slice/tube coordinates.
//! - [`correspondence`]: the vertex map between the two and its verification.
//! - [`relations`]: rewrite rules and the relation checks on move words.
//! - [`cluster`]: the unoriented variant with the extra η-slice.

pub mod arquiver;
pub mod brustle;
pub mod cluster;
pub mod correspondence;
pub mod geometry;
pub mod moves;
pub mod quiver;
pub mod relations;
pub mod report;

pub use geometry::{AnnulusArc, ArcClass, ArcError, Boundary, Config, ConfigError, LiftArc, LiftPoint};
pub use quiver::{Component, Quiver};
pub use report::{CheckResult, Report};
