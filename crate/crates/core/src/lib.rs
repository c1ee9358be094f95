//! Spherical t-designs on the 2-sphere: exact moment checks, symmetric
//! numerical search, closed-form constructions, and size predictions.
//!
//! A finite set of points on S² is a spherical t-design when the equal-weight
//! average of every polynomial of degree at most `t` equals its average over the
//! sphere.

pub mod construct;
pub mod design;
pub mod error;
pub mod invariants;
pub mod io;
pub mod moments;
pub mod optimize;
pub mod quadrature;
pub mod symmetry;

pub use design::{Design, DesignMeta, UnitPoint};
pub use error::{Error, Result};
pub use moments::{criterion, discrepancy, verified_strength, MomentReport, Monomial};
pub use symmetry::{OrbitConfig, RotationGroup};
