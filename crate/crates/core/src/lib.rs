//! Analytical model of interleaved origami springs (IOS) and their rigidized
//! variants (RIOS).
//!
//! The crate covers the continuum shape-morphing model (cylinder radius,
//! stretch-twist coupling, unit-cell coordinates and folding angles), the
//! energy and force laws in tension and compression, least-squares recovery
//! of the stiffness constants from force-extension data, the ejector
//! distance model, and planar crease-pattern generation.
//!
//! Everything here is pure computation: `no_std` with `alloc`, no I/O.
//! File formats and the command-line tool live in `origami-spring-tools`.
#![no_std]
#![warn(missing_docs)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
mod lstsq;
mod math;

pub mod ejector;
pub mod fitting;
pub mod geometry;
pub mod mechanics;
pub mod pattern;
pub mod reference;

pub use error::{Error, Result};
pub use geometry::{ExtensionRatio, FacetFamily, SpringSpec, Variant};
pub use math::Vec3;
pub use mechanics::MechanicalParams;
