//! Stabilizer simulation of the planar toric code with puncture defects.
//!
//! The crate builds up in layers:
//!
//! - [`pauli`] / [`tableau`]: bit-packed GF(2) Pauli algebra and signed
//!   stabilizer tableaux with Pauli measurement as the only state change.
//! - [`lattice`]: square planar-code patches with per-side rough/smooth
//!   boundaries, their vertex/plaquette generators, and ground states.
//! - [`defects`]: punctures (rough, smooth, and mixed-boundary holes),
//!   string and loop operators, anyon charge readout, and hole transport
//!   by code deformation.
//! - [`encoding`]: the four-puncture qubit built from superposed string
//!   pairs, its fusion and braiding experiments, and the logical operators.
//! - [`anyon`]: the abstract Ising / Z2 fusion-and-braiding data plus a
//!   four-branch amplitude oracle used to cross-check the lattice.
//! - [`experiments`] / [`render`]: reproducible experiment drivers with
//!   JSON reports, and ASCII/SVG lattice diagrams.

pub mod anyon;
pub mod defects;
pub mod encoding;
pub mod experiments;
pub mod lattice;
pub mod pauli;
pub mod render;
pub mod tableau;

#[cfg(test)]
pub(crate) mod dense;

pub use lattice::{BoundarySpec, BoundaryType, CodeGeometry, Side};
pub use pauli::{BitMask, PauliOperator};
pub use tableau::{MeasureKind, MeasureResult, StabilizerTableau, TableauError};
