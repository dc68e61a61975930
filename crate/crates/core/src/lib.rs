//! Two-photon interference in an integrated waveguide circuit.
//!
//! A type-II degenerate parametric down-conversion (PDC) section emits an
//! orthogonally polarized photon pair into channel 1. The pair passes a
//! polarization converter, a polarization beam splitter, a delay section
//! and a second converter before meeting at a balanced beam splitter, where
//! polarization-resolved coincidences are counted.
//!
//! The crate is split into:
//!
//! * [`spectral`]: frequency grids, the joint spectral amplitude and its
//!   Schmidt decomposition.
//! * [`circuit`]: 4x4 mode transfer matrices over `[1H, 1V, 2H, 2V]` and
//!   propagation of the biphoton amplitude tensor.
//! * [`detection`]: coincidence and bunching probabilities, delay scans.
//! * [`oracle`]: closed-form amplitudes, reduced density matrix, Schmidt
//!   numbers and characteristic lengths used to cross-check the engine.
//! * [`runner`]: configuration, named presets, CSV and manifest output.

pub mod circuit;
pub mod detection;
mod error;
pub(crate) mod phase;
pub mod oracle;
pub mod runner;
pub mod spectral;

pub use error::{Error, Result};

/// Speed of light in vacuum (m/s).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
