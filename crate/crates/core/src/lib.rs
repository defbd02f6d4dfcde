//! Transient dipole-dipole ("entanglement") force between two two-level
//! atoms driven by Fock-state or coherent light pulses, in vacuum or above a
//! graphene-coated substrate.
//!
//! Layers, bottom-up:
//! - [`numerics`]: dense complex matrices, Bessel functions, adaptive
//!   quadrature, Runge–Kutta integration, log-log fitting
//! - [`greens`]: dyadic Green tensors (free space, imaginary frequency,
//!   reflected part above a conducting sheet) and the graphene conductivity
//! - [`couplings`]: decay rates, RDDI shifts, force operator, van der Waals
//! - [`dynamics`]: extended-density-matrix master equation for pulse driving
//! - [`runner`]: configuration, scenario dispatch and table output

pub mod constants;
pub mod couplings;
pub mod dynamics;
pub mod error;
pub mod greens;
pub mod numerics;
pub mod runner;

pub use error::{Error, Result};
