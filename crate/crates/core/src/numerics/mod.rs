//! Numerical kernels shared by the physics modules.

pub mod bessel;
pub mod fit;
pub mod matrix;
pub mod ode;
pub mod quadrature;

pub use bessel::{bessel_j, bessel_j012};
pub use fit::{fit_loglog_slope, linspace, logspace};
pub use matrix::ComplexMatrix;
pub use ode::{integrate_ode, integrate_ode_observed, OdeSolution, StepControl};
pub use quadrature::{integrate_adaptive, integrate_with, QuadOptions, QuadValue, QuadratureResult};
