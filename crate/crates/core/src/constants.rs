//! CODATA constants (SI) and the ⁸⁵Rb D1 reference data.

use std::f64::consts::PI;

pub const HBAR: f64 = 1.054_571_817e-34;
pub const C: f64 = 299_792_458.0;
pub const EPS0: f64 = 8.854_187_812_8e-12;
pub const MU0: f64 = 1.0 / (EPS0 * C * C);
pub const E_CHARGE: f64 = 1.602_176_634e-19;
pub const K_B: f64 = 1.380_649e-23;

/// Joules per electronvolt.
pub const EV: f64 = E_CHARGE;

/// Rb D1 (5²S₁/₂ → 5²P₁/₂) transition angular frequency, rad/s.
pub const RB_D1_OMEGA0: f64 = 2.0 * PI * 3.77e14;
/// Rb D1 transition dipole element, C·m.
pub const RB_D1_DIPOLE: f64 = 2.54e-29;
/// Tabulated Rb D1 decay rate, 1/s.
pub const RB_D1_GAMMA0_TABLE: f64 = 2.0 * PI * 5.75e6;

/// Angular frequency for a photon energy given in eV.
pub fn omega_from_ev(energy_ev: f64) -> f64 {
    energy_ev * EV / HBAR
}
