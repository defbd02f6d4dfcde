use std::f64::consts::PI;

use num_complex::Complex64;

use crate::constants::{E_CHARGE, HBAR, K_B};
use crate::error::{Error, Result};
use crate::numerics::{integrate_with, QuadOptions};

/// Doped graphene sheet on a dielectric half-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrapheneModel {
    /// Fermi energy `E_F`, eV.
    pub fermi_energy: f64,
    /// Intraband relaxation time `τ_D`, seconds.
    pub relaxation_time: f64,
    /// Kelvin. Zero selects the T → 0 closed forms.
    pub temperature: f64,
    /// Substrate permittivity `ε` at the working frequency.
    pub substrate_permittivity: Complex64,
}

impl GrapheneModel {
    pub fn new(fermi_energy: f64, relaxation_time: f64, substrate_permittivity: f64) -> Self {
        Self {
            fermi_energy,
            relaxation_time,
            temperature: 0.0,
            substrate_permittivity: Complex64::new(substrate_permittivity, 0.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.fermi_energy > 0.0 && self.fermi_energy.is_finite()) {
            return Err(Error::domain(format!("fermi_energy must be positive, got {}", self.fermi_energy)));
        }
        if !(self.relaxation_time > 0.0 && self.relaxation_time.is_finite()) {
            return Err(Error::domain(format!(
                "relaxation_time must be positive, got {}",
                self.relaxation_time
            )));
        }
        if !(self.temperature >= 0.0 && self.temperature.is_finite()) {
            return Err(Error::domain(format!("temperature must be non-negative, got {}", self.temperature)));
        }
        let eps = self.substrate_permittivity;
        if !(eps.re.is_finite() && eps.im.is_finite()) || eps.im < 0.0 {
            return Err(Error::domain(format!("substrate permittivity must be passive, got {eps}")));
        }
        Ok(())
    }
}

/// Sheet conductivity `σ(ω)` in siemens, intraband plus interband.
pub fn graphene_conductivity(model: &GrapheneModel, omega: f64) -> Result<Complex64> {
    model.validate()?;
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::domain(format!("frequency must be positive, got {omega}")));
    }
    let sigma0 = E_CHARGE * E_CHARGE / (4.0 * HBAR);
    let drude = Complex64::new(0.0, 1.0) / Complex64::new(omega, 1.0 / model.relaxation_time);
    // photon and Fermi energies in eV
    let w = HBAR * omega / E_CHARGE;
    let ef = model.fermi_energy;

    if model.temperature == 0.0 {
        let intra = (E_CHARGE * E_CHARGE / (PI * HBAR)) * (ef * E_CHARGE / HBAR) * drude;
        if w == 2.0 * ef {
            return Err(Error::LogSingularity);
        }
        let step = if w > 2.0 * ef { 1.0 } else { 0.0 };
        let log = ((w - 2.0 * ef) / (w + 2.0 * ef)).abs().ln();
        return Ok(intra + sigma0 * Complex64::new(step, log / PI));
    }

    let kt = K_B * model.temperature / E_CHARGE;
    let y = ef / (2.0 * kt);
    let log_2cosh = y.abs() + (-2.0 * y.abs()).exp().ln_1p();
    let intra = (2.0 * E_CHARGE * E_CHARGE / (PI * HBAR)) * (kt * E_CHARGE / HBAR) * log_2cosh * drude;

    let h = |x: f64| occupation_difference(x, ef, kt);
    let h0 = h(0.5 * w);
    let integrand = |x: f64| Complex64::new((h(x) - h0) / (w * w - 4.0 * x * x), 0.0);
    let opts = QuadOptions { rel_tol: 1e-10, abs_tol: 1e-14, scale: ef.max(w), ..QuadOptions::default() };
    // resolve the thermal step at E_F on its own panels
    let mut breaks = vec![0.5 * w];
    for m in [-40.0, -8.0, -2.0, 0.0, 2.0, 8.0, 40.0] {
        breaks.push(ef + m * kt);
    }
    let integral = integrate_with(integrand, 0.0, f64::INFINITY, &breaks, &opts)?;
    let inter = sigma0 * Complex64::new(h0, 4.0 * w / PI * integral.value.re);
    Ok(intra + inter)
}

/// `H(x) = sinh(x/kT) / (cosh(E_F/kT) + cosh(x/kT))`, evaluated without
/// overflow at low temperature.
fn occupation_difference(x: f64, ef: f64, kt: f64) -> f64 {
    let a = x / kt;
    let b = ef / kt;
    let m = a.abs().max(b.abs());
    let num = (a - m).exp() - (-a - m).exp();
    let den = (b - m).exp() + (-b - m).exp() + (a - m).exp() + (-a - m).exp();
    num / den
}
