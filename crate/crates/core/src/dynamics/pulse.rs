use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PulseKind {
    Fock { n: usize },
    Coherent { mean_n: f64 },
}

impl PulseKind {
    /// Dimension of the photon-record ladder.
    pub fn ladder_dim(&self) -> usize {
        match *self {
            PulseKind::Fock { n } => n + 1,
            PulseKind::Coherent { .. } => 1,
        }
    }
}

/// Gaussian pulse incident on both atoms. Times are in seconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PulseSpec {
    pub kind: PulseKind,
    pub tau_f: f64,
    /// Carrier angular frequency, rad/s. `None` means resonant with ω₀.
    pub carrier: Option<f64>,
    /// Arrival times of the pulse peak at atoms 1 and 2.
    pub arrival_times: [f64; 2],
    /// Pumping efficiencies η₁, η₂.
    pub efficiencies: [f64; 2],
}

impl PulseSpec {
    pub fn single_photon(tau_f: f64, efficiencies: [f64; 2]) -> Self {
        Self { kind: PulseKind::Fock { n: 1 }, tau_f, carrier: None, arrival_times: [0.0; 2], efficiencies }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tau_f > 0.0 && self.tau_f.is_finite()) {
            return Err(Error::domain(format!("tau_f must be positive, got {}", self.tau_f)));
        }
        match self.kind {
            PulseKind::Fock { n: 0 } => return Err(Error::domain("Fock pulses need at least one photon")),
            PulseKind::Coherent { mean_n } if !(mean_n > 0.0 && mean_n.is_finite()) => {
                return Err(Error::domain(format!("mean photon number must be positive, got {mean_n}")))
            }
            _ => {}
        }
        for &eta in &self.efficiencies {
            if !(0.0..=1.0).contains(&eta) {
                return Err(Error::domain(format!("pumping efficiency must lie in [0, 1], got {eta}")));
            }
        }
        if self.arrival_times.iter().any(|t| !t.is_finite()) {
            return Err(Error::domain("arrival times must be finite"));
        }
        if let Some(w) = self.carrier {
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::domain(format!("carrier frequency must be positive, got {w}")));
            }
        }
        let total: f64 = self.efficiencies.iter().map(|e| e * e).sum();
        if total > 1.0 + 1e-12 {
            log::warn!("eta1² + eta2² = {total:.4} exceeds 1");
        }
        Ok(())
    }
}

/// `ξ(t) = (2πτ_f²)^{−1/4} exp(−t²/4τ_f² − iω_c t)`, in 1/√s.
pub fn gaussian_wavepacket(tau_f: f64, carrier: f64, t: f64) -> Complex64 {
    let amp = (2.0 * PI * tau_f * tau_f).powf(-0.25) * (-t * t / (4.0 * tau_f * tau_f)).exp();
    Complex64::from_polar(amp, -carrier * t)
}
