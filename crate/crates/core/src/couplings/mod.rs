//! Decay rates, RDDI shifts, the force operator and the van der Waals
//! interaction for a pair of identical two-level atoms.

mod vdw;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::constants::{C, EPS0, HBAR};
use crate::error::{Error, Result};
use crate::greens::{
    free_space_green, graphene_conductivity, interface_green, project, reflected_part, Geometry, GrapheneModel,
    GreenSample, SheetInterface,
};
use crate::numerics::ComplexMatrix;

pub use vdw::{vdw_force, vdw_potential};

/// Electromagnetic surroundings of the atom pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Environment {
    Vacuum,
    Graphene {
        fermi_energy_ev: f64,
        relaxation_time_s: f64,
        temperature_k: f64,
        substrate_permittivity: f64,
    },
}

impl Environment {
    pub fn graphene(model: &GrapheneModel) -> Self {
        Environment::Graphene {
            fermi_energy_ev: model.fermi_energy,
            relaxation_time_s: model.relaxation_time,
            temperature_k: model.temperature,
            substrate_permittivity: model.substrate_permittivity.re,
        }
    }

    pub fn graphene_model(&self) -> Option<GrapheneModel> {
        match *self {
            Environment::Vacuum => None,
            Environment::Graphene { fermi_energy_ev, relaxation_time_s, temperature_k, substrate_permittivity } => {
                Some(GrapheneModel {
                    fermi_energy: fermi_energy_ev,
                    relaxation_time: relaxation_time_s,
                    temperature: temperature_k,
                    substrate_permittivity: Complex64::new(substrate_permittivity, 0.0),
                })
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipolePairConfig {
    /// Transition angular frequency, rad/s.
    pub omega0: f64,
    /// Transition dipole magnitude, C·m.
    pub d0: f64,
    /// Dipole angle from the separation axis in the xz-plane.
    pub theta: f64,
    pub geometry: Geometry,
    pub environment: Environment,
}

impl DipolePairConfig {
    /// Rb D1 pair in vacuum at separation `r`.
    pub fn rubidium(r: f64, theta: f64) -> Self {
        Self {
            omega0: crate::constants::RB_D1_OMEGA0,
            d0: crate::constants::RB_D1_DIPOLE,
            theta,
            geometry: Geometry::free(r),
            environment: Environment::Vacuum,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega0 > 0.0 && self.omega0.is_finite()) {
            return Err(Error::domain(format!("omega0 must be positive, got {}", self.omega0)));
        }
        if !(self.d0 > 0.0 && self.d0.is_finite()) {
            return Err(Error::domain(format!("d0 must be positive, got {}", self.d0)));
        }
        if !(0.0..=PI / 2.0 + 1e-12).contains(&self.theta) {
            return Err(Error::domain(format!("theta must lie in [0, π/2], got {}", self.theta)));
        }
        if !(self.geometry.r > 0.0 && self.geometry.r.is_finite()) {
            return Err(Error::domain(format!("separation must be positive, got {}", self.geometry.r)));
        }
        if let Some(model) = self.environment.graphene_model() {
            model.validate()?;
            if !(self.geometry.z0 > 0.0) {
                return Err(Error::domain("graphene environment needs a positive height z0"));
            }
        }
        Ok(())
    }

    pub fn k0(&self) -> f64 {
        self.omega0 / C
    }

    /// Unit dipole direction `(cos θ, 0, sin θ)`.
    pub fn dipole_unit(&self) -> [f64; 3] {
        [self.theta.cos(), 0.0, self.theta.sin()]
    }

    pub fn with_r(&self, r: f64) -> Self {
        let mut c = *self;
        c.geometry.r = r;
        c
    }

    /// `ω₀²d₀²/(ħε₀c²)`, the factor turning `μ̂·G·μ̂` into a rate.
    fn rate_factor(&self) -> f64 {
        self.omega0 * self.omega0 * self.d0 * self.d0 / (HBAR * EPS0 * C * C)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingSet {
    /// Transition angular frequency, rad/s.
    pub omega0: f64,
    /// Free-space spontaneous decay rate, 1/s.
    pub gamma0: f64,
    /// Local single-atom decay rate γ₁₁ = γ₂₂ (equals `gamma0` in vacuum), 1/s.
    pub gamma_self: f64,
    /// Cooperative decay rate, 1/s.
    pub gamma12: f64,
    /// Coherent RDDI shift, rad/s.
    pub delta12: f64,
    /// `F_{eg,ge}(r)`, newtons.
    pub force_element: f64,
    pub environment: Environment,
    pub r: f64,
    pub z0: f64,
    pub theta: f64,
}

/// `γ₀ = ω₀³d₀²/(3πħε₀c³)`.
pub fn spontaneous_decay_rate(omega0: f64, d0: f64) -> f64 {
    omega0.powi(3) * d0 * d0 / (3.0 * PI * HBAR * EPS0 * C.powi(3))
}

/// Free-space closed forms in units of `γ₀` (rates, shifts) and `ħγ₀k₀`
/// (forces), at `x = k₀r`. Returned as `[parallel, perpendicular]`.
pub fn closed_form_gamma12(x: f64) -> [f64; 2] {
    let (s, c) = x.sin_cos();
    let (x2, x3) = (x * x, x * x * x);
    [3.0 * (s / x3 - c / x2), 1.5 * (-s / x3 + c / x2 + s / x)]
}

pub fn closed_form_delta12(x: f64) -> [f64; 2] {
    let (s, c) = x.sin_cos();
    let (x2, x3) = (x * x, x * x * x);
    [-1.5 * (c / x3 + s / x2), 0.75 * (c / x3 + s / x2 - c / x)]
}

pub fn closed_form_force(x: f64) -> [f64; 2] {
    let (s, c) = x.sin_cos();
    let (x2, x3, x4) = (x * x, x * x * x, x * x * x * x);
    [
        1.5 * (-3.0 * c / x4 - 3.0 * s / x3 + c / x2),
        0.75 * (3.0 * c / x4 + 3.0 * s / x3 - 2.0 * c / x2 - s / x),
    ]
}

fn mix(theta: f64, v: [f64; 2]) -> f64 {
    let (s, c) = theta.sin_cos();
    c * c * v[0] + s * s * v[1]
}

/// Couplings in vacuum from the closed forms.
pub fn couplings_free_space(config: &DipolePairConfig) -> Result<CouplingSet> {
    config.validate()?;
    if config.environment != Environment::Vacuum {
        return Err(Error::domain("couplings_free_space requires the vacuum environment"));
    }
    let gamma0 = spontaneous_decay_rate(config.omega0, config.d0);
    let k = config.k0();
    let x = k * config.geometry.r;
    Ok(CouplingSet {
        omega0: config.omega0,
        gamma0,
        gamma_self: gamma0,
        gamma12: gamma0 * mix(config.theta, closed_form_gamma12(x)),
        delta12: gamma0 * mix(config.theta, closed_form_delta12(x)),
        force_element: HBAR * gamma0 * k * mix(config.theta, closed_form_force(x)),
        environment: config.environment,
        r: config.geometry.r,
        z0: config.geometry.z0,
        theta: config.theta,
    })
}

/// Green tensor at `ω₀` between the two atoms of `config`.
pub fn green_for(config: &DipolePairConfig) -> Result<GreenSample> {
    match config.environment.graphene_model() {
        None => free_space_green(&config.geometry, config.omega0),
        Some(model) => {
            let iface = sheet_for(&model, config.omega0)?;
            interface_green(&config.geometry, config.omega0, &iface)
        }
    }
}

fn sheet_for(model: &GrapheneModel, omega: f64) -> Result<SheetInterface> {
    let sigma = graphene_conductivity(model, omega)?;
    Ok(SheetInterface::with_conductivity(model.substrate_permittivity, sigma))
}

/// Couplings from a Green-tensor sample evaluated at `ω₀` between the two
/// atoms. The force element is `−ħ ∂δ₁₂/∂r`, from a Richardson-extrapolated
/// central difference with step `r·1e-4` on the environment's Green tensor.
pub fn couplings_from_green(config: &DipolePairConfig, g: &GreenSample) -> Result<CouplingSet> {
    config.validate()?;
    let self_term = match config.environment.graphene_model() {
        None => None,
        Some(model) => Some(sheet_for(&model, config.omega0)?),
    };
    assemble(config, g, green_for, self_term.as_ref())
}

/// Couplings for the pair at height `z0` above an explicit sheet interface.
pub fn couplings_near_interface(config: &DipolePairConfig, iface: &SheetInterface) -> Result<CouplingSet> {
    config.validate()?;
    if !(config.geometry.z0 > 0.0) {
        return Err(Error::domain("the pair must sit above the interface (z0 > 0)"));
    }
    let green = |c: &DipolePairConfig| interface_green(&c.geometry, c.omega0, iface);
    assemble(config, &green(config)?, green, Some(iface))
}

fn assemble(
    config: &DipolePairConfig,
    g: &GreenSample,
    green_at: impl Fn(&DipolePairConfig) -> Result<GreenSample>,
    iface: Option<&SheetInterface>,
) -> Result<CouplingSet> {
    let mu = config.dipole_unit();
    let factor = config.rate_factor();
    let gamma0 = spontaneous_decay_rate(config.omega0, config.d0);
    let shift = |s: &GreenSample| -factor * project(&s.tensor, mu, mu).re;

    let r = config.geometry.r;
    let h = r * 1e-4;
    let delta_at = |r: f64| -> Result<f64> { Ok(shift(&green_at(&config.with_r(r))?)) };
    let d_h = (delta_at(r + h)? - delta_at(r - h)?) / (2.0 * h);
    let d_h2 = (delta_at(r + 0.5 * h)? - delta_at(r - 0.5 * h)?) / h;
    let derivative = (4.0 * d_h2 - d_h) / 3.0;

    let gamma_self = match iface {
        None => gamma0,
        Some(iface) => {
            let self_geom = Geometry { r: 0.0, ..config.geometry };
            let gr = reflected_part(&self_geom, config.omega0, iface)?;
            gamma0 + 2.0 * factor * project(&gr, mu, mu).im
        }
    };

    Ok(CouplingSet {
        omega0: config.omega0,
        gamma0,
        gamma_self,
        gamma12: 2.0 * factor * project(&g.tensor, mu, mu).im,
        delta12: shift(g),
        force_element: -HBAR * derivative,
        environment: config.environment,
        r,
        z0: config.geometry.z0,
        theta: config.theta,
    })
}

/// Closed forms in vacuum, Green-tensor route otherwise.
pub fn couplings(config: &DipolePairConfig) -> Result<CouplingSet> {
    match config.environment {
        Environment::Vacuum => couplings_free_space(config),
        Environment::Graphene { .. } => {
            config.validate()?;
            let model = config.environment.graphene_model().expect("graphene environment");
            couplings_near_interface(config, &sheet_for(&model, config.omega0)?)
        }
    }
}

/// `F̂ = −∂Ĥ/∂r` over the basis `{gg, eg, ge, ee}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ForceOperator {
    pub matrix: ComplexMatrix,
}

impl ForceOperator {
    /// Adds the ground-state van der Waals force on the `gg` diagonal.
    pub fn with_vdw(mut self, force: f64) -> Self {
        self.matrix[(0, 0)] += Complex64::new(force, 0.0);
        self
    }

    pub fn rddi_element(&self) -> f64 {
        self.matrix[(1, 2)].re
    }
}

pub fn force_operator(set: &CouplingSet) -> ForceOperator {
    let mut m = ComplexMatrix::zeros(4, 4);
    m[(1, 2)] = Complex64::new(set.force_element, 0.0);
    m[(2, 1)] = Complex64::new(set.force_element, 0.0);
    ForceOperator { matrix: m }
}

/// Recoil force of the pulse itself, `ħω₀/(cτ_f)`.
pub fn impulse_force_estimate(omega0: f64, tau_f: f64) -> f64 {
    HBAR * omega0 / (C * tau_f)
}
