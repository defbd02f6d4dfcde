use num_complex::Complex64;

use super::pulse::{PulseKind, PulseSpec};
use crate::couplings::CouplingSet;
use crate::numerics::ComplexMatrix;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Atomic basis index `e₁ + 2e₂` over `{gg, eg, ge, ee}`.
pub const GG: usize = 0;
pub const EG: usize = 1;
pub const GE: usize = 2;
pub const EE: usize = 3;

/// Lowering operator `σ_j⁻` of atom `j ∈ {0, 1}` on the 4-dimensional pair space.
pub fn lowering(j: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    if j == 0 {
        m[(GG, EG)] = ONE;
        m[(GE, EE)] = ONE;
    } else {
        m[(GG, GE)] = ONE;
        m[(EG, EE)] = ONE;
    }
    m
}

/// Photon-record ladder `τ̂₊` of an `n`-photon Fock pulse: `(k, k+1)` entry
/// `√(n − k)`. At `n = 1` this is the 2×2 raising matrix.
pub fn ladder_raising(n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n + 1, n + 1);
    for k in 0..n {
        m[(k, k + 1)] = Complex64::new(((n - k) as f64).sqrt(), 0.0);
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    /// Rotating at ω₀: the bare `ω₀σ⁺σ⁻` term is dropped.
    Rotating,
    /// Keeps `ω₀σ⁺σ⁻`.
    Lab,
}

/// `L(ρ̃) = Kρ̃ + ρ̃K† + Σᵢⱼ γᵢⱼ σⱼ⁻ρ̃σᵢ⁺` on the extended space, time in units
/// of `1/γ₀`, with `K = −iH − ½Σᵢⱼ γᵢⱼσᵢ⁺σⱼ⁻`.
#[derive(Debug, Clone)]
pub struct LindbladGenerator {
    k: ComplexMatrix,
    jumps: Vec<(f64, ComplexMatrix, ComplexMatrix)>,
}

impl LindbladGenerator {
    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let kr = self.k.matmul(rho);
        let mut out = &kr + &kr.adjoint();
        self.add_jumps(rho, &mut out);
        out
    }

    pub(crate) fn add_jumps(&self, rho: &ComplexMatrix, out: &mut ComplexMatrix) {
        for (g, lower, raise) in &self.jumps {
            let term = lower.matmul(rho).matmul(raise);
            out.axpy(Complex64::new(*g, 0.0), &term);
        }
    }

    /// Non-Hermitian effective generator `K`.
    pub fn effective(&self) -> &ComplexMatrix {
        &self.k
    }
}

/// Lindblad generator for the pair, acting as the identity on a photon-record
/// ladder of dimension `ladder`.
pub fn lindblad_generator(set: &CouplingSet, ladder: usize, frame: Frame) -> LindbladGenerator {
    let id = ComplexMatrix::identity(ladder);
    let low = [lowering(0), lowering(1)];
    let rais = [low[0].adjoint(), low[1].adjoint()];
    let gamma = |i: usize, j: usize| if i == j { set.gamma_self / set.gamma0 } else { set.gamma12 / set.gamma0 };
    let delta = set.delta12 / set.gamma0;

    let mut h = &rais[0].matmul(&low[1]) + &rais[1].matmul(&low[0]);
    h = h.scale_real(delta);
    if frame == Frame::Lab {
        let w = set.omega0 / set.gamma0;
        for (l, r) in low.iter().zip(&rais) {
            h = &h + &r.matmul(l).scale_real(w);
        }
    }
    let mut k = h.scale(Complex64::new(0.0, -1.0));
    let mut jumps = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let g = gamma(i, j);
            if g == 0.0 {
                continue;
            }
            k = &k - &rais[i].matmul(&low[j]).scale_real(0.5 * g);
            jumps.push((g, id.kron(&low[j]), id.kron(&rais[i])));
        }
    }
    LindbladGenerator { k: id.kron(&k), jumps }
}

/// Dimensionless drive of the pair: `c_j(τ)` multiplying `σ_j⁺` in the pump
/// term, time `τ` in units of `1/γ₀`, rotating frame at ω₀.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Drive {
    amp: [f64; 2],
    tau_f: f64,
    centers: [f64; 2],
    /// `ω_c t_j`, radians.
    phase0: [f64; 2],
    /// `(ω_c − ω₀)/γ₀`.
    detuning: f64,
}

impl Drive {
    pub(crate) fn new(pulse: &PulseSpec, set: &CouplingSet) -> Self {
        let g0 = set.gamma0;
        let scale = match pulse.kind {
            PulseKind::Fock { .. } => 1.0,
            PulseKind::Coherent { mean_n } => mean_n.sqrt(),
        };
        let tau_f = pulse.tau_f * g0;
        let norm = (2.0 * std::f64::consts::PI * tau_f * tau_f).powf(-0.25);
        let carrier = pulse.carrier.unwrap_or(set.omega0);
        Drive {
            amp: [pulse.efficiencies[0] * scale * norm, pulse.efficiencies[1] * scale * norm],
            tau_f,
            centers: [pulse.arrival_times[0] * g0, pulse.arrival_times[1] * g0],
            phase0: [carrier * pulse.arrival_times[0], carrier * pulse.arrival_times[1]],
            detuning: (carrier - set.omega0) / g0,
        }
    }

    pub(crate) fn coefficients(&self, tau: f64) -> [Complex64; 2] {
        let mut c = [ZERO; 2];
        for (j, cj) in c.iter_mut().enumerate() {
            if self.amp[j] == 0.0 {
                continue;
            }
            let s = tau - self.centers[j];
            let env = self.amp[j] * (-s * s / (4.0 * self.tau_f * self.tau_f)).exp();
            *cj = Complex64::from_polar(env, self.phase0[j] - self.detuning * tau);
        }
        c
    }
}

/// Pump superoperator at one instant:
/// `P(ρ̃) = [τ̂₊ρ̃, A] + [A†, ρ̃τ̂₋]`, `A = Σⱼ cⱼ σⱼ⁺`.
#[derive(Debug, Clone)]
pub struct PumpGenerator {
    raise: ComplexMatrix,
    a: ComplexMatrix,
}

impl PumpGenerator {
    pub(crate) fn ladder_raise(pulse: &PulseSpec) -> ComplexMatrix {
        match pulse.kind {
            PulseKind::Fock { n } => ladder_raising(n).kron(&ComplexMatrix::identity(4)),
            PulseKind::Coherent { .. } => ComplexMatrix::identity(4),
        }
    }

    pub(crate) fn drive_operator(c: [Complex64; 2], ladder: usize) -> ComplexMatrix {
        let mut a = lowering(0).adjoint().scale(c[0]);
        a.axpy(c[1], &lowering(1).adjoint());
        ComplexMatrix::identity(ladder).kron(&a)
    }

    /// Half of the pump term; `P(ρ̃) = X + X†`.
    pub(crate) fn half(raise: &ComplexMatrix, a: &ComplexMatrix, rho: &ComplexMatrix) -> ComplexMatrix {
        let tr = raise.matmul(rho);
        &tr.matmul(a) - &a.matmul(&tr)
    }

    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let x = Self::half(&self.raise, &self.a, rho);
        &x + &x.adjoint()
    }
}

/// Pump superoperator at time `t` (seconds), in units of `γ₀`, rotating frame.
pub fn pump_generator(pulse: &PulseSpec, set: &CouplingSet, t: f64) -> PumpGenerator {
    let drive = Drive::new(pulse, set);
    let c = drive.coefficients(t * set.gamma0);
    PumpGenerator {
        raise: PumpGenerator::ladder_raise(pulse),
        a: PumpGenerator::drive_operator(c, pulse.kind.ladder_dim()),
    }
}
