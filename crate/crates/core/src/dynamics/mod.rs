//! Master-equation dynamics of the atom pair under Fock-state or coherent
//! pulses, in the extended-density-matrix picture, and the observables read
//! out along the trajectory.

mod entanglement;
mod generators;
mod pulse;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::couplings::{couplings, force_operator, CouplingSet, DipolePairConfig};
use crate::error::{Error, Result};
use crate::numerics::{integrate_ode_observed, linspace, ComplexMatrix, StepControl};

pub use entanglement::{check_density_matrix, concurrence, spin_flip};
pub use generators::{
    ladder_raising, lindblad_generator, lowering, pump_generator, Frame, LindbladGenerator, PumpGenerator, EE, EG,
    GE, GG,
};
pub use pulse::{gaussian_wavepacket, PulseKind, PulseSpec};

use generators::Drive;

/// `ρ̃` on (photon-record ladder) ⊗ (pair), ladder index 0 being the physical
/// block.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedState {
    pub matrix: ComplexMatrix,
    /// Units of 1/γ₀.
    pub time: f64,
}

impl ExtendedState {
    /// `Î ⊗ |gg⟩⟨gg|`.
    pub fn initial(ladder: usize, time: f64) -> Self {
        let gg = ComplexMatrix::unit(4, GG, GG);
        Self { matrix: ComplexMatrix::identity(ladder).kron(&gg), time }
    }

    pub fn ladder_dim(&self) -> usize {
        self.matrix.rows() / 4
    }

    /// Atomic state `ρ(t)`, the block selected by the projector onto ladder
    /// index 0.
    pub fn atomic_state(&self) -> ComplexMatrix {
        self.matrix.block(0, 0, 4)
    }

    /// `Tr[ρ̃ (P̂ ⊗ Ô)]` for a pair operator `op`.
    pub fn projected_expectation(&self, op: &ComplexMatrix) -> Complex64 {
        let mut p = ComplexMatrix::zeros(self.ladder_dim(), self.ladder_dim());
        p[(0, 0)] = Complex64::new(1.0, 0.0);
        self.matrix.matmul(&p.kron(op)).trace()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ObservableSeries {
    /// Units of 1/γ₀, measured from the start of the integration.
    pub times: Vec<f64>,
    /// Newtons.
    pub force: Vec<f64>,
    pub concurrence: Vec<f64>,
    pub p1e: Vec<f64>,
    pub p2e: Vec<f64>,
    /// Mean number of excitations stored in the pair, `P_1e + P_2e`.
    pub absorbed_total: Vec<f64>,
    /// Pulse peak (earliest arrival) on the `times` axis.
    pub pulse_peak: f64,
    #[serde(skip)]
    pub states: Vec<ComplexMatrix>,
    pub max_trace_deviation: f64,
    pub min_eigenvalue: f64,
    pub max_hermiticity_defect: f64,
}

impl ObservableSeries {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationOptions {
    /// Integration window in units of 1/γ₀ on the pulse clock (pulse peak at
    /// the arrival times). `None` runs from 6τ_f before the first arrival to
    /// 20/γ₀ after the last.
    pub t_span: Option<(f64, f64)>,
    pub samples: usize,
    pub control: StepControl,
}

impl Default for SimulationOptions {
    fn default() -> Self {
        Self {
            t_span: None,
            samples: 2000,
            control: StepControl { rel_tol: 1e-10, abs_tol: 1e-13, ..StepControl::default() },
        }
    }
}

const AUDIT_TOL: f64 = 1e-6;

/// Integrate the extended master equation for `config` driven by `pulse`.
pub fn simulate(config: &DipolePairConfig, pulse: &PulseSpec, options: &SimulationOptions) -> Result<ObservableSeries> {
    let set = couplings(config)?;
    simulate_with(&set, pulse, options)
}

/// As [`simulate`] with precomputed couplings.
pub fn simulate_with(set: &CouplingSet, pulse: &PulseSpec, options: &SimulationOptions) -> Result<ObservableSeries> {
    pulse.validate()?;
    if options.samples < 2 {
        return Err(Error::domain("at least two samples are required"));
    }
    let g0 = set.gamma0;
    let tau_f = pulse.tau_f * g0;
    let first = pulse.arrival_times[0].min(pulse.arrival_times[1]) * g0;
    let last = pulse.arrival_times[0].max(pulse.arrival_times[1]) * g0;
    let (t0, t1) = options.t_span.unwrap_or((first - 6.0 * tau_f, last + 20.0));

    let ladder = pulse.kind.ladder_dim();
    let lindblad = lindblad_generator(set, ladder, Frame::Rotating);
    let drive = Drive::new(pulse, set);
    let raise = PumpGenerator::ladder_raise(pulse);
    let k = lindblad.effective().clone();

    let rhs = |t: f64, rho: &ComplexMatrix| {
        let a = PumpGenerator::drive_operator(drive.coefficients(t), ladder);
        let y = &k.matmul(rho) + &PumpGenerator::half(&raise, &a, rho);
        let mut out = &y + &y.adjoint();
        lindblad.add_jumps(rho, &mut out);
        out
    };

    let sample_times = linspace(t0, t1, options.samples);
    let full_trace = ladder as f64;
    let audit = |t: f64, rho: &ComplexMatrix| -> Result<()> {
        let tr = rho.trace();
        let phys = rho.block(0, 0, 4).trace();
        let dev = (tr.re - full_trace).abs().max(tr.im.abs()).max((phys.re - 1.0).abs());
        if dev > AUDIT_TOL || !rho.is_finite() {
            return Err(Error::Integration {
                time: t,
                message: format!("trace audit failed: Tr ρ̃ = {tr}, physical block trace = {phys}"),
            });
        }
        Ok(())
    };
    let control = StepControl { max_step: options.control.max_step.min(0.5 * tau_f).min(0.5), ..options.control };
    let y0 = ExtendedState::initial(ladder, t0).matrix;
    let sol = integrate_ode_observed(rhs, y0, (t0, t1), &sample_times, &control, audit)?;

    let force_op = force_operator(set).matrix;
    let mut series = ObservableSeries {
        times: Vec::with_capacity(sol.times.len()),
        force: Vec::with_capacity(sol.times.len()),
        concurrence: Vec::with_capacity(sol.times.len()),
        p1e: Vec::with_capacity(sol.times.len()),
        p2e: Vec::with_capacity(sol.times.len()),
        absorbed_total: Vec::with_capacity(sol.times.len()),
        pulse_peak: first - t0,
        states: Vec::with_capacity(sol.times.len()),
        max_trace_deviation: 0.0,
        min_eigenvalue: f64::INFINITY,
        max_hermiticity_defect: 0.0,
    };
    for (&t, ext) in sol.times.iter().zip(&sol.states) {
        let mut rho = ext.block(0, 0, 4);
        let herm = rho.hermiticity_defect();
        let min_eig = rho.hermitian_eigenvalues()?[0];
        if min_eig < -AUDIT_TOL {
            let mut message = format!("positivity violated: smallest eigenvalue {min_eig:.3e}");
            if let Some(excess) = pump_excess(set, pulse) {
                message.push_str(&format!(
                    "; the pulse mode claims more decay than the pair provides \
                     (γ − γ₀ηηᵀ has eigenvalue {excess:.3e} γ₀ at γ₁₂ = {:.3} γ₀)",
                    set.gamma12 / g0
                ));
            }
            return Err(Error::Integration { time: t, message });
        }
        series.max_trace_deviation = series.max_trace_deviation.max((rho.trace() - 1.0).norm());
        series.min_eigenvalue = series.min_eigenvalue.min(min_eig);
        series.max_hermiticity_defect = series.max_hermiticity_defect.max(herm);
        // symmetrize away round-off before the nonlinear readouts
        rho = (&rho + &rho.adjoint()).scale_real(0.5);
        let p1 = rho[(EG, EG)].re + rho[(EE, EE)].re;
        let p2 = rho[(GE, GE)].re + rho[(EE, EE)].re;
        series.times.push(t - t0);
        series.force.push(rho.matmul(&force_op).trace().re);
        series.concurrence.push(concurrence(&rho)?);
        series.p1e.push(p1);
        series.p2e.push(p2);
        series.absorbed_total.push(p1 + p2);
        series.states.push(rho);
    }
    Ok(series)
}

/// Smallest eigenvalue of `γ − γ₀ηηᵀ` (units of γ₀) when negative. A Fock
/// pulse feeds the pair through `Σηⱼσⱼ⁻`; the decay matrix must contain that
/// channel or the extended master equation loses positivity.
fn pump_excess(set: &CouplingSet, pulse: &PulseSpec) -> Option<f64> {
    if !matches!(pulse.kind, PulseKind::Fock { .. }) {
        return None;
    }
    let g0 = set.gamma0;
    let [e1, e2] = pulse.efficiencies;
    let a = set.gamma_self / g0 - e1 * e1;
    let d = set.gamma_self / g0 - e2 * e2;
    let b = set.gamma12 / g0 - e1 * e2;
    let min = 0.5 * (a + d) - (0.25 * (a - d).powi(2) + b * b).sqrt();
    (min < 0.0).then_some(min)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Peak {
    /// Sample index of the grid maximum.
    pub index: usize,
    /// Parabolically refined time, units of 1/γ₀.
    pub time: f64,
    pub value: f64,
    /// The maximum sits on the first or last sample.
    pub at_boundary: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeakMetrics {
    /// Peak of `|F|`; `value` carries the sign of the force there.
    pub force: Peak,
    pub concurrence: Peak,
    pub p1e: Peak,
}

fn peak_of(times: &[f64], values: &[f64], signed: Option<&[f64]>) -> Peak {
    let (i, _) = values
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, &v)| if v > bv { (i, v) } else { (bi, bv) });
    let n = values.len();
    let sign = signed.map_or(1.0, |s| if s[i] < 0.0 { -1.0 } else { 1.0 });
    if i == 0 || i + 1 == n {
        log::warn!("series maximum at the window edge (sample {i}); the curve may be monotone");
        return Peak { index: i, time: times[i], value: sign * values[i], at_boundary: true };
    }
    let (y0, y1, y2) = (values[i - 1], values[i], values[i + 1]);
    let curv = y0 - 2.0 * y1 + y2;
    let (dt, v) = if curv < 0.0 {
        let off = 0.5 * (y0 - y2) / curv;
        (off, y1 - 0.25 * (y0 - y2) * off)
    } else {
        (0.0, y1)
    };
    let h = 0.5 * (times[i + 1] - times[i - 1]);
    Peak { index: i, time: times[i] + dt * h, value: sign * v, at_boundary: false }
}

pub fn peak_metrics(series: &ObservableSeries) -> Result<PeakMetrics> {
    if series.is_empty() {
        return Err(Error::domain("empty series"));
    }
    let abs_force: Vec<f64> = series.force.iter().map(|f| f.abs()).collect();
    Ok(PeakMetrics {
        force: peak_of(&series.times, &abs_force, Some(&series.force)),
        concurrence: peak_of(&series.times, &series.concurrence, None),
        p1e: peak_of(&series.times, &series.p1e, None),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    /// Pulse length in units of 1/γ₀.
    pub tau_f_gamma0: f64,
    pub metrics: PeakMetrics,
}

/// One simulation per pulse length in `tau_grid` (units of 1/γ₀), run in
/// parallel on the current rayon pool; rows keep the grid order.
pub fn sweep_pulse_length(
    config: &DipolePairConfig,
    template: &PulseSpec,
    tau_grid: &[f64],
    options: &SimulationOptions,
) -> Result<Vec<SweepRow>> {
    if tau_grid.iter().any(|&t| !(t > 0.0 && t.is_finite())) {
        return Err(Error::domain("pulse lengths must be positive"));
    }
    let set = couplings(config)?;
    tau_grid
        .par_iter()
        .map(|&tau| {
            let pulse = PulseSpec { tau_f: tau / set.gamma0, ..*template };
            let series = simulate_with(&set, &pulse, options)?;
            Ok(SweepRow { tau_f_gamma0: tau, metrics: peak_metrics(&series)? })
        })
        .collect()
}
