//! Dormand–Prince 5(4) integrator on matrix-valued states, with the
//! standard fourth-order continuous extension for dense output.

use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub initial_step: Option<f64>,
    pub max_step: f64,
    /// Steps shorter than this abort with a stiffness error.
    pub min_step: f64,
    pub max_steps: usize,
}

impl Default for StepControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            initial_step: None,
            max_step: f64::INFINITY,
            min_step: 1e-14,
            max_steps: 1_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OdeSolution {
    pub times: Vec<f64>,
    pub states: Vec<ComplexMatrix>,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// Linear combination `y + h·Σ cᵢ kᵢ`.
fn combine(y: &ComplexMatrix, h: f64, terms: &[(f64, &ComplexMatrix)]) -> ComplexMatrix {
    let mut out = y.clone();
    let dst = out.as_mut_slice();
    for &(c, k) in terms {
        if c == 0.0 {
            continue;
        }
        let s = h * c;
        for (d, v) in dst.iter_mut().zip(k.as_slice()) {
            *d += v * s;
        }
    }
    out
}

/// Integrate `dy/dt = rhs(t, y)` from `t_span.0` to `t_span.1`.
///
/// With non-empty `sample_times` the solution is reported exactly there
/// (dense output); otherwise every accepted step is reported.
pub fn integrate_ode<F>(
    rhs: F,
    y0: ComplexMatrix,
    t_span: (f64, f64),
    sample_times: &[f64],
    control: &StepControl,
) -> Result<OdeSolution>
where
    F: Fn(f64, &ComplexMatrix) -> ComplexMatrix,
{
    integrate_ode_observed(rhs, y0, t_span, sample_times, control, |_, _| Ok(()))
}

/// As [`integrate_ode`], calling `observe(t, y)` after every accepted step.
pub fn integrate_ode_observed<F, O>(
    rhs: F,
    y0: ComplexMatrix,
    t_span: (f64, f64),
    sample_times: &[f64],
    control: &StepControl,
    mut observe: O,
) -> Result<OdeSolution>
where
    F: Fn(f64, &ComplexMatrix) -> ComplexMatrix,
    O: FnMut(f64, &ComplexMatrix) -> Result<()>,
{
    let (t0, t1) = t_span;
    if !(t0.is_finite() && t1.is_finite() && t1 > t0) {
        return Err(Error::domain(format!("degenerate time span [{t0}, {t1}]")));
    }
    if !y0.is_finite() {
        return Err(Error::domain("initial state is not finite"));
    }
    if sample_times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("sample times must be strictly increasing"));
    }
    if let (Some(&first), Some(&last)) = (sample_times.first(), sample_times.last()) {
        let slack = 1e-12 * (t1 - t0);
        if first < t0 - slack || last > t1 + slack {
            return Err(Error::domain("sample times must lie inside the time span"));
        }
    }

    let span = t1 - t0;
    let mut times = Vec::new();
    let mut states = Vec::new();
    let mut next_sample = 0usize;
    let dense = !sample_times.is_empty();

    if dense {
        while next_sample < sample_times.len() && sample_times[next_sample] <= t0 {
            times.push(sample_times[next_sample]);
            states.push(y0.clone());
            next_sample += 1;
        }
    } else {
        times.push(t0);
        states.push(y0.clone());
    }

    let mut t = t0;
    let mut y = y0;
    let mut k1 = rhs(t, &y);
    let mut h = control.initial_step.unwrap_or(span / 100.0).min(control.max_step).min(span);
    let min_step = control.min_step.max(1e-15 * span);
    let mut accepted = 0usize;
    let mut rejected = 0usize;

    while t < t1 {
        if accepted + rejected >= control.max_steps {
            return Err(Error::Integration { time: t, message: format!("step budget of {} exhausted", control.max_steps) });
        }
        let last_step = t + h >= t1 - 1e-14 * span;
        if last_step {
            h = t1 - t;
        }
        if h < min_step && !last_step {
            return Err(Error::Stiffness { time: t, step: h });
        }

        let k2 = rhs(t + C2 * h, &combine(&y, h, &[(A21, &k1)]));
        let k3 = rhs(t + C3 * h, &combine(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = rhs(t + C4 * h, &combine(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = rhs(t + C5 * h, &combine(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
        let k6 = rhs(t + h, &combine(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]));
        let y_new = combine(&y, h, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
        let k7 = rhs(t + h, &y_new);
        let err = combine(
            &ComplexMatrix::zeros(y.rows(), y.cols()),
            h,
            &[(E1, &k1), (E3, &k3), (E4, &k4), (E5, &k5), (E6, &k6), (E7, &k7)],
        );

        let mut acc = 0.0;
        for ((e, a), b) in err.as_slice().iter().zip(y.as_slice()).zip(y_new.as_slice()) {
            let sc = control.abs_tol + control.rel_tol * a.norm().max(b.norm());
            acc += (e.norm() / sc).powi(2);
        }
        let err_norm = (acc / err.as_slice().len() as f64).sqrt();

        if !err_norm.is_finite() {
            rejected += 1;
            h *= 0.2;
            continue;
        }

        if err_norm <= 1.0 {
            let t_new = if last_step { t1 } else { t + h };
            if dense {
                // continuous extension on [t, t_new]
                let ydiff = &y_new - &y;
                let bspl = &k1.scale_real(h) - &ydiff;
                let r4 = &(&ydiff - &k7.scale_real(h)) - &bspl;
                let r5 = combine(
                    &ComplexMatrix::zeros(y.rows(), y.cols()),
                    h,
                    &[(D1, &k1), (D3, &k3), (D4, &k4), (D5, &k5), (D6, &k6), (D7, &k7)],
                );
                while next_sample < sample_times.len() && sample_times[next_sample] <= t_new + 1e-12 * span {
                    let ts = sample_times[next_sample];
                    let th = ((ts - t) / h).clamp(0.0, 1.0);
                    let th1 = 1.0 - th;
                    // y + θ(ydiff + (1−θ)(bspl + θ(r4 + (1−θ) r5)))
                    let mut inner = r5.scale_real(th1);
                    inner += &r4;
                    let mut mid = inner.scale_real(th);
                    mid += &bspl;
                    let mut outer = mid.scale_real(th1);
                    outer += &ydiff;
                    let mut ys = outer.scale_real(th);
                    ys += &y;
                    times.push(ts);
                    states.push(ys);
                    next_sample += 1;
                }
            }
            t = t_new;
            y = y_new;
            k1 = k7;
            accepted += 1;
            if !y.is_finite() {
                return Err(Error::Integration { time: t, message: "state became non-finite".into() });
            }
            observe(t, &y)?;
            if !dense {
                times.push(t);
                states.push(y.clone());
            }
        } else {
            rejected += 1;
        }

        let factor = if err_norm == 0.0 { 5.0 } else { (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0) };
        h = (h * factor).min(control.max_step);
    }

    Ok(OdeSolution { times, states, accepted_steps: accepted, rejected_steps: rejected })
}
