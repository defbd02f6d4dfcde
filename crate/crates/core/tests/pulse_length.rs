//! Which pulse length maximizes each observable, for homogeneous and local pumping.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use entforce::couplings::DipolePairConfig;
use entforce::dynamics::{sweep_pulse_length, PulseSpec, SimulationOptions, SweepRow};
use entforce::numerics::linspace;

fn argmax(rows: &[SweepRow], f: impl Fn(&SweepRow) -> f64) -> f64 {
    rows.iter().max_by(|a, b| f(a).total_cmp(&f(b))).unwrap().tau_f_gamma0
}

fn scan(eta: [f64; 2]) -> (f64, f64, f64) {
    let cfg = DipolePairConfig::rubidium(1.2e-6, FRAC_PI_2);
    let grid = linspace(0.1, 2.0, 20);
    let opts = SimulationOptions { samples: 1000, ..Default::default() };
    let rows = sweep_pulse_length(&cfg, &PulseSpec::single_photon(1.0, eta), &grid, &opts).unwrap();
    (
        argmax(&rows, |r| r.metrics.force.value.abs()),
        argmax(&rows, |r| r.metrics.concurrence.value),
        argmax(&rows, |r| r.metrics.p1e.value),
    )
}

#[test]
fn homogeneous_optimum_is_shared() {
    let (f, c, p) = scan([FRAC_1_SQRT_2; 2]);
    assert_eq!(f, c);
    assert_eq!(f, p);
}

#[test]
fn local_force_optimum_follows_concurrence_not_population() {
    let (f, c, p) = scan([1.0, 0.0]);
    assert_eq!(f, c);
    assert!(p < f - 0.2, "p1e optimum {p} vs force optimum {f}");
}
