//! Configuration, scenario dispatch and table output for the `simulate` CLI.

mod config;
mod table;

use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;

use crate::couplings::{couplings, vdw_force, vdw_potential, DipolePairConfig, Environment};
use crate::dynamics::{peak_metrics, simulate_with, ObservableSeries, PeakMetrics};
use crate::error::{Error, Result};
use crate::numerics::{fit_loglog_slope, linspace, logspace};

pub use config::{
    parse_config, AtomSettings, Axis, ExperimentConfig, Format, OutputSettings, PulseSettings, Scenario,
    SimulationSettings, Sweep,
};
pub use table::{emit, Column, ResultTable};

/// Reference separation for the graphene normalization, μm.
pub const GRAPHENE_R0_UM: f64 = 1.05;
/// Separation window searched for the graphene enhancement peak, μm.
pub const GRAPHENE_WINDOW_UM: (f64, f64) = (1.0, 1.1);
const GRAPHENE_WINDOW_POINTS: usize = 41;
const DEFAULT_Z0_NM: [f64; 5] = [10.0, 20.0, 50.0, 200.0, 500.0];

const SERIES_COLUMNS: [(&str, &str); 6] = [
    ("t", "1/gamma0"),
    ("force", "N"),
    ("concurrence", "1"),
    ("p1e", "1"),
    ("p2e", "1"),
    ("absorbed", "1"),
];
const PEAK_COLUMNS: [(&str, &str); 6] = [
    ("peak_force", "N"),
    ("t_force", "1/gamma0"),
    ("peak_concurrence", "1"),
    ("t_concurrence", "1/gamma0"),
    ("peak_p1e", "1"),
    ("t_p1e", "1/gamma0"),
];

/// Execute the computation mapped to `config.scenario`. Sweep points run on
/// the current rayon pool; rows always follow grid order.
pub fn run_scenario(config: &ExperimentConfig) -> Result<ResultTable> {
    config.validate()?;
    let mut table = match config.scenario {
        Scenario::Fig2 | Scenario::Fig3a | Scenario::Fig3b => time_series(config),
        Scenario::Fig4 => photon_statistics(config),
        Scenario::Fig5a => graphene_profiles(config),
        Scenario::Fig5b => eigenvalue_profiles(config),
        Scenario::VdwSweep => vdw_sweep(config),
        Scenario::GrapheneSweep => graphene_sweep(config),
        Scenario::Custom => match &config.sweep {
            Some(_) => peak_sweep(config),
            None => time_series(config),
        },
    }
    .map_err(|e| with_context(config.scenario, e))?;
    table.meta("scenario", config.scenario);
    table.meta("version", env!("CARGO_PKG_VERSION"));
    table.meta("config", serde_json::to_string(config).map_err(|e| Error::config(e.to_string()))?);
    Ok(table)
}

fn with_context(scenario: Scenario, e: Error) -> Error {
    match e {
        Error::Config(_) => e,
        other => Error::Scenario { scenario: scenario.to_string(), source: Box::new(other) },
    }
}

fn simulate_point(config: &ExperimentConfig) -> Result<ObservableSeries> {
    let set = couplings(&config.pair())?;
    simulate_with(&set, &config.pulse_spec(), &config.simulation.options())
}

fn sweep_points(config: &ExperimentConfig) -> Result<Vec<(Option<f64>, ExperimentConfig)>> {
    match &config.sweep {
        None => Ok(vec![(None, config.clone())]),
        Some(s) => s.values.iter().map(|&v| Ok((Some(v), config.at(s.axis, v)?))).collect(),
    }
}

fn time_series(config: &ExperimentConfig) -> Result<ResultTable> {
    let points = sweep_points(config)?;
    let runs: Vec<ObservableSeries> = points.par_iter().map(|(_, c)| simulate_point(c)).collect::<Result<_>>()?;
    let mut columns: Vec<(&str, &str)> = Vec::new();
    if let Some(s) = &config.sweep {
        columns.push((s.axis.name(), s.axis.unit()));
    }
    columns.extend(SERIES_COLUMNS);
    let mut table = ResultTable::new(&columns);
    for ((value, _), s) in points.iter().zip(&runs) {
        for i in 0..s.len() {
            let mut row: Vec<f64> = value.iter().copied().collect();
            row.extend([s.times[i], s.force[i], s.concurrence[i], s.p1e[i], s.p2e[i], s.absorbed_total[i]]);
            table.push(row);
        }
    }
    if let [s] = runs.as_slice() {
        let m = peak_metrics(s)?;
        table.meta("pulse_peak_inv_gamma0", s.pulse_peak);
        table.meta("peak_index_force", m.force.index);
        table.meta("peak_index_concurrence", m.concurrence.index);
        table.meta("peak_index_p1e", m.p1e.index);
    }
    let worst_trace = runs.iter().map(|s| s.max_trace_deviation).fold(0.0, f64::max);
    let worst_eig = runs.iter().map(|s| s.min_eigenvalue).fold(f64::INFINITY, f64::min);
    table.meta("max_trace_deviation", format!("{worst_trace:.3e}"));
    table.meta("min_eigenvalue", format!("{worst_eig:.3e}"));
    Ok(table)
}

fn peak_row(m: &PeakMetrics) -> [f64; 6] {
    [m.force.value, m.force.time, m.concurrence.value, m.concurrence.time, m.p1e.value, m.p1e.time]
}

fn peak_sweep(config: &ExperimentConfig) -> Result<ResultTable> {
    let points = sweep_points(config)?;
    let rows: Vec<PeakMetrics> =
        points.par_iter().map(|(_, c)| peak_metrics(&simulate_point(c)?)).collect::<Result<_>>()?;
    let mut columns: Vec<(&str, &str)> = config.sweep.iter().map(|s| (s.axis.name(), s.axis.unit())).collect();
    columns.extend(PEAK_COLUMNS);
    let mut table = ResultTable::new(&columns);
    for ((v, _), m) in points.iter().zip(&rows) {
        let mut row: Vec<f64> = v.iter().copied().collect();
        row.extend(peak_row(m));
        table.push(row);
    }
    Ok(table)
}

fn photon_statistics(config: &ExperimentConfig) -> Result<ResultTable> {
    let grid = |axis: Axis, default: Vec<f64>| match &config.sweep {
        Some(s) if s.axis == axis => s.values.clone(),
        _ => default,
    };
    let mut points = Vec::new();
    for n in grid(Axis::N, vec![1.0, 2.0, 3.0]) {
        points.push((0.0, n, config.at(Axis::N, n)?));
    }
    for m in grid(Axis::MeanN, vec![1.0, 3.0, 10.0]) {
        points.push((1.0, m, config.at(Axis::MeanN, m)?));
    }
    let rows: Vec<PeakMetrics> =
        points.par_iter().map(|(_, _, c)| peak_metrics(&simulate_point(c)?)).collect::<Result<_>>()?;
    let mut columns = vec![("coherent", "1"), ("photons", "1")];
    columns.extend(PEAK_COLUMNS);
    let mut table = ResultTable::new(&columns);
    for ((coherent, photons, _), m) in points.iter().zip(&rows) {
        let mut row = vec![*coherent, *photons];
        row.extend(peak_row(m));
        table.push(row);
    }
    Ok(table)
}

/// `F_{eg,ge}(r)` for every separation in `r_um`, in parallel.
fn force_elements(pair: &DipolePairConfig, r_um: &[f64]) -> Result<Vec<f64>> {
    r_um.par_iter().map(|&r| Ok(couplings(&pair.with_r(r * 1e-6))?.force_element)).collect()
}

fn vacuum_of(pair: &DipolePairConfig) -> DipolePairConfig {
    let mut v = *pair;
    v.environment = Environment::Vacuum;
    v.geometry.z0 = 0.0;
    v
}

fn axis_grid(config: &ExperimentConfig, axis: Axis) -> Option<Vec<f64>> {
    config.sweep.as_ref().filter(|s| s.axis == axis).map(|s| s.values.clone())
}

fn graphene_profiles(config: &ExperimentConfig) -> Result<ResultTable> {
    let r_grid = axis_grid(config, Axis::R).unwrap_or_else(|| linspace(0.9, 1.2, 61));
    let z0s = axis_grid(config, Axis::Z0).unwrap_or(DEFAULT_Z0_NM.to_vec());
    let vac = vacuum_of(&config.pair());
    let norm = couplings(&vac.with_r(GRAPHENE_R0_UM * 1e-6))?.force_element;
    let vac_curve = force_elements(&vac, &r_grid)?;
    let mut table =
        ResultTable::new(&[("z0", "nm"), ("r", "um"), ("normalized_force", "1"), ("vacuum_normalized_force", "1")]);
    for &z0 in &z0s {
        let curve = force_elements(&config.at(Axis::Z0, z0)?.pair(), &r_grid)?;
        for ((&r, f), fv) in r_grid.iter().zip(&curve).zip(&vac_curve) {
            table.push(vec![z0, r, f / norm, fv / norm]);
        }
    }
    table.meta("r0_um", GRAPHENE_R0_UM);
    table.meta("vacuum_force_at_r0_n", format!("{norm:.16e}"));
    Ok(table)
}

fn eigenvalue_profiles(config: &ExperimentConfig) -> Result<ResultTable> {
    let r_grid = axis_grid(config, Axis::R).unwrap_or_else(|| linspace(0.1, 2.0, 96));
    let thetas = axis_grid(config, Axis::Theta).unwrap_or_else(|| linspace(0.0, FRAC_PI_2, 19));
    let pair = config.pair();
    let mut table = ResultTable::new(&[("r", "um"), ("theta", "rad"), ("force_element", "N")]);
    for theta in [0.0, FRAC_PI_2] {
        let curve = force_elements(&DipolePairConfig { theta, ..pair }, &r_grid)?;
        for (&r, f) in r_grid.iter().zip(curve) {
            table.push(vec![r, theta, f]);
        }
    }
    let scan: Vec<f64> = thetas
        .par_iter()
        .map(|&theta| Ok(couplings(&DipolePairConfig { theta, ..pair })?.force_element))
        .collect::<Result<_>>()?;
    for (&theta, f) in thetas.iter().zip(scan) {
        table.push(vec![config.atom.r_um, theta, f]);
    }
    Ok(table)
}

fn vdw_sweep(config: &ExperimentConfig) -> Result<ResultTable> {
    let pair = vacuum_of(&config.pair());
    let k0 = pair.k0();
    let r_grid = axis_grid(config, Axis::R).unwrap_or_else(|| {
        logspace(0.01, 100.0, 81).into_iter().map(|x| x / k0 * 1e6).collect()
    });
    if r_grid.len() < 4 {
        return Err(Error::config("vdw-sweep needs at least four separations"));
    }
    let values: Vec<(f64, f64)> = r_grid
        .par_iter()
        .map(|&r| {
            let c = pair.with_r(r * 1e-6);
            Ok((vdw_potential(&c)?, vdw_force(&c)?))
        })
        .collect::<Result<_>>()?;
    let n = r_grid.len();
    let mut table =
        ResultTable::new(&[("r", "um"), ("k0r", "1"), ("potential", "J"), ("force", "N"), ("local_slope", "1")]);
    for i in 0..n {
        // least-squares slope of ln|F| against ln r over up to five neighbours
        let w = n.min(5);
        let lo = i.saturating_sub(2).min(n - w);
        let window: Vec<(f64, f64)> = (lo..lo + w).map(|j| (r_grid[j], values[j].1.abs())).collect();
        let slope = fit_loglog_slope(&window)?;
        table.push(vec![r_grid[i], k0 * r_grid[i] * 1e-6, values[i].0, values[i].1, slope]);
    }
    let region = |pred: &dyn Fn(f64) -> bool| -> Option<f64> {
        let pts: Vec<(f64, f64)> =
            r_grid.iter().zip(&values).filter(|(r, _)| pred(k0 * **r * 1e-6)).map(|(r, v)| (*r, v.1.abs())).collect();
        (pts.len() >= 4).then(|| fit_loglog_slope(&pts).ok()).flatten()
    };
    if let Some(s) = region(&|x| x <= 0.1 * (1.0 + 1e-12)) {
        table.meta("near_slope", format!("{s:.6}"));
    }
    if let Some(s) = region(&|x| x >= 10.0 * (1.0 - 1e-12)) {
        table.meta("far_slope", format!("{s:.6}"));
    }
    Ok(table)
}

/// Largest `|F_{eg,ge}|` over the separation window, relative to the vacuum
/// eigenvalue at `r₀`, with the separation where it occurs and the ratio at
/// `r₀` itself.
pub fn graphene_enhancement(pair: &DipolePairConfig) -> Result<(f64, f64, f64)> {
    let norm = couplings(&vacuum_of(pair).with_r(GRAPHENE_R0_UM * 1e-6))?.force_element.abs();
    let mut grid = linspace(GRAPHENE_WINDOW_UM.0, GRAPHENE_WINDOW_UM.1, GRAPHENE_WINDOW_POINTS);
    grid.push(GRAPHENE_R0_UM);
    let forces = force_elements(pair, &grid)?;
    let at_r0 = forces[forces.len() - 1].abs() / norm;
    let (i, best) = forces[..forces.len() - 1]
        .iter()
        .enumerate()
        .fold((0, 0.0), |(bi, bv), (i, f)| if f.abs() > bv { (i, f.abs()) } else { (bi, bv) });
    Ok((best / norm, grid[i], at_r0))
}

fn graphene_sweep(config: &ExperimentConfig) -> Result<ResultTable> {
    let z0s = axis_grid(config, Axis::Z0).unwrap_or(DEFAULT_Z0_NM.to_vec());
    let mut table =
        ResultTable::new(&[("z0", "nm"), ("enhancement", "1"), ("r_peak", "um"), ("enhancement_at_r0", "1")]);
    for &z0 in &z0s {
        let (e, r, at_r0) = graphene_enhancement(&config.at(Axis::Z0, z0)?.pair())?;
        table.push(vec![z0, e, r, at_r0]);
    }
    table.meta("r0_um", GRAPHENE_R0_UM);
    table.meta("window_um", format!("{}..{}", GRAPHENE_WINDOW_UM.0, GRAPHENE_WINDOW_UM.1));
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> ExperimentConfig {
        parse_config(text, None).unwrap()
    }

    #[test]
    fn fig2_columns_match_schema() {
        let c = cfg("scenario = \"fig2\"\n[sweep]\naxis = \"r\"\nvalues = [0.8, 1.2]\n[simulation]\nsamples = 50\n");
        let t = run_scenario(&c).unwrap();
        let names: Vec<&str> = t.columns.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["r", "t", "force", "concurrence", "p1e", "p2e", "absorbed"]);
        assert_eq!(t.rows.len(), 100);
        let csv = t.to_csv();
        let header = csv.lines().find(|l| !l.starts_with('#')).unwrap();
        assert_eq!(header.split(',').count(), names.len());
        assert!(csv.lines().filter(|l| !l.starts_with('#')).skip(1).all(|l| l.split(',').count() == names.len()));
    }

    #[test]
    fn fig3a_peaks_coincide() {
        let t = run_scenario(&cfg("scenario = \"fig3a\"\n")).unwrap();
        let idx = |k: &str| t.metadata[k].parse::<i64>().unwrap();
        assert!((idx("peak_index_force") - idx("peak_index_concurrence")).abs() <= 1);
        assert!((idx("peak_index_force") - idx("peak_index_p1e")).abs() <= 1);
    }

    #[test]
    fn custom_sweep_keeps_grid_order() {
        let c = cfg("[sweep]\naxis = \"tau_f\"\nvalues = [0.2, 0.6, 1.2]\n[simulation]\nsamples = 200\n");
        let t = run_scenario(&c).unwrap();
        assert_eq!(t.column("tau_f").unwrap(), [0.2, 0.6, 1.2]);
        assert_eq!(t.columns.len(), 7);
    }

    #[test]
    fn vdw_sweep_near_slope() {
        let c = cfg("scenario = \"vdw-sweep\"\n");
        let t = run_scenario(&c).unwrap();
        let near: f64 = t.metadata["near_slope"].parse().unwrap();
        assert!((near + 7.0).abs() < 0.2, "{near}");
        let x = t.column("k0r").unwrap();
        let s = t.column("local_slope").unwrap();
        assert!((s[0] + 7.0).abs() < 0.2 && (s[x.len() - 1] + 8.0).abs() < 0.3);
    }

    #[test]
    fn fig5b_contains_both_polarizations_and_scan() {
        let c = cfg("scenario = \"fig5b\"\n[sweep]\naxis = \"theta\"\nvalues = [0.0, 0.5, 1.0]\n");
        let t = run_scenario(&c).unwrap();
        assert_eq!(t.rows.len(), 2 * 96 + 3);
        let last = &t.rows[t.rows.len() - 3..];
        assert!(last.iter().all(|r| r[0] == 0.8));
    }

    #[test]
    fn errors_carry_scenario_context() {
        let err = with_context(Scenario::Fig3a, Error::Stiffness { time: 1.0, step: 1e-15 });
        assert!(err.to_string().starts_with("fig3a:"), "{err}");
        assert_eq!(err.exit_code(), 3);
        let cfg_err = with_context(Scenario::Fig3a, Error::Config("bad".into()));
        assert_eq!(cfg_err.exit_code(), 2);
    }
}
