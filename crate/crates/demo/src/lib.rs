//! wasm-bindgen bindings for the static page in `www/`.
//!
//! Each export has a plain Rust counterpart returning `Result<_, String>`,
//! which is what the native tests exercise.

use entforce::couplings::couplings;
use entforce::dynamics::{simulate, ObservableSeries, PulseKind};
use entforce::runner::{graphene_enhancement, Axis, ExperimentConfig, Scenario};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Debug, Serialize)]
pub struct CouplingCurve {
    pub r_um: Vec<f64>,
    /// γ₁₂/γ₀
    pub gamma12: Vec<f64>,
    /// δ₁₂/γ₀
    pub delta12: Vec<f64>,
    /// Newtons.
    pub force_element: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct Enhancement {
    pub z0_nm: f64,
    pub enhancement: f64,
    pub r_peak_um: f64,
    pub enhancement_at_r0: f64,
}

pub fn coupling_curve_impl(theta_deg: f64, r_min_um: f64, r_max_um: f64, points: usize) -> Result<CouplingCurve, String> {
    if !(r_min_um > 0.0 && r_max_um > r_min_um) || points < 2 {
        return Err("need 0 < r_min < r_max and at least 2 points".into());
    }
    let mut cfg = ExperimentConfig::defaults(Scenario::Custom);
    cfg.atom.theta_rad = theta_deg.to_radians();
    let mut out = CouplingCurve { r_um: vec![], gamma12: vec![], delta12: vec![], force_element: vec![] };
    for i in 0..points {
        let r = r_min_um + (r_max_um - r_min_um) * i as f64 / (points - 1) as f64;
        cfg.atom.r_um = r;
        let set = couplings(&cfg.pair()).map_err(|e| e.to_string())?;
        out.r_um.push(r);
        out.gamma12.push(set.gamma12 / set.gamma0);
        out.delta12.push(set.delta12 / set.gamma0);
        out.force_element.push(set.force_element);
    }
    Ok(out)
}

/// `photons` is the Fock number for `kind = "fock"` and the mean number for `"coherent"`.
pub fn transient_impl(r_um: f64, tau_f: f64, eta1: f64, eta2: f64, kind: &str, photons: f64) -> Result<ObservableSeries, String> {
    let mut cfg = ExperimentConfig::defaults(Scenario::Custom);
    cfg.atom.r_um = r_um;
    cfg.pulse.tau_f_inv_gamma0 = tau_f;
    cfg.pulse.eta = [eta1, eta2];
    cfg.pulse.kind = match kind {
        "fock" if photons >= 1.0 && photons.fract() == 0.0 && photons <= 8.0 => PulseKind::Fock { n: photons as usize },
        "fock" => return Err("Fock photon number must be an integer in 1..=8".into()),
        "coherent" => PulseKind::Coherent { mean_n: photons },
        other => return Err(format!("unknown pulse kind `{other}`")),
    };
    cfg.simulation.samples = 400;
    cfg.validate().map_err(|e| e.to_string())?;
    simulate(&cfg.pair(), &cfg.pulse_spec(), &cfg.simulation.options()).map_err(|e| e.to_string())
}

pub fn enhancement_impl(z0_nm: f64) -> Result<Enhancement, String> {
    let cfg = ExperimentConfig::defaults(Scenario::GrapheneSweep).at(Axis::Z0, z0_nm).map_err(|e| e.to_string())?;
    let (enhancement, r_peak_um, enhancement_at_r0) = graphene_enhancement(&cfg.pair()).map_err(|e| e.to_string())?;
    Ok(Enhancement { z0_nm, enhancement, r_peak_um, enhancement_at_r0 })
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<JsValue, JsError> {
    let v = r.map_err(|e| JsError::new(&e))?;
    serde_wasm_bindgen::to_value(&v).map_err(|e| JsError::new(&e.to_string()))
}

/// Vacuum couplings on a uniform separation grid.
#[wasm_bindgen(js_name = couplingCurve)]
pub fn coupling_curve(theta_deg: f64, r_min_um: f64, r_max_um: f64, points: usize) -> Result<JsValue, JsError> {
    to_js(coupling_curve_impl(theta_deg, r_min_um, r_max_um, points))
}

/// Force, concurrence and populations during and after one pulse.
#[wasm_bindgen]
pub fn transient(r_um: f64, tau_f: f64, eta1: f64, eta2: f64, kind: &str, photons: f64) -> Result<JsValue, JsError> {
    to_js(transient_impl(r_um, tau_f, eta1, eta2, kind, photons))
}

/// Peak force enhancement at height `z0_nm` above graphene.
#[wasm_bindgen(js_name = grapheneEnhancement)]
pub fn graphene_enhancement_at(z0_nm: f64) -> Result<JsValue, JsError> {
    to_js(enhancement_impl(z0_nm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn curve_has_requested_grid() {
        let c = coupling_curve_impl(90.0, 0.5, 2.0, 16).unwrap();
        assert_eq!(c.r_um.len(), 16);
        assert!((c.r_um[15] - 2.0).abs() < 1e-12);
        assert!(c.gamma12.iter().all(|g| g.abs() <= 1.0));
        assert!(coupling_curve_impl(90.0, 2.0, 1.0, 16).is_err());
    }

    #[test]
    fn single_photon_entangles() {
        let s = transient_impl(1.2, 0.63, FRAC_1_SQRT_2, FRAC_1_SQRT_2, "fock", 1.0).unwrap();
        let c = s.concurrence.iter().cloned().fold(0.0, f64::max);
        assert!(c > 0.5 && c <= 1.0, "{c}");
        assert!(transient_impl(1.2, 0.63, 0.5, 0.5, "fock", 1.5).is_err());
        assert!(transient_impl(1.2, 0.63, 0.5, 0.5, "squeezed", 1.0).is_err());
    }

    #[test]
    fn far_sheet_barely_enhances() {
        let e = enhancement_impl(500.0).unwrap();
        assert!(e.enhancement > 0.5 && e.enhancement < 2.0, "{}", e.enhancement);
    }
}
