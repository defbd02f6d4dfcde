//! TOML experiment configuration. Every dimensional key carries its unit in
//! the name (`r_um`, `tau_f_inv_gamma0`, ...).

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use toml::{Table, Value};

use crate::constants::{omega_from_ev, RB_D1_DIPOLE, RB_D1_OMEGA0};
use crate::couplings::{spontaneous_decay_rate, DipolePairConfig, Environment};
use crate::dynamics::{PulseKind, PulseSpec, SimulationOptions};
use crate::error::{Error, Result};
use crate::greens::Geometry;
use crate::numerics::{linspace, logspace, StepControl};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    Fig2,
    Fig3a,
    Fig3b,
    Fig4,
    Fig5a,
    Fig5b,
    VdwSweep,
    GrapheneSweep,
    Custom,
}

impl Scenario {
    pub const ALL: [Scenario; 9] = [
        Scenario::Fig2,
        Scenario::Fig3a,
        Scenario::Fig3b,
        Scenario::Fig4,
        Scenario::Fig5a,
        Scenario::Fig5b,
        Scenario::VdwSweep,
        Scenario::GrapheneSweep,
        Scenario::Custom,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Fig2 => "fig2",
            Scenario::Fig3a => "fig3a",
            Scenario::Fig3b => "fig3b",
            Scenario::Fig4 => "fig4",
            Scenario::Fig5a => "fig5a",
            Scenario::Fig5b => "fig5b",
            Scenario::VdwSweep => "vdw-sweep",
            Scenario::GrapheneSweep => "graphene-sweep",
            Scenario::Custom => "custom",
        }
    }

    /// Sweep axes the scenario accepts.
    pub fn axes(&self) -> &'static [Axis] {
        use Axis::*;
        match self {
            Scenario::Fig2 | Scenario::Fig3a | Scenario::Fig3b | Scenario::Custom => &[R, TauF, Theta, N, MeanN, Z0],
            Scenario::Fig4 => &[N, MeanN],
            Scenario::Fig5a => &[R, Z0],
            Scenario::Fig5b => &[R, Theta],
            Scenario::VdwSweep => &[R],
            Scenario::GrapheneSweep => &[Z0],
        }
    }

    fn uses_graphene(&self) -> bool {
        matches!(self, Scenario::Fig5a | Scenario::GrapheneSweep)
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL.into_iter().find(|sc| sc.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Scenario::ALL.iter().map(|s| s.name()).collect();
            Error::config(format!("unknown scenario `{s}`{}; valid: {}", suggest(s, &names), names.join(", ")))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    R,
    TauF,
    Theta,
    N,
    MeanN,
    Z0,
}

impl Axis {
    const ALL: [Axis; 6] = [Axis::R, Axis::TauF, Axis::Theta, Axis::N, Axis::MeanN, Axis::Z0];

    pub fn name(&self) -> &'static str {
        match self {
            Axis::R => "r",
            Axis::TauF => "tau_f",
            Axis::Theta => "theta",
            Axis::N => "n",
            Axis::MeanN => "mean_n",
            Axis::Z0 => "z0",
        }
    }

    /// Unit of the grid values, as written in column headers.
    pub fn unit(&self) -> &'static str {
        match self {
            Axis::R => "um",
            Axis::TauF => "1/gamma0",
            Axis::Theta => "rad",
            Axis::N | Axis::MeanN => "1",
            Axis::Z0 => "nm",
        }
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Axis::ALL.into_iter().find(|a| a.name() == s).ok_or_else(|| {
            let names: Vec<&str> = Axis::ALL.iter().map(|a| a.name()).collect();
            Error::config(format!("unknown sweep axis `{s}`{}; valid: {}", suggest(s, &names), names.join(", ")))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sweep {
    pub axis: Axis,
    /// Grid in the axis unit.
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AtomSettings {
    pub omega0_rad_per_s: f64,
    pub d0_c_m: f64,
    pub r_um: f64,
    pub theta_rad: f64,
    pub z0_nm: f64,
    pub environment: Environment,
}

impl AtomSettings {
    pub fn gamma0(&self) -> f64 {
        spontaneous_decay_rate(self.omega0_rad_per_s, self.d0_c_m)
    }

    pub fn pair(&self) -> DipolePairConfig {
        DipolePairConfig {
            omega0: self.omega0_rad_per_s,
            d0: self.d0_c_m,
            theta: self.theta_rad,
            geometry: Geometry { r: self.r_um * 1e-6, z0: self.z0_nm * 1e-9, phi0: 0.0 },
            environment: self.environment,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PulseSettings {
    pub kind: PulseKind,
    pub tau_f_inv_gamma0: f64,
    pub carrier_rad_per_s: Option<f64>,
    pub arrival_inv_gamma0: [f64; 2],
    pub eta: [f64; 2],
}

impl PulseSettings {
    pub fn spec(&self, gamma0: f64) -> PulseSpec {
        PulseSpec {
            kind: self.kind,
            tau_f: self.tau_f_inv_gamma0 / gamma0,
            carrier: self.carrier_rad_per_s,
            arrival_times: [self.arrival_inv_gamma0[0] / gamma0, self.arrival_inv_gamma0[1] / gamma0],
            efficiencies: self.eta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimulationSettings {
    pub samples: usize,
    pub t_span_inv_gamma0: Option<(f64, f64)>,
    pub ode_rel_tol: f64,
    pub ode_abs_tol: f64,
}

impl SimulationSettings {
    pub fn options(&self) -> SimulationOptions {
        let base = SimulationOptions::default();
        SimulationOptions {
            t_span: self.t_span_inv_gamma0,
            samples: self.samples,
            control: StepControl { rel_tol: self.ode_rel_tol, abs_tol: self.ode_abs_tol, ..base.control },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::config(format!("unknown output format `{s}`; valid: csv, json"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputSettings {
    pub path: Option<String>,
    pub format: Option<Format>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    pub atom: AtomSettings,
    pub pulse: PulseSettings,
    pub sweep: Option<Sweep>,
    pub simulation: SimulationSettings,
    pub output: OutputSettings,
}

impl ExperimentConfig {
    /// Defaults for `scenario` with nothing overridden.
    pub fn defaults(scenario: Scenario) -> Self {
        let graphene = scenario.uses_graphene();
        let atom = AtomSettings {
            omega0_rad_per_s: if graphene { omega_from_ev(0.7) } else { RB_D1_OMEGA0 },
            d0_c_m: RB_D1_DIPOLE,
            r_um: match scenario {
                Scenario::Fig5a | Scenario::GrapheneSweep => 1.05,
                Scenario::Fig5b => 0.8,
                _ => 1.2,
            },
            theta_rad: FRAC_PI_2,
            z0_nm: if graphene { 10.0 } else { 0.0 },
            environment: if graphene {
                Environment::Graphene {
                    fermi_energy_ev: 1.0,
                    relaxation_time_s: 1e-13,
                    temperature_k: 0.0,
                    substrate_permittivity: 2.5,
                }
            } else {
                Environment::Vacuum
            },
        };
        let pulse = PulseSettings {
            kind: PulseKind::Fock { n: 1 },
            tau_f_inv_gamma0: match scenario {
                Scenario::Fig3a => 0.62,
                Scenario::Fig3b => 0.75,
                Scenario::Fig4 => 0.3,
                _ => 0.63,
            },
            carrier_rad_per_s: None,
            arrival_inv_gamma0: [0.0; 2],
            eta: if scenario == Scenario::Fig3b { [1.0, 0.0] } else { [FRAC_1_SQRT_2; 2] },
        };
        let sweep = match scenario {
            Scenario::Fig2 => Some(Sweep { axis: Axis::R, values: linspace(0.75, 2.0, 26) }),
            _ => None,
        };
        ExperimentConfig {
            scenario,
            atom,
            pulse,
            sweep,
            simulation: SimulationSettings {
                samples: if scenario == Scenario::Fig2 { 200 } else { 2000 },
                t_span_inv_gamma0: None,
                ode_rel_tol: 1e-10,
                ode_abs_tol: 1e-13,
            },
            output: OutputSettings { path: None, format: None },
        }
    }

    pub fn pair(&self) -> DipolePairConfig {
        self.atom.pair()
    }

    pub fn pulse_spec(&self) -> PulseSpec {
        self.pulse.spec(self.atom.gamma0())
    }

    pub fn validate(&self) -> Result<()> {
        self.pair().validate().map_err(as_config)?;
        self.pulse_spec().validate().map_err(as_config)?;
        let s = &self.simulation;
        if s.samples < 2 {
            return Err(Error::config("simulation.samples must be at least 2"));
        }
        if let Some((a, b)) = s.t_span_inv_gamma0 {
            if !(a < b) {
                return Err(Error::config(format!("simulation window [{a}, {b}] is empty")));
            }
        }
        if !(s.ode_rel_tol > 0.0 && s.ode_abs_tol > 0.0) {
            return Err(Error::config("ODE tolerances must be positive"));
        }
        if let Some(sweep) = &self.sweep {
            if !self.scenario.axes().contains(&sweep.axis) {
                let valid: Vec<&str> = self.scenario.axes().iter().map(|a| a.name()).collect();
                return Err(Error::config(format!(
                    "sweep axis `{}` is not valid for scenario {}; valid: {}",
                    sweep.axis.name(),
                    self.scenario,
                    valid.join(", ")
                )));
            }
            if sweep.values.is_empty() {
                return Err(Error::config("sweep grid is empty"));
            }
            let up = sweep.values.windows(2).all(|w| w[1] > w[0]);
            let down = sweep.values.windows(2).all(|w| w[1] < w[0]);
            if !(up || down) {
                return Err(Error::config("sweep grid must be strictly monotone"));
            }
            if sweep.axis == Axis::Z0 && self.atom.environment == Environment::Vacuum {
                return Err(Error::config("a z0 sweep needs a graphene environment"));
            }
            for &v in &sweep.values {
                let point = self.at(sweep.axis, v)?;
                point.pair().validate().map_err(as_config)?;
                point.pulse_spec().validate().map_err(as_config)?;
            }
        }
        Ok(())
    }

    /// Copy with the sweep axis set to `value`.
    pub fn at(&self, axis: Axis, value: f64) -> Result<Self> {
        let mut c = self.clone();
        match axis {
            Axis::R => c.atom.r_um = value,
            Axis::TauF => c.pulse.tau_f_inv_gamma0 = value,
            Axis::Theta => c.atom.theta_rad = value,
            Axis::Z0 => c.atom.z0_nm = value,
            Axis::MeanN => c.pulse.kind = PulseKind::Coherent { mean_n: value },
            Axis::N => {
                if !(value >= 1.0 && value.fract() == 0.0) {
                    return Err(Error::config(format!("photon number must be a positive integer, got {value}")));
                }
                c.pulse.kind = PulseKind::Fock { n: value as usize };
            }
        }
        Ok(c)
    }
}

fn as_config(e: Error) -> Error {
    match e {
        Error::Domain(m) => Error::Config(m),
        other => other,
    }
}

/// Key, stem (the key without its unit suffix) and unit description.
type KeySpec = (&'static str, &'static str, &'static str);

const TOP_KEYS: &[KeySpec] = &[
    ("scenario", "scenario", ""),
    ("atom", "atom", ""),
    ("environment", "environment", ""),
    ("pulse", "pulse", ""),
    ("sweep", "sweep", ""),
    ("simulation", "simulation", ""),
    ("tolerances", "tolerances", ""),
    ("output", "output", ""),
];
const ATOM_KEYS: &[KeySpec] = &[
    ("omega0_rad_per_s", "omega0", "rad/s"),
    ("d0_c_m", "d0", "C·m"),
    ("r_um", "r", "micrometres"),
    ("theta_rad", "theta", "radians"),
    ("theta_deg", "theta", "degrees"),
    ("z0_nm", "z0", "nanometres"),
];
const ENV_KEYS: &[KeySpec] = &[
    ("kind", "kind", ""),
    ("fermi_energy_ev", "fermi_energy", "eV"),
    ("relaxation_time_s", "relaxation_time", "seconds"),
    ("temperature_k", "temperature", "kelvin"),
    ("substrate_permittivity", "substrate_permittivity", ""),
];
const PULSE_KEYS: &[KeySpec] = &[
    ("kind", "kind", ""),
    ("n", "n", ""),
    ("mean_n", "mean_n", ""),
    ("tau_f_inv_gamma0", "tau_f", "units of 1/gamma0"),
    ("carrier_rad_per_s", "carrier", "rad/s"),
    ("arrival_inv_gamma0", "arrival", "units of 1/gamma0"),
    ("eta", "eta", ""),
];
const SWEEP_KEYS: &[KeySpec] = &[
    ("axis", "axis", ""),
    ("values", "values", ""),
    ("from", "from", ""),
    ("to", "to", ""),
    ("points", "points", ""),
    ("spacing", "spacing", ""),
];
const SIM_KEYS: &[KeySpec] = &[
    ("samples", "samples", ""),
    ("t_start_inv_gamma0", "t_start", "units of 1/gamma0"),
    ("t_end_inv_gamma0", "t_end", "units of 1/gamma0"),
];
const TOL_KEYS: &[KeySpec] = &[("ode_rel", "ode_rel", ""), ("ode_abs", "ode_abs", "")];
const OUTPUT_KEYS: &[KeySpec] = &[("path", "path", ""), ("format", "format", "")];

/// ` (did you mean `x`?)` for the closest candidate, or nothing.
fn suggest(input: &str, candidates: &[&str]) -> String {
    candidates
        .iter()
        .map(|c| (strsim::jaro_winkler(input, c), *c))
        .filter(|(score, c)| *score > 0.8 || strsim::levenshtein(input, c) <= 2)
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, c)| format!(" (did you mean `{c}`?)"))
        .unwrap_or_default()
}

fn key_error(section: &str, key: &str, known: &[KeySpec]) -> Error {
    let path = if section.is_empty() { key.to_string() } else { format!("{section}.{key}") };
    // the stem is right but the unit suffix is not
    let stem_match = known
        .iter()
        .filter(|(_, stem, unit)| !unit.is_empty() && (key == *stem || key.starts_with(&format!("{stem}_"))))
        .max_by_key(|(_, stem, _)| stem.len());
    if let Some((_, stem, _)) = stem_match {
        let expected: Vec<String> =
            known.iter().filter(|(_, s, _)| s == stem).map(|(k, _, u)| format!("`{k}` ({u})")).collect();
        return Error::config(format!("unit mismatch for `{path}`: expected {}", expected.join(" or ")));
    }
    let mut best: Option<(f64, &str)> = None;
    for (k, stem, _) in known {
        for cand in [*k, *stem] {
            let score = strsim::jaro_winkler(key, cand);
            if (score > 0.8 || strsim::levenshtein(key, cand) <= 2) && best.is_none_or(|(s, _)| score > s) {
                best = Some((score, k));
            }
        }
    }
    let hint = best.map(|(_, k)| format!(" (did you mean `{k}`?)")).unwrap_or_default();
    let valid: Vec<&str> = known.iter().map(|(k, _, _)| *k).collect();
    Error::config(format!("unknown key `{path}`{hint}; valid keys: {}", valid.join(", ")))
}

struct Section<'a> {
    name: &'static str,
    table: Option<&'a Table>,
}

impl<'a> Section<'a> {
    fn new(name: &'static str, table: Option<&'a Table>, known: &[KeySpec]) -> Result<Self> {
        if let Some(t) = table {
            if let Some(k) = t.keys().find(|k| !known.iter().any(|(name, _, _)| name == k)) {
                return Err(key_error(name, k, known));
            }
        }
        Ok(Self { name, table })
    }

    fn get(&self, key: &str) -> Option<&'a Value> {
        self.table.and_then(|t| t.get(key))
    }

    fn type_error(&self, key: &str, want: &str) -> Error {
        Error::config(format!("`{}.{key}` must be {want}", self.name))
    }

    fn f64(&self, key: &str) -> Result<Option<f64>> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Float(x)) => Ok(Some(*x)),
            Some(Value::Integer(i)) => Ok(Some(*i as f64)),
            Some(_) => Err(self.type_error(key, "a number")),
        }
    }

    fn usize(&self, key: &str) -> Result<Option<usize>> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Integer(i)) if *i >= 0 => Ok(Some(*i as usize)),
            Some(_) => Err(self.type_error(key, "a non-negative integer")),
        }
    }

    fn str(&self, key: &str) -> Result<Option<&'a str>> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s)),
            Some(_) => Err(self.type_error(key, "a string")),
        }
    }

    fn f64_list(&self, key: &str) -> Result<Option<Vec<f64>>> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Array(a)) => a
                .iter()
                .map(|v| match v {
                    Value::Float(x) => Ok(*x),
                    Value::Integer(i) => Ok(*i as f64),
                    _ => Err(self.type_error(key, "an array of numbers")),
                })
                .collect::<Result<Vec<_>>>()
                .map(Some),
            Some(_) => Err(self.type_error(key, "an array of numbers")),
        }
    }

    /// A number applied to both atoms, or a two-element array.
    fn pair(&self, key: &str) -> Result<Option<[f64; 2]>> {
        if let Some(x) = self.f64(key).ok().flatten() {
            return Ok(Some([x, x]));
        }
        match self.f64_list(key)? {
            None => Ok(None),
            Some(v) if v.len() == 2 => Ok(Some([v[0], v[1]])),
            Some(_) => Err(self.type_error(key, "a number or a two-element array")),
        }
    }
}

fn subtable<'a>(doc: &'a Table, key: &str) -> Result<Option<&'a Table>> {
    match doc.get(key) {
        None => Ok(None),
        Some(Value::Table(t)) => Ok(Some(t)),
        Some(_) => Err(Error::config(format!("`{key}` must be a table"))),
    }
}

/// Parse and validate a configuration document; defaults fill every key not
/// given. `scenario` overrides the document's own `scenario` key.
pub fn parse_config(text: &str, scenario: Option<Scenario>) -> Result<ExperimentConfig> {
    let doc: Table = text.parse().map_err(|e: toml::de::Error| Error::config(e.to_string()))?;
    let top = Section::new("", Some(&doc), TOP_KEYS)?;
    let scenario = match (scenario, top.str("scenario")?) {
        (Some(s), _) => s,
        (None, Some(name)) => name.parse()?,
        (None, None) => Scenario::Custom,
    };
    let mut cfg = ExperimentConfig::defaults(scenario);

    let atom = Section::new("atom", subtable(&doc, "atom")?, ATOM_KEYS)?;
    if let Some(w) = atom.f64("omega0_rad_per_s")? {
        cfg.atom.omega0_rad_per_s = w;
    }
    if let Some(d) = atom.f64("d0_c_m")? {
        cfg.atom.d0_c_m = d;
    }
    if let Some(r) = atom.f64("r_um")? {
        cfg.atom.r_um = r;
    }
    match (atom.f64("theta_rad")?, atom.f64("theta_deg")?) {
        (Some(_), Some(_)) => return Err(Error::config("give only one of `atom.theta_rad` and `atom.theta_deg`")),
        (Some(t), None) => cfg.atom.theta_rad = t,
        (None, Some(t)) => cfg.atom.theta_rad = t.to_radians(),
        (None, None) => {}
    }
    if let Some(z) = atom.f64("z0_nm")? {
        cfg.atom.z0_nm = z;
    }

    let env = Section::new("environment", subtable(&doc, "environment")?, ENV_KEYS)?;
    let kind = env.str("kind")?;
    let wants_graphene = match kind {
        Some("vacuum") => false,
        Some("graphene") => true,
        Some(other) => {
            return Err(Error::config(format!(
                "unknown environment kind `{other}`{}; valid: vacuum, graphene",
                suggest(other, &["vacuum", "graphene"])
            )))
        }
        None => matches!(cfg.atom.environment, Environment::Graphene { .. }) || env.table.is_some_and(|t| !t.is_empty()),
    };
    if wants_graphene {
        let (mut ef, mut tau, mut temp, mut eps) = match cfg.atom.environment {
            Environment::Graphene { fermi_energy_ev, relaxation_time_s, temperature_k, substrate_permittivity } => {
                (fermi_energy_ev, relaxation_time_s, temperature_k, substrate_permittivity)
            }
            Environment::Vacuum => (1.0, 1e-13, 0.0, 2.5),
        };
        ef = env.f64("fermi_energy_ev")?.unwrap_or(ef);
        tau = env.f64("relaxation_time_s")?.unwrap_or(tau);
        temp = env.f64("temperature_k")?.unwrap_or(temp);
        eps = env.f64("substrate_permittivity")?.unwrap_or(eps);
        cfg.atom.environment = Environment::Graphene {
            fermi_energy_ev: ef,
            relaxation_time_s: tau,
            temperature_k: temp,
            substrate_permittivity: eps,
        };
    } else {
        if let Some(t) = env.table {
            if let Some(k) = t.keys().find(|k| k.as_str() != "kind") {
                return Err(Error::config(format!("`environment.{k}` only applies to kind = \"graphene\"")));
            }
        }
        cfg.atom.environment = Environment::Vacuum;
    }

    let pulse = Section::new("pulse", subtable(&doc, "pulse")?, PULSE_KEYS)?;
    let n = pulse.usize("n")?;
    let mean_n = pulse.f64("mean_n")?;
    cfg.pulse.kind = match (pulse.str("kind")?, n, mean_n) {
        (Some("fock") | None, Some(n), None) => PulseKind::Fock { n },
        (Some("fock"), None, None) => PulseKind::Fock { n: 1 },
        (Some("coherent") | None, None, Some(m)) => PulseKind::Coherent { mean_n: m },
        (Some("coherent"), None, None) => PulseKind::Coherent { mean_n: 1.0 },
        (None, None, None) => cfg.pulse.kind,
        (Some(k), _, _) if k != "fock" && k != "coherent" => {
            return Err(Error::config(format!(
                "unknown pulse kind `{k}`{}; valid: fock, coherent",
                suggest(k, &["fock", "coherent"])
            )))
        }
        _ => return Err(Error::config("`pulse.n` goes with kind = \"fock\" and `pulse.mean_n` with kind = \"coherent\"")),
    };
    if let Some(t) = pulse.f64("tau_f_inv_gamma0")? {
        cfg.pulse.tau_f_inv_gamma0 = t;
    }
    if let Some(w) = pulse.f64("carrier_rad_per_s")? {
        cfg.pulse.carrier_rad_per_s = Some(w);
    }
    if let Some(t) = pulse.pair("arrival_inv_gamma0")? {
        cfg.pulse.arrival_inv_gamma0 = t;
    }
    if let Some(eta) = pulse.pair("eta")? {
        cfg.pulse.eta = eta;
    }

    if let Some(t) = subtable(&doc, "sweep")? {
        cfg.sweep = Some(parse_sweep(&Section::new("sweep", Some(t), SWEEP_KEYS)?)?);
    }

    let sim = Section::new("simulation", subtable(&doc, "simulation")?, SIM_KEYS)?;
    if let Some(s) = sim.usize("samples")? {
        cfg.simulation.samples = s;
    }
    match (sim.f64("t_start_inv_gamma0")?, sim.f64("t_end_inv_gamma0")?) {
        (Some(a), Some(b)) => cfg.simulation.t_span_inv_gamma0 = Some((a, b)),
        (None, None) => {}
        _ => return Err(Error::config("give both `simulation.t_start_inv_gamma0` and `simulation.t_end_inv_gamma0`")),
    }
    let tol = Section::new("tolerances", subtable(&doc, "tolerances")?, TOL_KEYS)?;
    if let Some(r) = tol.f64("ode_rel")? {
        cfg.simulation.ode_rel_tol = r;
    }
    if let Some(a) = tol.f64("ode_abs")? {
        cfg.simulation.ode_abs_tol = a;
    }

    let out = Section::new("output", subtable(&doc, "output")?, OUTPUT_KEYS)?;
    cfg.output.path = out.str("path")?.map(str::to_string);
    cfg.output.format = out.str("format")?.map(str::parse).transpose()?;

    cfg.validate()?;
    Ok(cfg)
}

fn parse_sweep(s: &Section<'_>) -> Result<Sweep> {
    let axis: Axis = s.str("axis")?.ok_or_else(|| Error::config("`sweep.axis` is required"))?.parse()?;
    let values = match (s.f64_list("values")?, s.f64("from")?, s.f64("to")?, s.usize("points")?) {
        (Some(v), None, None, None) => v,
        (None, Some(a), Some(b), Some(n)) => {
            if n == 0 {
                return Err(Error::config("`sweep.points` must be positive"));
            }
            match s.str("spacing")?.unwrap_or("linear") {
                "linear" => linspace(a, b, n),
                "log" => {
                    if !(a > 0.0 && b > 0.0) {
                        return Err(Error::config("log spacing needs positive `from` and `to`"));
                    }
                    logspace(a, b, n)
                }
                other => return Err(Error::config(format!("unknown spacing `{other}`; valid: linear, log"))),
            }
        }
        _ => return Err(Error::config("give either `sweep.values` or all of `sweep.from`, `sweep.to`, `sweep.points`")),
    };
    Ok(Sweep { axis, values })
}
