use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::free::free_dyadic;
use super::graphene::{graphene_conductivity, GrapheneModel};
use super::{Dyadic, Geometry, GreenSample, ZERO_DYADIC};
use crate::constants::{C, EPS0};
use crate::error::{Error, Result};
use crate::numerics::{bessel_j012, integrate_with, QuadOptions};

const I: Complex64 = Complex64::new(0.0, 1.0);
const Q_CAP: f64 = 1e4;
const TAIL: f64 = 1e-16;

/// Planar interface at z = 0: a conducting sheet on a half-space of
/// permittivity `ε`, seen from vacuum above.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SheetInterface {
    pub permittivity: Complex64,
    /// Dimensionless sheet coupling `α = σ/(2ε₀c)`.
    pub alpha: Complex64,
}

impl SheetInterface {
    pub fn bare(permittivity: Complex64) -> Self {
        Self { permittivity, alpha: Complex64::new(0.0, 0.0) }
    }

    pub fn with_conductivity(permittivity: Complex64, sigma: Complex64) -> Self {
        Self { permittivity, alpha: sigma / (2.0 * EPS0 * C) }
    }
}

/// Returns the branch of `√z` with non-negative imaginary part.
fn sqrt_upper(z: Complex64) -> Complex64 {
    let s = z.sqrt();
    if s.im < 0.0 {
        -s
    } else {
        s
    }
}

/// Fresnel coefficients `(r_s, r_p)` for in-plane wavenumber `q` (units of
/// k), with the sheet term included.
pub fn fresnel(q: Complex64, iface: &SheetInterface) -> (Complex64, Complex64) {
    let qz = sqrt_upper(1.0 - q * q);
    fresnel_qz(q, qz, iface)
}

fn fresnel_qz(q: Complex64, qz: Complex64, iface: &SheetInterface) -> (Complex64, Complex64) {
    let eps = iface.permittivity;
    let a2 = 2.0 * iface.alpha;
    let qzs = sqrt_upper(eps - q * q);
    let rs = (qz - qzs - a2) / (qz + qzs + a2);
    let rp = (eps * qz - qzs + a2 * qz * qzs) / (eps * qz + qzs + a2 * qz * qzs);
    (rs, rp)
}

/// Complex root of the p-wave denominator (the sheet plasmon), if one lies
/// beyond the light line.
pub fn plasmon_pole(iface: &SheetInterface) -> Option<Complex64> {
    if iface.alpha.norm() == 0.0 {
        return None;
    }
    let eps = iface.permittivity;
    let a2 = 2.0 * iface.alpha;
    let den = |q: Complex64| {
        let qz = sqrt_upper(1.0 - q * q);
        let qzs = sqrt_upper(eps - q * q);
        eps * qz + qzs + a2 * qz * qzs
    };
    // quasi-static estimate: q_z ≈ iq, q_z' ≈ iq
    let mut q = I * (eps + 1.0) / a2;
    if q.re < 0.0 {
        q = -q;
    }
    for _ in 0..100 {
        let d = den(q);
        let h = 1e-7 * q.norm().max(1.0);
        let dd = (den(q + h) - den(q - h)) / (2.0 * h);
        if dd.norm() == 0.0 || !dd.is_finite() {
            return None;
        }
        let step = d / dd;
        q -= step;
        if step.norm() < 1e-13 * q.norm() {
            break;
        }
    }
    (den(q).norm() < 1e-8 * (eps.norm() + 1.0) * q.norm().max(1.0) && q.re > 1.0 && q.is_finite()).then_some(q)
}

/// Upper limit in `t` (with `q = cosh t`) beyond which
/// `e^{−h√(q²−1)}·q⁴ < 1e-16`, capped at `q = 1e4`.
fn evanescent_cutoff(h: f64) -> f64 {
    let t_cap = Q_CAP.acosh();
    let log_tail = |t: f64| -h * t.sinh() + 4.0 * t.cosh().ln() - TAIL.ln();
    if log_tail(t_cap) > 0.0 {
        return t_cap;
    }
    let (mut lo, mut hi) = (0.0, t_cap);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if log_tail(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// The six independent Sommerfeld integrals
/// `[S₀, S₂, P₀, P₂, P₁, P_z]` at one point of the path.
fn kernel(q: f64, qz: Complex64, jac: Complex64, jac_over_qz: Complex64, rho: f64, h: f64, iface: &SheetInterface) -> [Complex64; 6] {
    let (rs, rp) = fresnel_qz(Complex64::new(q, 0.0), qz, iface);
    let [j0, j1, j2] = bessel_j012(q * rho);
    let e = (I * qz * h).exp();
    let s = q * rs * e * jac_over_qz;
    let p = q * rp * e * jac;
    [
        s * j0,
        s * j2,
        p * qz * j0,
        p * qz * j2,
        p * q * j1,
        q * q * q * rp * e * j0 * jac_over_qz,
    ]
}

fn assemble(v: &[Complex64; 6], phi0: f64, k: f64) -> Dyadic {
    let [s0, s2, p0, p2, p1, pz] = *v;
    let (s2p, c2p) = (2.0 * phi0).sin_cos();
    let (sp, cp) = phi0.sin_cos();
    let mut g = ZERO_DYADIC;
    g[0][0] = s0 + s2 * c2p - p0 + p2 * c2p;
    g[1][1] = s0 - s2 * c2p - p0 - p2 * c2p;
    g[0][1] = (s2 + p2) * s2p;
    g[1][0] = g[0][1];
    g[0][2] = -2.0 * I * p1 * cp;
    g[1][2] = -2.0 * I * p1 * sp;
    g[2][0] = 2.0 * I * p1 * cp;
    g[2][1] = 2.0 * I * p1 * sp;
    g[2][2] = 2.0 * pz;
    let pre = I * k / (8.0 * PI);
    for row in g.iter_mut() {
        for z in row.iter_mut() {
            *z *= pre;
        }
    }
    g
}

/// Reflected part `G_R(x₂, x₁, ω)` for two points at common height `z0`
/// above `iface`, separated in-plane by `r` at azimuth `phi0`. `r = 0` gives
/// the self term used for local decay rates.
///
/// The `q` integral runs in two panels: `q = sin t` on the propagating part
/// and `q = cosh t` on the evanescent part, which removes the `1/q_z` branch
/// singularity at `q = 1`.
pub fn reflected_part(geom: &Geometry, omega: f64, iface: &SheetInterface) -> Result<Dyadic> {
    if !(geom.z0 > 0.0 && geom.z0.is_finite()) {
        return Err(Error::domain(format!("height above the interface must be positive, got {}", geom.z0)));
    }
    if !(geom.r >= 0.0 && geom.r.is_finite()) {
        return Err(Error::domain(format!("separation must be non-negative, got {}", geom.r)));
    }
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::domain(format!("frequency must be positive, got {omega}")));
    }
    let k = omega / C;
    let rho = k * geom.r;
    let h = 2.0 * k * geom.z0;
    if iface.alpha.norm() == 0.0 && iface.permittivity == Complex64::new(1.0, 0.0) {
        return Ok(ZERO_DYADIC);
    }

    let opts = QuadOptions { rel_tol: 1e-10, abs_tol: 1e-14, max_evaluations: 2_000_000, ..QuadOptions::default() };

    let propagating = integrate_with(
        |t: f64| {
            let (q, c) = (t.sin(), t.cos());
            kernel(q, Complex64::new(c, 0.0), Complex64::new(c, 0.0), Complex64::new(1.0, 0.0), rho, h, iface)
        },
        0.0,
        FRAC_PI_2,
        &[],
        &opts,
    )?;

    let pole = plasmon_pole(iface);
    let t_max = evanescent_cutoff(h);
    let mut breaks = Vec::new();
    if iface.permittivity.re > 1.0 {
        breaks.push(iface.permittivity.re.sqrt().acosh());
    }
    if let Some(qp) = pole {
        let w = qp.im.abs().max(1e-6 * qp.re);
        for m in [-20.0, -5.0, -1.0, 0.0, 1.0, 5.0, 20.0] {
            let q = qp.re + m * w;
            if q > 1.0 {
                breaks.push(q.acosh());
            }
        }
    }
    let evanescent = integrate_with(
        |t: f64| {
            let (q, sh) = (t.cosh(), t.sinh());
            let qz = Complex64::new(0.0, sh);
            kernel(q, qz, Complex64::new(sh, 0.0), Complex64::new(0.0, -1.0), rho, h, iface)
        },
        0.0,
        t_max,
        &breaks,
        &opts,
    )
    .map_err(|e| match e {
        Error::Convergence { partial, abs_error, evaluations, .. } => Error::Convergence {
            partial,
            abs_error,
            evaluations,
            context: match pole {
                Some(q) => format!("; plasmon pole at q/k = {:.6} {:+.6}i", q.re, q.im),
                None => "; no plasmon pole located".to_string(),
            },
        },
        other => other,
    })?;

    let mut total = [Complex64::new(0.0, 0.0); 6];
    for (i, t) in total.iter_mut().enumerate() {
        *t = propagating.value[i] + evanescent.value[i];
    }
    Ok(assemble(&total, geom.phi0, k))
}

/// Full Green tensor above a graphene-coated substrate.
pub fn reflected_green(geom: &Geometry, omega: f64, model: &GrapheneModel) -> Result<GreenSample> {
    let sigma = graphene_conductivity(model, omega)?;
    let iface = SheetInterface::with_conductivity(model.substrate_permittivity, sigma);
    interface_green(geom, omega, &iface)
}

/// Free plus reflected tensor for an arbitrary sheet interface.
pub fn interface_green(geom: &Geometry, omega: f64, iface: &SheetInterface) -> Result<GreenSample> {
    if geom.r == 0.0 {
        return Err(Error::Coincidence);
    }
    let reflected = reflected_part(geom, omega, iface)?;
    let free = free_dyadic(Complex64::new(omega / C, 0.0), geom.displacement());
    Ok(GreenSample::with_parts(Complex64::new(omega, 0.0), free, reflected))
}
