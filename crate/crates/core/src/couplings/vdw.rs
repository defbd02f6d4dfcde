use std::f64::consts::PI;

use num_complex::Complex64;

use super::{DipolePairConfig, Environment};
use crate::constants::{EPS0, HBAR, MU0};
use crate::error::{Error, Result};
use crate::greens::{imaginary_freq_green, Geometry};
use crate::numerics::{integrate_with, QuadOptions};

fn check(config: &DipolePairConfig) -> Result<()> {
    config.validate()?;
    if config.environment != Environment::Vacuum {
        return Err(Error::domain("the van der Waals interaction is only available in vacuum"));
    }
    Ok(())
}

fn options(x: f64) -> QuadOptions {
    // the integrand decays on the scale s ~ min(1, 1/(2x))
    QuadOptions { rel_tol: 1e-11, abs_tol: 1e-300, scale: 1.0 / (1.0 + 2.0 * x), ..QuadOptions::default() }
}

/// Ground-state potential
/// `U = −(2μ₀²d₀⁴/9πħ)∫₀^∞ du ω₀²u⁴/(ω₀²+u²)² Tr[G(iu)G(iu)]`
/// with isotropically averaged dipoles, in joules.
pub fn vdw_potential(config: &DipolePairConfig) -> Result<f64> {
    check(config)?;
    let w0 = config.omega0;
    let geom = Geometry::free(config.geometry.r);
    let x = config.k0() * config.geometry.r;
    // u = ω₀ s
    let integrand = |s: f64| {
        let u = w0 * s;
        let g = match imaginary_freq_green(&geom, u) {
            Ok(g) => g.tensor,
            Err(_) => return Complex64::new(f64::NAN, 0.0),
        };
        let mut tr = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                tr += (g[i][j] * g[j][i]).re;
            }
        }
        let w = w0 * w0 * u.powi(4) / (w0 * w0 + u * u).powi(2);
        Complex64::new(w * tr * w0, 0.0)
    };
    // s = 0 is never sampled by the Kronrod nodes
    let res = integrate_with(integrand, 0.0, f64::INFINITY, &[1.0], &options(x))?;
    if !res.value.re.is_finite() {
        return Err(Error::domain("non-finite van der Waals integrand"));
    }
    Ok(-(2.0 * MU0 * MU0 * config.d0.powi(4) / (9.0 * HBAR * PI)) * res.value.re)
}

/// `h(y) = (1+y)² + ½(1+y+y²)²`, the radial shape of `Tr[G(iu)G(iu)]`.
fn shape(y: f64) -> (f64, f64) {
    let a = 1.0 + y;
    let b = 1.0 + y + y * y;
    (a * a + 0.5 * b * b, 2.0 * a + b * (1.0 + 2.0 * y))
}

/// `F = −∂U/∂r` in newtons, differentiating the integrand analytically.
/// Negative values are attractive.
pub fn vdw_force(config: &DipolePairConfig) -> Result<f64> {
    check(config)?;
    let r = config.geometry.r;
    let x = config.k0() * r;
    // U = −K I(k₀r)/r⁶, I(x) = ∫ds e^{−2sx} h(sx)/(1+s²)²
    let k = config.d0.powi(4) / (18.0 * PI.powi(3) * HBAR * EPS0 * EPS0 * config.omega0);
    let integrand = |s: f64| {
        let y = s * x;
        let (h, dh) = shape(y);
        let v = (-2.0 * y).exp() * (-6.0 * h + y * (dh - 2.0 * h)) / (1.0 + s * s).powi(2);
        Complex64::new(v, 0.0)
    };
    let res = integrate_with(integrand, 0.0, f64::INFINITY, &[1.0], &options(x))?;
    Ok(k * res.value.re / r.powi(7))
}
