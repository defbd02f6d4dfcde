use std::f64::consts::PI;

use num_complex::Complex64;

use super::{Dyadic, Geometry, GreenSample, ZERO_DYADIC};
use crate::constants::C;
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Free-space dyadic `G₀(x₂, x₁, ω)` for a displacement `rvec` (meters) and
/// complex wavenumber `k = ω/c`.
///
/// With unit vector `ê = rvec/r`:
/// `G₀ = G⊥ (I − êê) + G∥ êê`,
/// `G∥ = (1 − ikr) e^{ikr} / (2πk²r³)`,
/// `G⊥ = −(1 − ikr − k²r²) e^{ikr} / (4πk²r³)`.
pub fn free_dyadic(k: Complex64, rvec: [f64; 3]) -> Dyadic {
    let r = (rvec[0] * rvec[0] + rvec[1] * rvec[1] + rvec[2] * rvec[2]).sqrt();
    let e = [rvec[0] / r, rvec[1] / r, rvec[2] / r];
    let kr = k * r;
    let phase = (I * kr).exp();
    let denom = k * k * r * r * r;
    let g_par = (1.0 - I * kr) * phase / (2.0 * PI * denom);
    let g_perp = -(1.0 - I * kr - kr * kr) * phase / (4.0 * PI * denom);
    let mut g = ZERO_DYADIC;
    for (i, row) in g.iter_mut().enumerate() {
        for (j, gij) in row.iter_mut().enumerate() {
            let delta = if i == j { 1.0 } else { 0.0 };
            *gij = g_perp * delta + (g_par - g_perp) * (e[i] * e[j]);
        }
    }
    g
}

fn check(geom: &Geometry) -> Result<()> {
    if geom.r == 0.0 {
        return Err(Error::Coincidence);
    }
    if !(geom.r > 0.0 && geom.r.is_finite()) {
        return Err(Error::domain(format!("separation must be positive and finite, got {}", geom.r)));
    }
    Ok(())
}

/// Free-space Green tensor at real angular frequency `omega` (rad/s).
pub fn free_space_green(geom: &Geometry, omega: f64) -> Result<GreenSample> {
    check(geom)?;
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::domain(format!("frequency must be positive, got {omega}")));
    }
    let g = free_dyadic(Complex64::new(omega / C, 0.0), geom.displacement());
    Ok(GreenSample::free(Complex64::new(omega, 0.0), g))
}

/// `Im G(x, x, ω)` for every diagonal component: the finite part of the
/// coincidence limit, `ω / 6πc`.
pub fn coincidence_im_green(omega: f64) -> f64 {
    omega / (6.0 * PI * C)
}

/// Free-space Green tensor at imaginary frequency `ω = iu`, `u > 0`. Every
/// component is real; imaginary parts are stored as exact zeros.
pub fn imaginary_freq_green(geom: &Geometry, u: f64) -> Result<GreenSample> {
    check(geom)?;
    if !(u > 0.0 && u.is_finite()) {
        return Err(Error::domain(format!("imaginary frequency must be positive, got {u}")));
    }
    let [g_par, g_perp] = imaginary_freq_components(geom.r, u);
    let rvec = geom.displacement();
    let e = [rvec[0] / geom.r, rvec[1] / geom.r, rvec[2] / geom.r];
    let mut g = ZERO_DYADIC;
    for (i, row) in g.iter_mut().enumerate() {
        for (j, gij) in row.iter_mut().enumerate() {
            let delta = if i == j { 1.0 } else { 0.0 };
            *gij = Complex64::new(g_perp * delta + (g_par - g_perp) * e[i] * e[j], 0.0);
        }
    }
    Ok(GreenSample::free(Complex64::new(0.0, u), g))
}

/// `[G∥(iu), G⊥(iu)]` along and across the axis, in 1/m:
/// `G∥ = −c²(1 + y)e^{−y} / (2πu²r³)`, `G⊥ = c²(1 + y + y²)e^{−y} / (4πu²r³)`,
/// `y = ur/c`.
pub fn imaginary_freq_components(r: f64, u: f64) -> [f64; 2] {
    let y = u * r / C;
    let pre = C * C / (u * u * r * r * r) * (-y).exp();
    [-pre * (1.0 + y) / (2.0 * PI), pre * (1.0 + y + y * y) / (4.0 * PI)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn on_axis_free_space_is_diagonal() {
        let g = free_space_green(&Geometry::free(1e-6), 2e15).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(g.tensor[i][j], Complex64::new(0.0, 0.0));
                }
            }
            assert_eq!(g.reflected_part[i][i], Complex64::new(0.0, 0.0));
        }
        assert_eq!(g.tensor[1][1], g.tensor[2][2]);
    }

    #[test]
    fn near_coincidence_imaginary_part() {
        let omega = 2.0e15;
        let r = 1e-4 * C / omega;
        let g = free_space_green(&Geometry::free(r), omega).unwrap();
        let want = coincidence_im_green(omega);
        for i in 0..3 {
            assert!((g.tensor[i][i].im - want).abs() < 1e-6 * want, "component {i}");
        }
    }

    #[test]
    fn half_wave_phase_flip() {
        // at kr = π the phase factor is exactly −1
        let omega = 1.0e15;
        let k = omega / C;
        let r = PI / k;
        let g = free_space_green(&Geometry::free(r), omega).unwrap();
        let kr = PI;
        let par = -(Complex64::new(1.0, -kr)) / (2.0 * PI * k * k * r.powi(3));
        let perp = (Complex64::new(1.0 - kr * kr, -kr)) / (4.0 * PI * k * k * r.powi(3));
        assert!(rel(g.tensor[0][0], par) < 1e-14);
        assert!(rel(g.tensor[1][1], perp) < 1e-14);
    }

    #[test]
    fn coincidence_values() {
        assert!((coincidence_im_green(6.0 * PI * C) - 1.0).abs() < 1e-15);
        assert_eq!(coincidence_im_green(0.0), 0.0);
    }

    #[test]
    fn imaginary_frequency_is_real() {
        for &ur in &[0.1, 1.0, 10.0] {
            let r = 2e-7;
            let g = imaginary_freq_green(&Geometry::free(r), ur * C / r).unwrap();
            for row in &g.tensor {
                for z in row {
                    assert_eq!(z.im, 0.0);
                }
            }
        }
    }

    #[test]
    fn imaginary_frequency_static_limit() {
        // u → 0: G∥ → −c²/(2πu²r³), the r⁻³ term of the continued closed form
        let r = 1e-6;
        let u = 1e-6 * C / r;
        let g = imaginary_freq_green(&Geometry::free(r), u).unwrap();
        let leading = -C * C / (2.0 * PI * u * u * r.powi(3));
        assert!((g.tensor[0][0].re / leading - 1.0).abs() < 1e-11);
    }

    #[test]
    fn imaginary_frequency_matches_continuation() {
        let r = 3e-7;
        let u = 2.0 * C / r;
        let g = imaginary_freq_green(&Geometry::free(r), u).unwrap();
        let cont = free_dyadic(Complex64::new(0.0, u / C), [r, 0.0, 0.0]);
        for i in 0..3 {
            assert!((g.tensor[i][i] - cont[i][i]).norm() <= 1e-10 * cont[i][i].norm());
        }
    }

    /// `Im G = (k/16π²)∫dΩ (I − k̂k̂) e^{ik k̂·R}`, reduced to a polar integral
    /// about the separation axis.
    fn mode_expansion_im(k: f64, r: f64) -> [f64; 2] {
        use crate::numerics::integrate_adaptive;
        let x = k * r;
        let par = integrate_adaptive(|u| Complex64::new((1.0 - u * u) * (x * u).cos(), 0.0), -1.0, 1.0, 1e-13, 1e-16)
            .unwrap()
            .value
            .re;
        let perp = integrate_adaptive(|u| Complex64::new(0.5 * (1.0 + u * u) * (x * u).cos(), 0.0), -1.0, 1.0, 1e-13, 1e-16)
            .unwrap()
            .value
            .re;
        let pre = k / (16.0 * PI * PI) * 2.0 * PI;
        [pre * par, pre * perp]
    }

    /// `Re G` from `(I + ∇∇/k²) cos(kR)/(4πR)` with five-point differences.
    fn gradient_re(k: f64, r: f64) -> [f64; 2] {
        let g = |x: f64| (k * x).cos() / (4.0 * PI * x);
        let h = 1e-3 * r;
        let d1 = (g(r - 2.0 * h) - 8.0 * g(r - h) + 8.0 * g(r + h) - g(r + 2.0 * h)) / (12.0 * h);
        let d2 = (-g(r - 2.0 * h) + 16.0 * g(r - h) - 30.0 * g(r) + 16.0 * g(r + h) - g(r + 2.0 * h)) / (12.0 * h * h);
        [g(r) + d2 / (k * k), g(r) + d1 / (r * k * k)]
    }

    #[test]
    fn matches_mode_expansion() {
        let omega = 1.7e15;
        let k = omega / C;
        for &x in &[1.0, 0.3, 4.5] {
            let r = x / k;
            let g = free_space_green(&Geometry::free(r), omega).unwrap();
            let im = mode_expansion_im(k, r);
            let re = gradient_re(k, r);
            for (c, idx) in [(0usize, 0usize), (1, 1), (1, 2)] {
                let got = g.tensor[idx][idx];
                let want = Complex64::new(re[c], im[c]);
                assert!(rel(got, want) < 1e-6, "kr = {x}, component {idx}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn conjugation_symmetry() {
        let rvec = [2e-7, -1e-7, 3e-8];
        for &k in &[Complex64::new(5e6, 0.0), Complex64::new(3e6, 1e6), Complex64::new(-2e6, 4e5)] {
            let a = free_dyadic(-k.conj(), rvec);
            let b = free_dyadic(k, rvec);
            for i in 0..3 {
                for j in 0..3 {
                    assert!((a[i][j] - b[i][j].conj()).norm() <= 1e-15 * b[i][j].norm().max(1e-300));
                }
            }
        }
    }

    #[test]
    fn reciprocity_transposes() {
        let omega = 2e15;
        let g = Geometry { r: 4e-7, z0: 0.0, phi0: 0.9 };
        let swapped = Geometry { phi0: g.phi0 + PI, ..g };
        let a = free_space_green(&g, omega).unwrap().tensor;
        let b = free_space_green(&swapped, omega).unwrap().tensor;
        for i in 0..3 {
            for j in 0..3 {
                assert!((a[i][j] - b[j][i]).norm() < 1e-12 * a[0][0].norm());
            }
        }
    }

    #[test]
    fn coincident_points_are_rejected() {
        assert!(matches!(free_space_green(&Geometry::free(0.0), 1e15), Err(Error::Coincidence)));
        assert!(free_space_green(&Geometry::free(1e-6), -1.0).is_err());
    }
}
