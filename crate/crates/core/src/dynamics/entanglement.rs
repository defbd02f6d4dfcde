use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

const TOL: f64 = 1e-8;

/// Hermitian square root of a positive semidefinite matrix; slightly negative
/// eigenvalues are clamped to zero.
fn sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (vals, vecs) = m.hermitian_eigen()?;
    let n = m.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for (k, &v) in vals.iter().enumerate() {
        let s = v.max(0.0).sqrt();
        if s == 0.0 {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += vecs[(i, k)] * vecs[(j, k)].conj() * s;
            }
        }
    }
    Ok(out)
}

/// Spin-flipped state `(σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`.
pub fn spin_flip(rho: &ComplexMatrix) -> ComplexMatrix {
    // σ_y⊗σ_y is real: ±1 on the anti-diagonal
    let sign = [-1.0, 1.0, 1.0, -1.0];
    ComplexMatrix::from_fn(4, 4, |i, j| rho[(3 - i, 3 - j)].conj() * (sign[i] * sign[j]))
}

/// Checks that `rho` is a 4×4 density matrix within 1e-8.
pub fn check_density_matrix(rho: &ComplexMatrix) -> Result<()> {
    if rho.rows() != 4 || rho.cols() != 4 {
        return Err(Error::domain(format!("expected a 4×4 matrix, got {}×{}", rho.rows(), rho.cols())));
    }
    if !rho.is_finite() {
        return Err(Error::domain("density matrix has non-finite entries"));
    }
    let herm = rho.hermiticity_defect();
    if herm > TOL {
        return Err(Error::domain(format!("density matrix is not Hermitian (defect {herm:.3e})")));
    }
    let tr = rho.trace();
    if (tr - Complex64::new(1.0, 0.0)).norm() > TOL {
        return Err(Error::domain(format!("density matrix trace is {tr}")));
    }
    let min = rho.hermitian_eigenvalues()?[0];
    if min < -TOL {
        return Err(Error::domain(format!("density matrix has eigenvalue {min:.3e}")));
    }
    Ok(())
}

/// Wootters concurrence `max(0, λ₁ − λ₂ − λ₃ − λ₄)`, with `λᵢ` the
/// decreasing square roots of the eigenvalues of `ρ ρ̃`, computed from the
/// Hermitian form `√ρ ρ̃ √ρ`.
pub fn concurrence(rho: &ComplexMatrix) -> Result<f64> {
    check_density_matrix(rho)?;
    let s = sqrt_psd(rho)?;
    let m = s.matmul(&spin_flip(rho)).matmul(&s);
    let m = (&m + &m.adjoint()).scale_real(0.5);
    let mut lam: Vec<f64> = m.hermitian_eigenvalues()?.into_iter().map(|v| v.max(0.0).sqrt()).collect();
    lam.sort_by(|a, b| b.total_cmp(a));
    Ok((lam[0] - lam[1] - lam[2] - lam[3]).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    const Z: Complex64 = Complex64::new(0.0, 0.0);

    fn ket(v: [f64; 4]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    /// Eigenvalues of a general 4×4 complex matrix from its characteristic
    /// polynomial (Faddeev–LeVerrier) and Durand–Kerner root finding.
    fn eigenvalues_by_polynomial(m: &ComplexMatrix) -> Vec<Complex64> {
        let n = 4;
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        let mut mk = ComplexMatrix::zeros(n, n);
        for k in 1..=n {
            let mut next = m.matmul(&mk);
            for i in 0..n {
                next[(i, i)] += coeffs[k - 1];
            }
            mk = next;
            let c = -m.matmul(&mk).trace() / k as f64;
            coeffs.push(c);
        }
        let p = |z: Complex64| coeffs.iter().fold(Z, |acc, &c| acc * z + c);
        let mut roots: Vec<Complex64> = (0..n).map(|k| Complex64::from_polar(0.9, 0.4 + 1.3 * k as f64)).collect();
        for _ in 0..2000 {
            for i in 0..n {
                let mut den = Complex64::new(1.0, 0.0);
                for j in 0..n {
                    if i != j {
                        den *= roots[i] - roots[j];
                    }
                }
                let step = p(roots[i]) / den;
                roots[i] -= step;
            }
        }
        roots
    }

    #[test]
    fn product_state_is_unentangled() {
        let rho = ComplexMatrix::projector(&ket([1.0, 0.0, 0.0, 0.0]));
        assert_eq!(concurrence(&rho).unwrap(), 0.0);
    }

    #[test]
    fn bell_states_are_maximal() {
        for s in [1.0, -1.0] {
            let rho = ComplexMatrix::projector(&ket([0.0, FRAC_1_SQRT_2, s * FRAC_1_SQRT_2, 0.0]));
            assert!((concurrence(&rho).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn mixture_matches_polynomial_oracle() {
        let p = 0.37;
        let bell = ComplexMatrix::projector(&ket([0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0]));
        let gg = ComplexMatrix::projector(&ket([1.0, 0.0, 0.0, 0.0]));
        let rho = &bell.scale_real(p) + &gg.scale_real(1.0 - p);
        let prod = rho.matmul(&spin_flip(&rho));
        let mut lam: Vec<f64> = eigenvalues_by_polynomial(&prod).iter().map(|z| z.re.max(0.0).sqrt()).collect();
        lam.sort_by(|a, b| b.total_cmp(a));
        let want = (lam[0] - lam[1] - lam[2] - lam[3]).max(0.0);
        assert!((want - p).abs() < 1e-6);
        assert!((concurrence(&rho).unwrap() - want).abs() < 1e-8);
    }

    #[test]
    fn werner_state_threshold() {
        // ρ = w|Ψ⁻⟩⟨Ψ⁻| + (1−w)I/4 has C = max(0, (3w−1)/2)
        let bell = ComplexMatrix::projector(&ket([0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2, 0.0]));
        for &w in &[0.1, 1.0 / 3.0, 0.5, 0.9] {
            let rho = &bell.scale_real(w) + &ComplexMatrix::identity(4).scale_real((1.0 - w) / 4.0);
            let want = ((3.0 * w - 1.0) / 2.0).max(0.0);
            assert!((concurrence(&rho).unwrap() - want).abs() < 1e-7, "w = {w}");
        }
    }

    #[test]
    fn rejects_unphysical_input() {
        let mut rho = ComplexMatrix::identity(4).scale_real(0.25);
        rho[(0, 1)] = Complex64::new(0.1, 0.0);
        assert!(concurrence(&rho).is_err());
        let neg = ComplexMatrix::from_fn(4, 4, |i, j| if i == j { Complex64::new([1.1, -0.1, 0.0, 0.0][i], 0.0) } else { Z });
        assert!(concurrence(&neg).is_err());
        assert!(concurrence(&ComplexMatrix::identity(4)).is_err());
        assert!(concurrence(&ComplexMatrix::identity(2).scale_real(0.5)).is_err());
    }
}
