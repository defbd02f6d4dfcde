//! Dyadic Green tensors: free space at real and imaginary frequency, and the
//! reflected tensor above a graphene-coated substrate.

mod free;
mod graphene;
mod reflected;

use num_complex::Complex64;

pub use free::{coincidence_im_green, free_dyadic, free_space_green, imaginary_freq_components, imaginary_freq_green};
pub use graphene::{graphene_conductivity, GrapheneModel};
pub use reflected::{fresnel, interface_green, plasmon_pole, reflected_green, reflected_part, SheetInterface};

/// 3×3 complex tensor, row-major, in 1/m.
pub type Dyadic = [[Complex64; 3]; 3];

pub const ZERO_DYADIC: Dyadic = [[Complex64::new(0.0, 0.0); 3]; 3];

/// Two atoms at common height `z0` above the interface plane (ignored in
/// free space), displaced in-plane by `r` at azimuth `phi0` from the x-axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    pub r: f64,
    pub z0: f64,
    pub phi0: f64,
}

impl Geometry {
    pub fn free(r: f64) -> Self {
        Self { r, z0: 0.0, phi0: 0.0 }
    }

    pub fn above_interface(r: f64, z0: f64) -> Self {
        Self { r, z0, phi0: 0.0 }
    }

    /// `x₂ − x₁` in meters.
    pub fn displacement(&self) -> [f64; 3] {
        [self.r * self.phi0.cos(), self.r * self.phi0.sin(), 0.0]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenSample {
    /// rad/s; purely imaginary for imaginary-frequency samples.
    pub frequency: Complex64,
    pub tensor: Dyadic,
    pub free_part: Dyadic,
    pub reflected_part: Dyadic,
}

impl GreenSample {
    pub(crate) fn free(frequency: Complex64, g: Dyadic) -> Self {
        Self { frequency, tensor: g, free_part: g, reflected_part: ZERO_DYADIC }
    }

    pub(crate) fn with_parts(frequency: Complex64, free_part: Dyadic, reflected_part: Dyadic) -> Self {
        let mut tensor = free_part;
        for (row, rrow) in tensor.iter_mut().zip(&reflected_part) {
            for (z, r) in row.iter_mut().zip(rrow) {
                *z += r;
            }
        }
        Self { frequency, tensor, free_part, reflected_part }
    }

    /// `u·G·v` for real vectors.
    pub fn project(&self, u: [f64; 3], v: [f64; 3]) -> Complex64 {
        project(&self.tensor, u, v)
    }
}

/// `u·G·v` for real vectors.
pub fn project(g: &Dyadic, u: [f64; 3], v: [f64; 3]) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for i in 0..3 {
        for j in 0..3 {
            s += g[i][j] * (u[i] * v[j]);
        }
    }
    s
}
