//! Globally adaptive Gauss–Kronrod (7/15) quadrature for complex- and
//! vector-valued integrands.
//!
//! A semi-infinite range `[a, ∞)` is mapped onto `t ∈ [0, 1)` with
//! `x = a + s·t/(1−t)`, `dx = s/(1−t)² dt`, where `s` is
//! [`QuadOptions::scale`]. Kronrod nodes never touch `t = 1`, so the
//! integrand is only evaluated at finite `x`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Values the integrator can accumulate.
pub trait QuadValue: Copy {
    fn zero() -> Self;
    fn add(self, other: Self) -> Self;
    fn scale(self, s: f64) -> Self;
    /// Size used for error control (max-norm for vectors).
    fn magnitude(&self) -> f64;
    fn to_vec(&self) -> Vec<Complex64>;
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_vec(&self) -> Vec<Complex64> {
        vec![*self]
    }
}

impl<const N: usize> QuadValue for [Complex64; N] {
    fn zero() -> Self {
        [Complex64::new(0.0, 0.0); N]
    }
    fn add(mut self, other: Self) -> Self {
        for (a, b) in self.iter_mut().zip(other) {
            *a += b;
        }
        self
    }
    fn scale(mut self, s: f64) -> Self {
        for a in self.iter_mut() {
            *a *= s;
        }
        self
    }
    fn magnitude(&self) -> f64 {
        self.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
    fn to_vec(&self) -> Vec<Complex64> {
        self.as_slice().to_vec()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureResult<V = Complex64> {
    pub value: V,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_evaluations: usize,
    /// Length scale `s` of the semi-infinite map.
    pub scale: f64,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-8, abs_tol: 1e-12, max_evaluations: 400_000, scale: 1.0 }
    }
}

impl QuadOptions {
    pub fn tolerances(rel_tol: f64, abs_tol: f64) -> Self {
        Self { rel_tol, abs_tol, ..Self::default() }
    }
}

/// Integrate a complex function over `[a, b]`; `b` may be `f64::INFINITY`.
pub fn integrate_adaptive<F>(f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Complex64,
{
    integrate_with(f, a, b, &[], &QuadOptions::tolerances(rel_tol, abs_tol))
}

/// General entry point: vector-valued integrands, extra breakpoints (in the
/// original variable) and full option control.
pub fn integrate_with<V, F>(f: F, a: f64, b: f64, breakpoints: &[f64], opts: &QuadOptions) -> Result<QuadratureResult<V>>
where
    V: QuadValue,
    F: Fn(f64) -> V,
{
    if !(opts.rel_tol > 0.0 && opts.abs_tol > 0.0) {
        return Err(Error::domain("quadrature tolerances must be positive"));
    }
    if !a.is_finite() || b.is_nan() || b == f64::NEG_INFINITY {
        return Err(Error::domain(format!("unsupported integration range [{a}, {b}]")));
    }
    if a == b {
        return Ok(QuadratureResult { value: V::zero(), abs_error_estimate: 0.0, evaluations: 1 });
    }
    if b < a {
        let mut r = integrate_with(f, b, a, breakpoints, opts)?;
        r.value = r.value.scale(-1.0);
        return Ok(r);
    }

    if b.is_infinite() {
        let s = opts.scale;
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::domain("semi-infinite map scale must be positive"));
        }
        let g = |t: f64| {
            let u = 1.0 - t;
            f(a + s * t / u).scale(s / (u * u))
        };
        let bp: Vec<f64> = breakpoints
            .iter()
            .filter(|&&x| x > a)
            .map(|&x| {
                let y = (x - a) / s;
                y / (1.0 + y)
            })
            .collect();
        adaptive(g, 0.0, 1.0, &bp, opts)
    } else {
        let bp: Vec<f64> = breakpoints.iter().copied().filter(|&x| x > a && x < b).collect();
        adaptive(f, a, b, &bp, opts)
    }
}

struct Segment<V> {
    a: f64,
    b: f64,
    value: V,
    error: f64,
}

impl<V> PartialEq for Segment<V> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<V> Eq for Segment<V> {}
impl<V> PartialOrd for Segment<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<V> Ord for Segment<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gk15<V: QuadValue, F: Fn(f64) -> V>(f: &F, a: f64, b: f64) -> Segment<V> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc.scale(WGK[7]);
    let mut gauss = fc.scale(WG[3]);
    for (j, &x) in XGK[..7].iter().enumerate() {
        let pair = f(c - h * x).add(f(c + h * x));
        kronrod = kronrod.add(pair.scale(WGK[j]));
        if j % 2 == 1 {
            gauss = gauss.add(pair.scale(WG[j / 2]));
        }
    }
    let value = kronrod.scale(h);
    let diff = kronrod.add(gauss.scale(-1.0)).scale(h);
    Segment { a, b, value, error: diff.magnitude() }
}

fn adaptive<V, F>(f: F, a: f64, b: f64, breakpoints: &[f64], opts: &QuadOptions) -> Result<QuadratureResult<V>>
where
    V: QuadValue,
    F: Fn(f64) -> V,
{
    let mut edges = vec![a];
    let mut bp = breakpoints.to_vec();
    bp.sort_by(f64::total_cmp);
    edges.extend(bp.into_iter().filter(|&x| x > a && x < b));
    edges.push(b);
    edges.dedup();

    let mut heap = BinaryHeap::new();
    let mut evaluations = 0usize;
    for w in edges.windows(2) {
        heap.push(gk15(&f, w[0], w[1]));
        evaluations += 15;
    }

    let totals = |heap: &BinaryHeap<Segment<V>>| {
        heap.iter().fold((V::zero(), 0.0), |(v, e), s| (v.add(s.value), e + s.error))
    };

    loop {
        let (value, error) = totals(&heap);
        let tol = opts.abs_tol.max(opts.rel_tol * value.magnitude());
        if error <= tol {
            return Ok(QuadratureResult { value, abs_error_estimate: error, evaluations });
        }
        let worst = heap.peek().expect("at least one segment");
        let mid = 0.5 * (worst.a + worst.b);
        let unsplittable = !(mid > worst.a && mid < worst.b)
            || (worst.b - worst.a) <= 4.0 * f64::EPSILON * worst.a.abs().max(worst.b.abs());
        if evaluations + 30 > opts.max_evaluations || unsplittable {
            return Err(Error::Convergence {
                partial: value.to_vec(),
                abs_error: error,
                evaluations,
                context: String::new(),
            });
        }
        let worst = heap.pop().expect("peeked");
        heap.push(gk15(&f, worst.a, mid));
        heap.push(gk15(&f, mid, worst.b));
        evaluations += 30;
    }
}
