use crate::error::{Error, Result};

/// Least-squares slope of `ln|F|` against `ln r`.
pub fn fit_loglog_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 4 {
        return Err(Error::domain(format!("slope fit needs at least 4 points, got {}", points.len())));
    }
    if let Some(&(r, f)) = points.iter().find(|&&(r, f)| !(r > 0.0 && f > 0.0 && r.is_finite() && f.is_finite())) {
        return Err(Error::domain(format!("slope fit needs positive finite points, got ({r}, {f})")));
    }
    let n = points.len() as f64;
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(sx, sy), &(r, f)| (sx + r.ln(), sy + f.ln()));
    let (mx, my) = (sx / n, sy / n);
    let (sxy, sxx) = points.iter().fold((0.0, 0.0), |(sxy, sxx), &(r, f)| {
        let dx = r.ln() - mx;
        (sxy + dx * (f.ln() - my), sxx + dx * dx)
    });
    if sxx == 0.0 {
        return Err(Error::domain("slope fit needs at least two distinct r values"));
    }
    Ok(sxy / sxx)
}

/// `n` logarithmically spaced points on `[lo, hi]`.
pub fn logspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

/// `n` uniformly spaced points on `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}
