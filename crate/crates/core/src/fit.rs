//! Straight-line fits in log-log coordinates.

use crate::error::{Error, Result};

/// `y ≈ prefactor · x^exponent`, fitted by least squares on `(ln x, ln y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub prefactor: f64,
    pub r_squared: f64,
    pub window: (f64, f64),
    pub n_points: usize,
}

pub const MIN_FIT_POINTS: usize = 8;

/// `count` geometrically spaced points covering `[lo, hi]`.
pub fn geometric_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    let (l, h) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == count - 1 {
                hi
            } else {
                (l + (h - l) * i as f64 / (count - 1) as f64).exp()
            }
        })
        .collect()
}

pub fn fit_power_law(xs: &[f64], ys: &[f64]) -> Result<PowerLawFit> {
    if xs.len() != ys.len() {
        return Err(Error::DegenerateFit(format!(
            "{} abscissae vs {} ordinates",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < MIN_FIT_POINTS {
        return Err(Error::DegenerateFit(format!(
            "{} points, need at least {MIN_FIT_POINTS}",
            xs.len()
        )));
    }
    if xs.iter().chain(ys).any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::DegenerateFit("log-log fit needs positive finite data".into()));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ly.iter().map(|y| (y - my) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("all abscissae coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 { 1.0 } else { (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0) };
    let (lo, hi) = xs
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    Ok(PowerLawFit {
        exponent: slope,
        prefactor: intercept.exp(),
        r_squared,
        window: (lo, hi),
        n_points: xs.len(),
    })
}

/// Amplitude `C` of `y ≈ C x^exponent` with the exponent held fixed
/// (geometric mean of `y / x^exponent`).
pub fn pinned_prefactor(xs: &[f64], ys: &[f64], exponent: f64) -> f64 {
    let k = xs.len() as f64;
    let mean: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| y.ln() - exponent * x.ln())
        .sum::<f64>()
        / k;
    mean.exp()
}
