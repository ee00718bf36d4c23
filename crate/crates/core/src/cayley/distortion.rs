//! Growth of `len(h^m)` along a cyclic subgroup.

use super::{CayleyError, GroupElement, WordWeightTable};

#[derive(Debug, Clone, PartialEq)]
pub enum DistortionClass {
    /// `len(h^m) ~ m^(1/alpha)`.
    Polynomial { alpha: f64 },
    /// `len(h^m) ~ log m`.
    Exponential,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistortionFit {
    pub points: Vec<(u64, u32)>,
    /// `1 / slope` of the log-log least-squares line.
    pub alpha: f64,
    /// Residual sum of squares of `len` under the power model.
    pub power_rss: f64,
    /// Residual sum of squares of `len` under `len = A + B ln m`.
    pub log_rss: f64,
    pub class: DistortionClass,
}

/// Least-squares line through `(x, y)`: returns `(intercept, slope)`.
fn line_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    (my - slope * mx, slope)
}

/// Fits `len(h^m)` over the contiguous powers `m = 1, 2, ...` inside the
/// table, by a power law in log-log space and by `A + B ln m`; the latter
/// winning on residuals classifies the subgroup as exponentially distorted.
pub fn distortion_fit(table: &WordWeightTable, h: &GroupElement) -> Result<DistortionFit, CayleyError> {
    let points = table.power_lengths(h);
    if points.len() < 8 {
        return Err(CayleyError::InsufficientData { points: points.len() });
    }
    let ln_m: Vec<f64> = points.iter().map(|&(m, _)| (m as f64).ln()).collect();
    let len: Vec<f64> = points.iter().map(|&(_, n)| n as f64).collect();
    let ln_len: Vec<f64> = len.iter().map(|l| l.ln()).collect();

    let (c, slope) = line_fit(&ln_m, &ln_len);
    let power_rss: f64 =
        ln_m.iter().zip(&len).map(|(x, l)| (l - (c + slope * x).exp()).powi(2)).sum();
    let (a, b) = line_fit(&ln_m, &len);
    let log_rss: f64 = ln_m.iter().zip(&len).map(|(x, l)| (l - (a + b * x)).powi(2)).sum();

    let alpha = if slope > 0.0 { 1.0 / slope } else { f64::INFINITY };
    let class = if log_rss < power_rss { DistortionClass::Exponential } else { DistortionClass::Polynomial { alpha } };
    Ok(DistortionFit { points, alpha, power_rss, log_rss, class })
}
