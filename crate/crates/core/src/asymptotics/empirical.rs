use serde::Serialize;

use crate::error::{invalid, Result};

/// Log-log least-squares slope over the tail of a series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlopeEstimate {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope.
    pub slope_se: f64,
    /// Residual standard error of the log-log fit.
    pub residual_se: f64,
    pub points: usize,
}

/// Fits `ln value = a + slope ln index` over the last `tail_fraction` of the points.
pub fn empirical_exponent(index: &[f64], values: &[f64], tail_fraction: f64) -> Result<SlopeEstimate> {
    if index.len() != values.len() {
        return Err(invalid("index and values differ in length"));
    }
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return Err(invalid(format!("tail fraction must lie in (0, 1], got {tail_fraction}")));
    }
    let k = ((values.len() as f64) * tail_fraction).ceil() as usize;
    if k < 20 {
        return Err(invalid(format!("tail holds {k} points, at least 20 needed")));
    }
    let start = values.len() - k;
    let mut xs = Vec::with_capacity(k);
    let mut ys = Vec::with_capacity(k);
    for (&i, &v) in index[start..].iter().zip(&values[start..]) {
        if !(v > 0.0 && i > 0.0) {
            return Err(invalid(format!("non-positive entry {v} at index {i}")));
        }
        xs.push(i.ln());
        ys.push(v.ln());
    }
    let n = k as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let residual_se = (rss / (n - 2.0)).sqrt();
    Ok(SlopeEstimate { slope, intercept, slope_se: residual_se / sxx.sqrt(), residual_se, points: k })
}
