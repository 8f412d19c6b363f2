use serde::Serialize;

use crate::error::{invalid, Result};

/// Ensemble checks on a dyadic ladder of indices: constant means and a Cauchy proxy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceDiagnostics {
    pub ladder: Vec<f64>,
    pub means: Vec<f64>,
    pub std_errors: Vec<f64>,
    /// Every mean within 3 paired standard errors of the first.
    pub constant_means: bool,
    /// `E (M_{2n} - M_n)^2` between consecutive ladder entries.
    pub cauchy: Vec<f64>,
    pub cauchy_ratios: Vec<f64>,
    /// Each ratio at most one half, up to three standard errors of the ratio estimate.
    pub cauchy_halving: bool,
}

fn mean_se(xs: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = xs.clone().count() as f64;
    let mean = xs.clone().sum::<f64>() / n;
    let var = xs.map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// `samples[rep][i]` is the martingale of replicate `rep` at `ladder[i]`.
pub fn diagnose(ladder: &[f64], samples: &[Vec<f64>]) -> Result<ConvergenceDiagnostics> {
    if ladder.len() < 2 || samples.len() < 2 {
        return Err(invalid("need at least two ladder entries and two replicates"));
    }
    if samples.iter().any(|s| s.len() != ladder.len()) {
        return Err(invalid("every replicate needs one value per ladder entry"));
    }
    let k = ladder.len();
    let (means, std_errors): (Vec<f64>, Vec<f64>) = (0..k).map(|i| mean_se(samples.iter().map(|s| s[i]))).unzip();
    let constant_means = (1..k).all(|i| {
        let (diff, se) = mean_se(samples.iter().map(|s| s[i] - s[0]));
        diff.abs() <= 3.0 * se
    });
    let sq: Vec<(f64, f64)> = (1..k).map(|i| mean_se(samples.iter().map(|s| (s[i] - s[i - 1]).powi(2)))).collect();
    let cauchy: Vec<f64> = sq.iter().map(|c| c.0).collect();
    let cauchy_ratios: Vec<f64> = cauchy.windows(2).map(|w| w[1] / w[0]).collect();
    let cauchy_halving = sq.windows(2).zip(&cauchy_ratios).all(|(w, r)| {
        let rel = ((w[0].1 / w[0].0).powi(2) + (w[1].1 / w[1].0).powi(2)).sqrt();
        *r <= 0.5 + 3.0 * rel * r
    });
    Ok(ConvergenceDiagnostics {
        ladder: ladder.to_vec(),
        means,
        std_errors,
        constant_means,
        cauchy,
        cauchy_ratios,
        cauchy_halving,
    })
}
