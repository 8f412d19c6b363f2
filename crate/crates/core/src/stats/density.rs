use serde::Serialize;

use super::distance::Target;
use super::ensemble::ensemble_map;
use crate::error::{invalid, Result};
use crate::process::{simulate_discrete_with, DiscreteInit};
use crate::rng::{stream_rng, uniform_index, unit};

/// Fixed-width histogram on `[lo, lo + width * counts.len())`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub lo: f64,
    pub width: f64,
    pub counts: Vec<u64>,
    /// All samples, including those outside the binned range.
    pub total: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bin {
    pub left: f64,
    pub right: f64,
    pub count: u64,
    pub density: f64,
}

impl Histogram {
    pub fn bins(&self) -> impl Iterator<Item = Bin> + '_ {
        self.counts.iter().enumerate().map(|(i, &count)| {
            let left = self.lo + i as f64 * self.width;
            Bin { left, right: left + self.width, count, density: count as f64 / (self.total as f64 * self.width) }
        })
    }

    /// Largest gap between the empirical density and the bin average of `target`'s density.
    pub fn max_deviation(&self, target: Target) -> f64 {
        self.bins()
            .map(|b| (b.density - (target.cdf(b.right) - target.cdf(b.left)) / self.width).abs())
            .fold(0.0, f64::max)
    }
}

pub fn histogram(samples: &[f64], lo: f64, hi: f64, width: f64) -> Result<Histogram> {
    if !(width > 0.0 && hi > lo) {
        return Err(invalid("histogram needs hi > lo and a positive width"));
    }
    let bins = ((hi - lo) / width).round() as usize;
    let mut counts = vec![0u64; bins];
    for &x in samples {
        let i = ((x - lo) / width).floor();
        if i >= 0.0 && (i as usize) < bins {
            counts[i as usize] += 1;
        }
    }
    Ok(Histogram { lo, width, counts, total: samples.len() })
}

/// Scaled samples around step `n` of the base process.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitSamples {
    pub n: usize,
    /// `X_n / (n M_{n-1})`, asymptotically `Gamma(2, 1)`.
    pub scaled: Vec<f64>,
    /// `W_n = (X_U + X_V) / (n M_n)` with the selections of step `n`.
    pub w: Vec<f64>,
    /// `X_U / (n M_n)` for one uniform selection, asymptotically `Exp(1)`.
    pub single: Vec<f64>,
    /// `ln(2 M_n)`.
    pub log_2m: Vec<f64>,
    pub hist_scaled: Histogram,
    pub hist_w: Histogram,
    pub hist_single: Histogram,
}

const SELECTION_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

pub fn limit_density_samples(init: &DiscreteInit, n: usize, reps: usize, seed: u64) -> Result<LimitSamples> {
    if n <= init.len().max(1) {
        return Err(invalid(format!("n = {n} must exceed the initial length {}", init.len())));
    }
    if reps < 2 {
        return Err(invalid("need at least two replicates"));
    }
    let draws = ensemble_map(reps, |k| {
        let tr = simulate_discrete_with(init, 1.0, n + 1, seed, k)?;
        let nf = n as f64;
        let mean_prev = tr.s(n - 1) / (nf - 1.0);
        let mean_now = tr.s(n) / nf;
        // n M_n = S_n / (n + 1)
        let nm = mean_now * nf / (nf + 1.0);
        let mut rng = stream_rng(seed ^ SELECTION_SALT, k);
        let u = uniform_index(n, unit(&mut rng));
        Ok((tr.x(n) / mean_prev, tr.x(n + 1) / nm, tr.x(u) / nm, (2.0 * nm / nf).ln()))
    })?;
    let scaled: Vec<f64> = draws.iter().map(|t| t.0).collect();
    let w: Vec<f64> = draws.iter().map(|t| t.1).collect();
    let single: Vec<f64> = draws.iter().map(|t| t.2).collect();
    let log_2m: Vec<f64> = draws.iter().map(|t| t.3).collect();
    Ok(LimitSamples {
        n,
        hist_scaled: histogram(&scaled, 0.0, 10.0, 0.1)?,
        hist_w: histogram(&w, 0.0, 10.0, 0.1)?,
        hist_single: histogram(&single, 0.0, 10.0, 0.1)?,
        scaled,
        w,
        single,
        log_2m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::Estimate;

    #[test]
    fn histogram_counts() {
        let h = histogram(&[0.05, 0.15, 0.15, 9.99, 12.0], 0.0, 10.0, 0.1).unwrap();
        assert_eq!(h.counts.len(), 100);
        assert_eq!((h.counts[0], h.counts[1], h.counts[99], h.total), (1, 2, 1, 5));
    }

    #[test]
    fn scaled_means() {
        let s = limit_density_samples(&DiscreteInit::unit(), 500, 3000, 4).unwrap();
        assert!(Estimate::from_samples(s.scaled.iter().copied()).within(2.0, 4.0));
        assert!(Estimate::from_samples(s.w.iter().copied()).within(2.0 * 501.0 / 500.0, 4.0));
        assert!(Estimate::from_samples(s.single.iter().copied()).within(501.0 / 500.0, 4.0));
        assert!(s.hist_scaled.max_deviation(Target::Gamma2) < 0.15);
    }
}
