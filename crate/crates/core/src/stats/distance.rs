use serde::{Deserialize, Serialize};

use crate::error::{invalid, numerical, Result};

/// Reference laws for the limit theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    /// Density `w e^{-w}`.
    Gamma2,
    /// Density `e^{-w}`.
    Exp1,
}

impl Target {
    pub fn quantile(self, u: f64) -> Result<f64> {
        match self {
            Target::Gamma2 => gamma2_quantile(u),
            Target::Exp1 => exp1_quantile(u),
        }
    }

    pub fn cdf(self, w: f64) -> f64 {
        match self {
            Target::Gamma2 => gamma2_cdf(w),
            Target::Exp1 if w > 0.0 => -(-w).exp_m1(),
            Target::Exp1 => 0.0,
        }
    }

    pub fn pdf(self, w: f64) -> f64 {
        match self {
            Target::Gamma2 => gamma2_pdf(w),
            Target::Exp1 if w >= 0.0 => (-w).exp(),
            Target::Exp1 => 0.0,
        }
    }
}

pub fn gamma2_pdf(w: f64) -> f64 {
    if w > 0.0 {
        w * (-w).exp()
    } else {
        0.0
    }
}

pub fn gamma2_cdf(w: f64) -> f64 {
    if w > 0.0 {
        1.0 - (-w).exp() * (1.0 + w)
    } else {
        0.0
    }
}

fn check_unit(u: f64) -> Result<()> {
    if !(u > 0.0 && u < 1.0) {
        return Err(invalid(format!("quantile level must lie in (0, 1), got {u}")));
    }
    Ok(())
}

pub fn exp1_quantile(u: f64) -> Result<f64> {
    check_unit(u)?;
    Ok(-(-u).ln_1p())
}

/// Newton inversion of `1 - e^{-w}(1 + w) = u`, safeguarded by a bracket.
pub fn gamma2_quantile(u: f64) -> Result<f64> {
    check_unit(u)?;
    let target = 1.0 - u;
    let (mut lo, mut hi) = (0.0, f64::INFINITY);
    let mut w = u.max(-(-u).ln_1p());
    for _ in 0..100 {
        let tail = (-w).exp() * (1.0 + w);
        let resid = target - tail;
        if resid.abs() < 1e-13 * target.min(u).max(1e-300) || resid == 0.0 {
            return Ok(w);
        }
        if resid > 0.0 {
            hi = w
        } else {
            lo = w
        }
        let mut next = w - resid / gamma2_pdf(w);
        if !(next > lo && next < hi) {
            next = if hi.is_finite() { 0.5 * (lo + hi) } else { 2.0 * w.max(1.0) };
        }
        if (next - w).abs() <= 1e-16 * w {
            return Ok(next);
        }
        w = next;
    }
    Err(numerical(format!("gamma quantile did not converge at u = {u}")))
}

/// Mallows (Wasserstein-2) distance between the empirical law of `samples` and `target`, by
/// quantile coupling at plotting positions `(i - 1/2)/N`.
pub fn wasserstein2(samples: &[f64], target: Target) -> Result<f64> {
    if samples.len() < 100 {
        return Err(invalid(format!("need at least 100 samples, got {}", samples.len())));
    }
    if let Some(bad) = samples.iter().find(|x| !(**x > 0.0 && x.is_finite())) {
        return Err(invalid(format!("samples must be positive and finite, found {bad}")));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut acc = 0.0;
    for (i, x) in sorted.iter().enumerate() {
        let q = target.quantile((i as f64 + 0.5) / n)?;
        acc += (x - q).powi(2);
    }
    Ok((acc / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantile_examples() {
        let w = gamma2_quantile(0.5).unwrap();
        assert!(((-w).exp() * (1.0 + w) - 0.5).abs() < 1e-12);
        let u = 1.0 - 2.0 * (-1f64).exp();
        assert!((gamma2_quantile(u).unwrap() - 1.0).abs() < 1e-12);
        assert!(gamma2_quantile(1e-12).unwrap() < 1e-5);
        for u in [1e-9, 0.01, 0.3, 0.9, 0.999_999] {
            assert!((gamma2_cdf(gamma2_quantile(u).unwrap()) - u).abs() < 1e-12, "u = {u}");
        }
        assert!(gamma2_quantile(0.0).is_err() && gamma2_quantile(1.0).is_err());
    }

    #[test]
    fn exact_quantiles_have_zero_distance() {
        let n = 500;
        let xs: Vec<f64> = (0..n).map(|i| gamma2_quantile((i as f64 + 0.5) / n as f64).unwrap()).collect();
        assert!(wasserstein2(&xs, Target::Gamma2).unwrap() < 1e-12);
        assert!(wasserstein2(&xs, Target::Exp1).unwrap() > 0.1);
        assert!(wasserstein2(&xs[..50], Target::Gamma2).is_err());
        let mut bad = xs.clone();
        bad[3] = -1.0;
        assert!(wasserstein2(&bad, Target::Gamma2).is_err());
    }
}
