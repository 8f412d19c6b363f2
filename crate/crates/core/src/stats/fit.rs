use serde::Serialize;

use crate::error::{invalid, numerical, Result};
use crate::exact::{second_moment_exact, FourthState, Scalar, ThirdState};
use crate::process::DiscreteInit;

/// `V = exp(c + G)` with `G ~ Gamma(k, theta)` matched to three raw moments.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub c: f64,
    pub k: f64,
    pub theta: f64,
    pub fitted: [f64; 3],
    pub predicted_mu4: f64,
    /// Relative residuals of the fitted moments.
    pub residuals: [f64; 3],
}

// ln(1 - s theta) - s ln(1 - theta), negative for s >= 2
fn g(s: f64, theta: f64) -> f64 {
    (-s * theta).ln_1p() - s * (-theta).ln_1p()
}

fn dg(s: f64, theta: f64) -> f64 {
    -s / (1.0 - s * theta) + s / (1.0 - theta)
}

pub fn loggamma_fit(mu1: f64, mu2: f64, mu3: f64) -> Result<FitReport> {
    if !(mu1 > 0.0 && mu2 > 0.0 && mu3 > 0.0) || ![mu1, mu2, mu3].iter().all(|m| m.is_finite()) {
        return Err(invalid("moments must be positive and finite"));
    }
    let (l1, l2, l3) = (mu1.ln(), mu2.ln(), mu3.ln());
    let d2 = l2 - 2.0 * l1;
    let d3 = l3 - 3.0 * l1;
    if !(d2 > 1e-12) {
        return Err(invalid("no gamma component: the log-moment excess of the second moment vanishes"));
    }
    let ratio = d3 / d2;
    // g3/g2 increases from 3 (theta -> 0) to infinity (theta -> 1/3)
    if !(ratio > 3.0) {
        return Err(invalid(format!("log-moment ratio {ratio} is outside the feasible range (3, inf)")));
    }
    let h = |t: f64| g(3.0, t) - ratio * g(2.0, t);
    let dh = |t: f64| dg(3.0, t) - ratio * dg(2.0, t);
    let (mut lo, mut hi) = (0.0, 1.0 / 3.0);
    let mut theta = 0.1;
    let mut converged = false;
    for _ in 0..200 {
        let v = h(theta);
        if v.abs() < 1e-15 * ratio * g(2.0, theta).abs() {
            converged = true;
            break;
        }
        // h < 0 for theta beyond the root
        if v < 0.0 {
            hi = theta
        } else {
            lo = theta
        }
        let mut next = theta - v / dh(theta);
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - theta).abs() < 1e-16 {
            converged = true;
            theta = next;
            break;
        }
        theta = next;
    }
    if !converged {
        return Err(numerical("log-gamma fit did not converge"));
    }
    if theta >= 0.25 {
        return Err(invalid(format!("fitted scale {theta} >= 1/4 leaves the fourth moment undefined")));
    }
    let k = -d2 / g(2.0, theta);
    let c = l1 + k * (-theta).ln_1p();
    let moment = |s: f64| (c * s - k * (-s * theta).ln_1p()).exp();
    let fitted = [moment(1.0), moment(2.0), moment(3.0)];
    let residuals = [fitted[0] / mu1 - 1.0, fitted[1] / mu2 - 1.0, fitted[2] / mu3 - 1.0];
    Ok(FitReport { c, k, theta, fitted, predicted_mu4: moment(4.0), residuals })
}

/// `E (2 M_n)^k` for `k = 2, 3, 4` in the base process started from `[1]`, from the exact
/// moment recursions of the running sum. These increase to the moments of `2M`.
pub fn limit_moments_2m(n: usize) -> Result<[f64; 3]> {
    if n < 2 {
        return Err(invalid("need n >= 2"));
    }
    let mut third = ThirdState::<f64>::initial();
    let mut fourth = FourthState::<f64>::initial();
    // the states at index n + 1 carry powers of S_n
    while third.n <= n {
        third = third.step();
        fourth = fourth.step();
    }
    let second = second_moment_exact(&DiscreteInit::unit(), 1.0, n)?;
    let scale = 2.0 / (n as f64 * (n as f64 + 1.0));
    Ok([second.p * scale.powi(2), third.a03.approx() * scale.powi(3), fourth.a04.approx() * scale.powi(4)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let (theta, k) = (0.1f64, 2.0);
        let c = k * (-theta).ln_1p();
        let mu = |s: f64| (c * s - k * (-s * theta).ln_1p()).exp();
        let fit = loggamma_fit(mu(1.0), mu(2.0), mu(3.0)).unwrap();
        assert!((fit.theta - theta).abs() < 1e-8 && (fit.k - k).abs() < 1e-8 && (fit.c - c).abs() < 1e-8);
        assert!((fit.predicted_mu4 / mu(4.0) - 1.0).abs() < 1e-10);
        assert!(fit.residuals.iter().all(|r| r.abs() < 1e-8));
    }

    #[test]
    fn infeasible_inputs() {
        assert!(loggamma_fit(2.0, 4.0, 8.0).is_err());
        assert!(loggamma_fit(1.0, 2.0, 4.0).is_err());
        assert!(loggamma_fit(-1.0, 2.0, 4.0).is_err());
    }

    #[test]
    fn scale_consistency() {
        let base = loggamma_fit(1.0, 1.225, 1.932).unwrap();
        let lam: f64 = 3.7;
        let s = loggamma_fit(lam, 1.225 * lam * lam, 1.932 * lam.powi(3)).unwrap();
        assert!((s.c - base.c - lam.ln()).abs() < 1e-9);
        assert!((s.k - base.k).abs() < 1e-7 * base.k && (s.theta - base.theta).abs() < 1e-10);
    }

    #[test]
    fn limit_moments_match_second_moment_constant() {
        let [m2, m3, m4] = limit_moments_2m(20_000).unwrap();
        let k = std::f64::consts::PI.sinh() / (2.0 * std::f64::consts::PI);
        assert!((m2 - 4.0 * k / 6.0).abs() < 1e-3, "{m2}");
        assert!((m3 - 1.932).abs() < 2e-3, "{m3}");
        assert!((m4 - 4.211).abs() < 5e-3, "{m4}");
    }
}
