use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use super::base::{check_positive_grid, BootstrapOptions};
use super::series;
use crate::error::{invalid, Result};
use crate::numerics::dopri5;
use crate::process::WeightSpec;

/// Regular solution `m(t)` of the generalized mean equation with `m(0) = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneralizedMean {
    pub t: Vec<f64>,
    pub m: Vec<f64>,
    /// Indicial roots `0, 1 - alpha, 1 - beta` differ by an integer.
    pub degenerate_frobenius: bool,
}

fn check_rates(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha > 0.0 && beta > 0.0 && alpha.is_finite() && beta.is_finite()) {
        return Err(invalid(format!("alpha, beta must be positive, got {alpha}, {beta}")));
    }
    Ok(())
}

fn is_integer(x: f64) -> bool {
    (x - x.round()).abs() < 1e-12
}

pub fn generalized_mean_ode(alpha: f64, beta: f64, a: f64, b: f64, grid: &[f64]) -> Result<GeneralizedMean> {
    generalized_mean_ode_with(alpha, beta, a, b, grid, BootstrapOptions::default())
}

pub fn generalized_mean_ode_with(
    alpha: f64,
    beta: f64,
    a: f64,
    b: f64,
    grid: &[f64],
    opts: BootstrapOptions,
) -> Result<GeneralizedMean> {
    check_rates(alpha, beta)?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(invalid("weights must be finite"));
    }
    check_positive_grid(grid)?;
    let degenerate_frobenius = is_integer(alpha) || is_integer(beta) || is_integer(alpha - beta);
    if degenerate_frobenius {
        // the c = 0 series is unaffected; only the singular companions would carry logarithms
        log::warn!("indicial roots differ by an integer (alpha = {alpha}, beta = {beta}); using the regular series");
    }
    let lin = 1.0 + beta * (1.0 - b) + alpha * (1.0 - a);
    let c = (1.0 - a - b) * alpha * beta;
    let order = opts.series_order;
    let split = grid.partition_point(|&t| t <= opts.t0);
    let mut m: Vec<f64> =
        grid[..split].iter().map(|&t| series::generalized_mean_state(alpha, beta, a, b, t, order)[0]).collect();
    if split < grid.len() {
        let y0 = series::generalized_mean_state(alpha, beta, a, b, opts.t0, order);
        let rhs = |t: f64, y: &[f64; 3]| {
            let third =
                -(((alpha + beta + 1.0) * t + t * t) * y[2] + (alpha * beta + lin * t) * y[1] + c * y[0]) / (t * t);
            [y[1], y[2], third]
        };
        m.extend(dopri5(rhs, opts.t0, y0, &grid[split..], opts.ode)?.into_iter().map(|y| y[0]));
    }
    Ok(GeneralizedMean { t: grid.to_vec(), m, degenerate_frobenius })
}

/// Roots of `sigma^2 + [beta(1-B) + alpha(1-A)] sigma + (1-A-B) alpha beta = 0`,
/// sorted by real part, then imaginary part, descending.
pub fn sigma_roots(alpha: f64, beta: f64, a: f64, b: f64) -> [Complex64; 2] {
    let lin = beta * (1.0 - b) + alpha * (1.0 - a);
    let c = (1.0 - a - b) * alpha * beta;
    let disc = Complex64::new(lin * lin - 4.0 * c, 0.0).sqrt();
    let mut roots = [(-lin + disc) / 2.0, (-lin - disc) / 2.0];
    roots.sort_by(|x, y| y.re.total_cmp(&x.re).then(y.im.total_cmp(&x.im)));
    roots
}

/// `f = a^2 x^2 + 2 a b x y + b^2 y^2 - 4 a b (x + y - 1)` with `x = 1 - A`, `y = 1 - B`;
/// the discriminant of the sigma equation.
pub fn oscillation_discriminant(alpha: f64, beta: f64, a: f64, b: f64) -> f64 {
    let (x, y) = (1.0 - a, 1.0 - b);
    alpha * alpha * x * x + 2.0 * alpha * beta * x * y + beta * beta * y * y - 4.0 * alpha * beta * (x + y - 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegionLabel {
    RealDecaying,
    RealGrowing,
    OscillatoryDecaying,
    OscillatoryGrowing,
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::RealDecaying => "real-decaying",
            Self::RealGrowing => "real-growing",
            Self::OscillatoryDecaying => "oscillatory-decaying",
            Self::OscillatoryGrowing => "oscillatory-growing",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    pub sigma_roots: [Complex64; 2],
    pub discriminant: f64,
    pub oscillatory: bool,
    pub mean_growth: bool,
    /// Largest real part of the two roots.
    pub mean_exponent: f64,
    pub repeated_root: bool,
    pub exponent_label: String,
    /// Only available when `alpha == beta`.
    pub second_moment_exponent: Option<f64>,
    pub region_label: RegionLabel,
}

fn report(alpha: f64, beta: f64, mean_a: f64, mean_b: f64, second: Option<(f64, f64)>) -> Result<GrowthReport> {
    check_rates(alpha, beta)?;
    let sigma_roots = sigma_roots(alpha, beta, mean_a, mean_b);
    let discriminant = oscillation_discriminant(alpha, beta, mean_a, mean_b);
    let oscillatory = discriminant < 0.0;
    let mean_exponent = sigma_roots[0].re;
    let mean_growth = mean_exponent > 0.0;
    let scale = 1.0 + sigma_roots[0].norm();
    let repeated_root = discriminant.abs() <= 1e-12 * scale * scale;
    let exponent_label = if repeated_root {
        format!("{mean_exponent} (repeated; possible logarithmic factor)")
    } else {
        format!("{mean_exponent}")
    };
    let second_moment_exponent = (alpha == beta).then(|| {
        let (sq_a, sq_b) = second.unwrap_or((mean_a * mean_a, mean_b * mean_b));
        alpha * (sq_a + sq_b - 1.0).max(2.0 * (mean_a + mean_b - 1.0))
    });
    let region_label = match (oscillatory, mean_growth) {
        (false, false) => RegionLabel::RealDecaying,
        (false, true) => RegionLabel::RealGrowing,
        (true, false) => RegionLabel::OscillatoryDecaying,
        (true, true) => RegionLabel::OscillatoryGrowing,
    };
    Ok(GrowthReport {
        sigma_roots,
        discriminant,
        oscillatory,
        mean_growth,
        mean_exponent,
        repeated_root,
        exponent_label,
        second_moment_exponent,
        region_label,
    })
}

pub fn classify_regions(alpha: f64, beta: f64, a: f64, b: f64) -> Result<GrowthReport> {
    report(alpha, beta, a, b, None)
}

/// Classification for random weights: means drive the sigma equation, second moments the
/// second-moment exponent.
pub fn classify_weights(alpha: f64, beta: f64, weights: &WeightSpec) -> Result<GrowthReport> {
    weights.validate()?;
    report(
        alpha,
        beta,
        weights.a.mean(),
        weights.b.mean(),
        Some((weights.a.second_moment(), weights.b.second_moment())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::empirical_exponent;

    fn close(z: Complex64, re: f64, im: f64) -> bool {
        (z.re - re).abs() < 1e-12 && (z.im - im).abs() < 1e-12
    }

    #[test]
    fn root_examples() {
        let r = sigma_roots(1.0, 1.0, 1.0, 1.0);
        assert!(close(r[0], 1.0, 0.0) && close(r[1], -1.0, 0.0));
        let r = sigma_roots(2.0, 1.0, 0.5, -1.0);
        let h = 3f64.sqrt() / 2.0;
        assert!(close(r[0], -1.5, h) && close(r[1], -1.5, -h));
        let r = sigma_roots(1.3, 0.7, 0.4, 0.6);
        assert!(r.iter().any(|z| z.norm() < 1e-12));
    }

    #[test]
    fn classification_examples() {
        let g = classify_regions(2.0, 1.0, 0.5, -1.0).unwrap();
        assert_eq!(g.region_label, RegionLabel::OscillatoryDecaying);
        assert!((g.discriminant + 3.0).abs() < 1e-12);
        assert_eq!(g.second_moment_exponent, None);
        let g = classify_regions(1.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(g.second_moment_exponent, Some(2.0));
        assert_eq!(g.region_label, RegionLabel::RealGrowing);
        assert!(classify_regions(0.0, 1.0, 1.0, 1.0).is_err());
        let g = classify_regions(1.0, 1.0, 0.0, 0.0).unwrap();
        assert!(g.repeated_root && g.exponent_label.contains("repeated"));
    }

    #[test]
    fn random_weights_use_moments() {
        use crate::process::CoefficientLaw;
        let w = WeightSpec {
            a: CoefficientLaw::RandomTwoPoint { v1: 0.0, v2: 2.0, prob1: 0.5 },
            b: CoefficientLaw::constant(1.0),
        };
        let g = classify_weights(1.0, 1.0, &w).unwrap();
        assert!((g.mean_exponent - 1.0).abs() < 1e-12);
        // E A^2 + E B^2 - 1 = 2 ties with 2(mu_A + mu_B - 1) = 2
        assert_eq!(g.second_moment_exponent, Some(2.0));
    }

    #[test]
    fn mean_ode_polynomial_cases() {
        let grid: Vec<f64> = (1..=100).map(|i| i as f64).collect();
        let m = generalized_mean_ode(1.0, 1.0, 1.0, 1.0, &grid).unwrap();
        assert!(m.degenerate_frobenius);
        for (t, v) in m.t.iter().zip(&m.m) {
            assert!((v - (1.0 + t)).abs() < 1e-8 * (1.0 + t));
        }
        let m = generalized_mean_ode(8.0, 0.5, 1.0, 1.0, &grid).unwrap();
        for (t, v) in m.t.iter().zip(&m.m) {
            let exact = 1.0 + t + t * t / 9.0;
            assert!((v - exact).abs() < 1e-8 * exact);
        }
    }

    #[test]
    fn mean_ode_tail_exponent() {
        let grid: Vec<f64> = (1..=400).map(|i| 2.5 * i as f64).collect();
        let m = generalized_mean_ode(2.0, 2.0, 1.0, 1.0, &grid).unwrap();
        let fit = empirical_exponent(&grid, &m.m, 0.5).unwrap();
        assert!((fit.slope - 2.0).abs() < 0.05);
        let m = generalized_mean_ode(1.5, 0.7, 1.2, 0.3, &grid).unwrap();
        let sigma = sigma_roots(1.5, 0.7, 1.2, 0.3)[0].re;
        let fit = empirical_exponent(&grid, &m.m, 0.5).unwrap();
        assert!((fit.slope - sigma).abs() < 0.05, "{} vs {sigma}", fit.slope);
    }
}
