//! Data behind the six figures: limit densities, the growth constant against `p`, the product
//! moment profile and the parameter regions of the generalized process.

use statrs::function::gamma::ln_gamma;

use crate::continuous::{named_constants, oscillation_discriminant, sigma_roots};
use crate::error::{invalid, Result};
use crate::exact::{k_limit, ProductRow};
use crate::output::{flag, Table};
use crate::process::DiscreteInit;
use crate::stats::{limit_density_samples, loggamma_fit, Estimate, Target};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, steps: usize) -> Result<Self> {
        if !(hi > lo) || steps < 2 {
            return Err(invalid("grid needs hi > lo and at least two steps"));
        }
        Ok(Self { lo, hi, steps })
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.steps).map(|i| self.lo + (self.hi - self.lo) * i as f64 / (self.steps - 1) as f64)
    }
}

/// Figure 1: histogram of `X_n/(n M_{n-1})` against `w e^{-w}` (right) and of `ln(2 M_n)`
/// against fitted normal and log-gamma densities (left).
pub fn figure1(n: usize, reps: usize, seed: u64) -> Result<(Table, Table)> {
    let s = limit_density_samples(&DiscreteInit::unit(), n, reps, seed)?;
    let mut right = Table::new(["bin_left", "bin_right", "count", "density", "reference"]);
    for b in s.hist_scaled.bins() {
        let reference = (Target::Gamma2.cdf(b.right) - Target::Gamma2.cdf(b.left)) / (b.right - b.left);
        right.push(vec![b.left, b.right, b.count as f64, b.density, reference]);
    }
    let logs = &s.log_2m;
    let est = Estimate::from_samples(logs.iter().copied());
    let sd = est.se * (logs.len() as f64).sqrt();
    let raw = |k: i32| logs.iter().map(|l| (k as f64 * l).exp()).sum::<f64>() / logs.len() as f64;
    // 2M = exp(c + G), so ln(2M) - c is Gamma(k, theta)
    let fit = loggamma_fit(raw(1), raw(2), raw(3)).ok();
    let hist = crate::stats::histogram(logs, -1.5, 1.5, 0.05)?;
    let mut left = Table::new(["bin_left", "bin_right", "count", "density", "normal", "log_gamma"]);
    for b in hist.bins() {
        let y = 0.5 * (b.left + b.right);
        let normal = (-(y - est.mean).powi(2) / (2.0 * sd * sd)).exp() / (sd * (2.0 * std::f64::consts::PI).sqrt());
        let gamma = fit.as_ref().map_or(f64::NAN, |f| {
            let z = y - f.c;
            if z <= 0.0 {
                0.0
            } else {
                ((f.k - 1.0) * z.ln() - z / f.theta - ln_gamma(f.k) - f.k * f.theta.ln()).exp()
            }
        });
        left.push(vec![b.left, b.right, b.count as f64, b.density, normal, gamma]);
    }
    Ok((left, right))
}

/// Figure 2: `K(p, 1)/p^2` on `p_grid`, followed by the continuized limit as `p -> 0`
/// (row with `p = 0`, `source = 1`).
pub fn figure2(p_grid: &[f64], n_max: usize) -> Result<Table> {
    let mut t = Table::new(["p", "k", "k_over_p2", "source"]);
    for &p in p_grid {
        let k = k_limit(&DiscreteInit::unit(), p, n_max)?.value;
        t.push(vec![p, k, k / (p * p), 0.0]);
    }
    t.push(vec![0.0, 0.0, named_constants().k_continuized_base, 1.0]);
    Ok(t)
}

/// Figure 3: `c_{m,n}/n^2` against `m/n` for each `n` in `ns`.
pub fn figure3(p: f64, ns: &[usize]) -> Result<Table> {
    crate::process::check_probability(p)?;
    let top = ns.iter().copied().max().ok_or_else(|| invalid("need at least one n"))?;
    let mut rows = vec![Vec::new(); ns.len()];
    for m in 1..=top {
        let row: Vec<f64> = ProductRow::new(&[1.0], p, m).take(top - m + 1).map(|(_, c)| c).collect();
        for (j, &n) in ns.iter().enumerate() {
            if n >= m {
                let nf = n as f64;
                rows[j].push(vec![nf, m as f64, m as f64 / nf, row[n - m] / (nf * nf)]);
            }
        }
    }
    let mut t = Table::new(["n", "m", "theta", "c_over_n2"]);
    rows.into_iter().flatten().for_each(|r| t.push(r));
    Ok(t)
}

/// Figure 4: oscillatory region `f < 0` over `(x, y) = (1 - A, 1 - B)` for fixed rates.
pub fn figure4(alpha: f64, beta: f64, xs: GridSpec, ys: GridSpec) -> Result<Table> {
    if !(alpha > 0.0 && beta > 0.0) {
        return Err(invalid("alpha and beta must be positive"));
    }
    let mut t = Table::new(["x", "y", "discriminant", "oscillatory", "growing"]);
    for x in xs.points() {
        for y in ys.points() {
            let f = oscillation_discriminant(alpha, beta, 1.0 - x, 1.0 - y);
            let growing = sigma_roots(alpha, beta, 1.0 - x, 1.0 - y)[0].re > 0.0;
            t.push(vec![x, y, f, flag(f < 0.0), flag(growing)]);
        }
    }
    Ok(t)
}

/// Figure 5: points `(x, y)` for which some rate ratio `beta/alpha` gives complex roots with
/// positive real part, next to the line-pair condition `(x-1)(y-1)(x+y-1) < 0`.
pub fn figure5(xs: GridSpec, ys: GridSpec) -> Result<Table> {
    // f and Re sigma are homogeneous in (alpha, beta), so a scan over the ratio suffices
    let ratios: Vec<f64> = (0..=800).map(|i| 10f64.powf(-4.0 + 8.0 * i as f64 / 800.0)).collect();
    let mut t = Table::new(["x", "y", "oscillatory_growing", "line_pair_condition"]);
    for x in xs.points() {
        for y in ys.points() {
            let hit =
                ratios.iter().any(|&r| oscillation_discriminant(1.0, r, 1.0 - x, 1.0 - y) < 0.0 && x + r * y < 0.0);
            t.push(vec![x, y, flag(hit), flag((x - 1.0) * (y - 1.0) * (x + y - 1.0) < 0.0)]);
        }
    }
    Ok(t)
}

/// Figure 6: second-moment exponent `alpha max{A^2 + B^2 - 1, 2(A + B - 1)}` over `(A, B)`.
pub fn figure6(alpha: f64, a_grid: GridSpec, b_grid: GridSpec) -> Result<Table> {
    if !(alpha > 0.0) {
        return Err(invalid("alpha must be positive"));
    }
    let mut t = Table::new(["A", "B", "inside_circle", "exponent", "increasing"]);
    for a in a_grid.points() {
        for b in b_grid.points() {
            let inside = (a - 1.0).powi(2) + (b - 1.0).powi(2) < 1.0;
            let e = alpha * (a * a + b * b - 1.0).max(2.0 * (a + b - 1.0));
            t.push(vec![a, b, flag(inside), e, flag(e > 0.0)]);
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure3_drop_at_diagonal() {
        let t = figure3(1.0, &[400]).unwrap();
        let c = t.column("c_over_n2").unwrap();
        let ratio = c[c.len() - 1] / c[c.len() - 2];
        assert!((ratio - 1.5).abs() < 0.03, "{ratio}");
    }

    #[test]
    fn figure6_circle_and_ulam_point() {
        let g = GridSpec::new(-1.0, 3.0, 5).unwrap();
        let t = figure6(1.0, g, g).unwrap();
        let row = t.rows.iter().find(|r| r[0] == 1.0 && r[1] == 1.0).unwrap();
        assert_eq!((row[2], row[3]), (1.0, 2.0));
    }

    #[test]
    fn figure5_inside_line_pair_region() {
        let g = GridSpec::new(-3.0, 3.0, 25).unwrap();
        let t = figure5(g, g).unwrap();
        assert!(t.rows.iter().any(|r| r[2] == 1.0));
        assert!(t.rows.iter().filter(|r| r[2] == 1.0).all(|r| r[3] == 1.0));
    }

    #[test]
    fn figure4_symmetric_rates_never_oscillate() {
        let g = GridSpec::new(-2.0, 2.0, 9).unwrap();
        assert!(figure4(1.0, 1.0, g, g).unwrap().rows.iter().all(|r| r[3] == 0.0));
        assert!(figure4(3.0, 1.0, g, g).unwrap().rows.iter().any(|r| r[3] == 1.0));
    }
}
