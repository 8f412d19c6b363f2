//! Martingales built from the running sums and their convergence diagnostics.

mod coefficients;
mod diagnostics;

use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{invalid, Result};
use crate::numerics::{exp_weighted, QuadOptions};
use crate::process::{ContinuousTrajectory, ProcessSpec, Trajectory};

pub use coefficients::{continuized_coefficients, p_coefficients, p_coefficients_at, Bounded, PCoefficients};
pub use diagnostics::{diagnose, ConvergenceDiagnostics};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum MartingaleVariant {
    Base,
    PAdding { p: f64 },
    Continuized,
    GeneralizedDiscrete { a: f64, b: f64 },
}

/// Martingale values along an index grid (`n` or `t`), with the coefficient sequences used.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MartingaleSeries {
    pub variant: MartingaleVariant,
    pub index: Vec<f64>,
    pub values: Vec<f64>,
    /// `A_n` or `A(t)` where the variant uses one.
    pub coeff_a: Option<Vec<f64>>,
    pub coeff_b: Option<Vec<f64>>,
    /// Certified upper bound on the truncation error of `coeff_a` / `coeff_b`.
    pub coeff_error: Option<Vec<f64>>,
}

impl MartingaleSeries {
    pub fn last(&self) -> Option<f64> {
        self.values.last().copied()
    }

    /// Value at integer index `n` for discrete variants.
    pub fn at(&self, n: usize) -> Option<f64> {
        let first = *self.index.first()? as usize;
        self.values.get(n.checked_sub(first)?).copied()
    }
}

fn first_index(traj: &Trajectory) -> usize {
    traj.init().len().max(1)
}

/// `M_n = S_n / (n (n + 1))` for the base process.
pub fn base_martingale(traj: &Trajectory) -> Result<MartingaleSeries> {
    if *traj.spec() != ProcessSpec::base() {
        return Err(invalid("base martingale needs a p = 1 trajectory"));
    }
    let r = first_index(traj);
    let index: Vec<f64> = (r..=traj.len()).map(|n| n as f64).collect();
    let values = (r..=traj.len()).map(|n| traj.s(n) / (n as f64 * (n as f64 + 1.0))).collect();
    Ok(MartingaleSeries {
        variant: MartingaleVariant::Base,
        index,
        values,
        coeff_a: None,
        coeff_b: None,
        coeff_error: None,
    })
}

/// `M_n = p A_n S_n / (n (1 + np)) + nu B_n X_n / ((n + 1)(2 + np))` for the p-adding process.
pub fn p_martingale(traj: &Trajectory, p: f64, tol: f64) -> Result<MartingaleSeries> {
    match *traj.spec() {
        ProcessSpec::DiscreteAdding { p: q } if q == p => {}
        _ => return Err(invalid(format!("trajectory was not generated by the p-adding process with p = {p}"))),
    }
    let r = first_index(traj);
    let c = p_coefficients(p, r, traj.len(), tol)?;
    let nu = 1.0 - p;
    let values = (r..=traj.len())
        .zip(c.a.iter().zip(&c.b))
        .map(|(n, (a, b))| {
            let nf = n as f64;
            p * a * traj.s(n) / (nf * (1.0 + nf * p)) + nu * b * traj.x(n) / ((nf + 1.0) * (2.0 + nf * p))
        })
        .collect();
    Ok(MartingaleSeries {
        variant: MartingaleVariant::PAdding { p },
        index: (r..=traj.len()).map(|n| n as f64).collect(),
        values,
        coeff_error: Some(c.a_error.iter().zip(&c.b_error).map(|(x, y)| x.max(*y)).collect()),
        coeff_a: Some(c.a),
        coeff_b: Some(c.b),
    })
}

/// `M(t) = A(t) S(t) / (t (1 + t)) + B(t) X(t) / (t (2 + t))` for the base continuized process.
pub fn continuized_martingale(traj: &ContinuousTrajectory, grid: &[f64], tol: f64) -> Result<MartingaleSeries> {
    if !traj.spec().is_continuized_base() {
        return Err(invalid("continuized martingale needs alpha = beta = 1 and unit weights"));
    }
    let tau = traj.init().tau();
    if grid.iter().any(|&t| !(t > 0.0 && t >= tau && t <= traj.t_max())) {
        return Err(invalid(format!("grid must lie in [max(tau, 0+), {}]", traj.t_max())));
    }
    let mut coeff_a = Vec::with_capacity(grid.len());
    let mut coeff_b = Vec::with_capacity(grid.len());
    let mut values = Vec::with_capacity(grid.len());
    for &t in grid {
        let (a, b) = continuized_coefficients(t, tol)?;
        values.push(a * traj.integral_to(t) / (t * (1.0 + t)) + b * traj.value_at(t) / (t * (2.0 + t)));
        coeff_a.push(a);
        coeff_b.push(b);
    }
    Ok(MartingaleSeries {
        variant: MartingaleVariant::Continuized,
        index: grid.to_vec(),
        values,
        coeff_a: Some(coeff_a),
        coeff_b: Some(coeff_b),
        coeff_error: None,
    })
}

/// `M_n = Gamma(n) / Gamma(n + A + B) S_n` for `X_{n+1} = A X_U + B X_V`.
pub fn generalized_discrete_martingale(traj: &Trajectory, a: f64, b: f64) -> Result<MartingaleSeries> {
    let matches = match *traj.spec() {
        ProcessSpec::DiscreteWeighted { a: x, b: y } => x == a && y == b,
        ProcessSpec::DiscreteAdding { p } => p == 1.0 && a == 1.0 && b == 1.0,
        ProcessSpec::Continuized { .. } => false,
    };
    if !matches {
        return Err(invalid(format!("trajectory was not generated with weights A = {a}, B = {b}")));
    }
    if !(a + b > 1.0) {
        return Err(invalid(format!("need A + B > 1, got {}", a + b)));
    }
    let r = first_index(traj);
    let values = (r..=traj.len())
        .map(|n| {
            let nf = n as f64;
            (ln_gamma(nf) - ln_gamma(nf + a + b)).exp() * traj.s(n)
        })
        .collect();
    Ok(MartingaleSeries {
        variant: MartingaleVariant::GeneralizedDiscrete { a, b },
        index: (r..=traj.len()).map(|n| n as f64).collect(),
        values,
        coeff_a: None,
        coeff_b: None,
        coeff_error: None,
    })
}

/// `e^t int_t^inf e^{-v} g(v) dv` as `int_0^inf e^{-s} g(t + s) ds`.
pub(crate) fn shifted_exp_integral(g: impl Fn(f64) -> f64, t: f64, tol: f64) -> Result<f64> {
    Ok(exp_weighted(|s| g(t + s), f64::INFINITY, QuadOptions { rel_tol: tol, ..Default::default() })?.value)
}
