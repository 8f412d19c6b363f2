use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::series;
use crate::error::{invalid, numerical, Result};
use crate::numerics::{dopri5, exp_weighted, OdeOptions, QuadOptions};
use crate::process::PathInit;

/// Controls the series bootstrap and the integrator used past the handover point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BootstrapOptions {
    pub t0: f64,
    pub series_order: usize,
    pub ode: OdeOptions,
}

impl Default for BootstrapOptions {
    fn default() -> Self {
        Self { t0: 0.5, series_order: 40, ode: OdeOptions::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondMomentState {
    pub t: f64,
    /// `E X(t)^2`
    pub q: f64,
    /// `int_0^t q`
    pub r: f64,
    /// `E S(t)^2`
    pub big_q: f64,
    pub big_q_prime: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThirdMomentState {
    pub t: f64,
    /// `alpha[j] = E X^j S^{3-j}`
    pub alpha: [f64; 4],
    /// `E S_2 S` with `S_2 = int X^2`
    pub beta2: f64,
    /// `E int_0^t X^3`
    pub beta3: f64,
    /// `E X S_2`
    pub gamma1: f64,
}

impl ThirdMomentState {
    pub fn third_moment(&self) -> f64 {
        self.alpha[3]
    }
}

pub(super) fn check_positive_grid(grid: &[f64]) -> Result<()> {
    if grid.iter().any(|t| !t.is_finite() || *t <= 0.0) {
        return Err(invalid("time grid must be positive and finite"));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("time grid must be strictly increasing"));
    }
    Ok(())
}

fn bootstrap<const N: usize>(
    grid: &[f64],
    opts: BootstrapOptions,
    series_at: impl Fn(f64) -> [f64; N],
    rhs: impl FnMut(f64, &[f64; N]) -> [f64; N],
) -> Result<Vec<[f64; N]>> {
    check_positive_grid(grid)?;
    if opts.t0 <= 0.0 {
        return Err(invalid("handover point must be positive"));
    }
    let split = grid.partition_point(|&t| t <= opts.t0);
    let mut out: Vec<[f64; N]> = grid[..split].iter().map(|&t| series_at(t)).collect();
    if split < grid.len() {
        out.extend(dopri5(rhs, opts.t0, series_at(opts.t0), &grid[split..], opts.ode)?);
    }
    Ok(out)
}

/// Mean of the continuized process started from a path on `[0, tau]`.
pub fn mean_continuized(init: &PathInit, t: f64) -> Result<f64> {
    let tau = init.tau();
    if !(t >= tau) || !t.is_finite() {
        return Err(invalid(format!("t = {t} must be at least tau = {tau}")));
    }
    let x_tau = init.end_value();
    if tau == 0.0 {
        return Ok(x_tau * (1.0 + t));
    }
    if t == tau {
        return Ok(x_tau);
    }
    // C e^{-tau} / (tau (1 + tau)) fixed by the jump condition at tau
    let jump = 2.0 * init.integral_to(tau) / tau - (2.0 + tau) / (1.0 + tau) * x_tau;
    let tail = exp_weighted(|u| 1.0 / ((tau + u) * (1.0 + tau + u).powi(2)), t - tau, QuadOptions::default())?;
    Ok((1.0 + t) * (x_tau / (1.0 + tau) + tau * (1.0 + tau) * jump * tail.value))
}

/// `(q, R, Q, Q')` for the base continuized process (`tau = 0`, `x(0) = 1`) on `grid`.
pub fn second_moment_continuized_base(grid: &[f64]) -> Result<Vec<SecondMomentState>> {
    second_moment_continuized_base_with(grid, BootstrapOptions::default())
}

pub fn second_moment_continuized_base_with(grid: &[f64], opts: BootstrapOptions) -> Result<Vec<SecondMomentState>> {
    let order = opts.series_order;
    let states = bootstrap(
        grid,
        opts,
        |t| series::second_moment_state(t, order),
        |t, y: &[f64; 4]| {
            let [q, r, big, big_p] = *y;
            [-q + 2.0 * r / t + 2.0 * big / (t * t), q, big_p, -big_p + 2.0 * q + 4.0 * big / t]
        },
    )?;
    Ok(grid
        .iter()
        .zip(states)
        .map(|(&t, [q, r, big_q, big_q_prime])| SecondMomentState { t, q, r, big_q, big_q_prime })
        .collect())
}

/// `E X(s) X(t)` for the base continuized process, from the second-moment state at `s`.
pub fn product_moment_from_state(state: &SecondMomentState, t: f64) -> Result<f64> {
    let s = state.t;
    if !(t >= s) || !t.is_finite() {
        return Err(invalid(format!("need s <= t, got s = {s}, t = {t}")));
    }
    let slope = (1.0 + s) * state.big_q_prime - (2.0 + s) * s * state.q;
    let tail = exp_weighted(|u| 1.0 / ((s + u) * (1.0 + s + u).powi(2)), t - s, QuadOptions::default())?;
    Ok((1.0 + t) * (state.q / (1.0 + s) + slope * tail.value))
}

pub fn product_moment_continuized(s: f64, t: f64) -> Result<f64> {
    if !(s > 0.0 && s <= t) {
        return Err(invalid(format!("need 0 < s <= t, got s = {s}, t = {t}")));
    }
    let state = second_moment_continuized_base(&[s])?[0];
    product_moment_from_state(&state, t)
}

/// The seven-dimensional third-moment system for the base continuized process.
pub fn third_moment_continuized_base(grid: &[f64]) -> Result<Vec<ThirdMomentState>> {
    third_moment_continuized_base_with(grid, BootstrapOptions::default())
}

pub fn third_moment_continuized_base_with(grid: &[f64], opts: BootstrapOptions) -> Result<Vec<ThirdMomentState>> {
    let order = opts.series_order;
    let states = bootstrap(
        grid,
        opts,
        |t| series::third_moment_state(t, order),
        |t, y: &[f64; 7]| {
            let [a0, a1, a2, a3, b2, b3, g1] = *y;
            let t2 = t * t;
            [
                3.0 * a1,
                -a1 + 2.0 * a2 + 2.0 * a0 / t,
                -a2 + a3 + 2.0 * b2 / t + 2.0 * a0 / t2,
                -a3 + 2.0 * b3 / t + 6.0 * b2 / t2,
                a2 + g1,
                a3,
                -g1 + a3 + 2.0 * b2 / t,
            ]
        },
    )?;
    Ok(grid
        .iter()
        .zip(states)
        .map(|(&t, [a0, a1, a2, a3, beta2, beta3, gamma1])| ThirdMomentState {
            t,
            alpha: [a0, a1, a2, a3],
            beta2,
            beta3,
            gamma1,
        })
        .collect())
}

/// Estimate of `lim q(t)/t^2` from a least-squares fit of `q` on `[t_max/5, t_max]` to
/// `{t^2, t ln t, t, ln t, 1, 1/t}`, which absorbs the slowly decaying `ln t / t` correction.
pub fn continuized_k_fit(t_max: f64) -> Result<f64> {
    if !(t_max >= 50.0) {
        return Err(invalid("t_max must be at least 50"));
    }
    let points = 60;
    let grid: Vec<f64> = (0..points).map(|i| t_max * (0.2 + 0.8 * i as f64 / (points - 1) as f64)).collect();
    let states = second_moment_continuized_base(&grid)?;
    let design = DMatrix::from_fn(points, 6, |i, j| {
        let x = grid[i] / t_max;
        let l = grid[i].ln();
        [x * x, x * l / t_max, x / t_max, l / (t_max * t_max), 1.0 / (t_max * t_max), 1.0 / (x * t_max.powi(3))][j]
    });
    let rhs = DVector::from_iterator(points, states.iter().map(|s| s.q / (t_max * t_max)));
    let coef =
        design.svd(true, true).solve(&rhs, 1e-15).map_err(|e| numerical(format!("least-squares fit failed: {e}")))?;
    Ok(coef[0])
}
