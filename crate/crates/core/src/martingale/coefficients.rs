use serde::Serialize;

use super::shifted_exp_integral;
use crate::error::{invalid, Result};

/// A truncated series value with a certified bound on the omitted tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bounded {
    pub value: f64,
    pub error: f64,
}

impl Bounded {
    pub fn interval(&self) -> (f64, f64) {
        (self.value, self.value + self.error)
    }
}

/// `A_n, B_n` for `n` in `n_min..=n_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PCoefficients {
    pub n_min: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub a_error: Vec<f64>,
    pub b_error: Vec<f64>,
}

fn check(p: f64, tol: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(invalid(format!("p must lie strictly between 0 and 1, got {p}")));
    }
    if !(tol > 0.0) {
        return Err(invalid(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

// a_k = nu^{-k} ga(k), b_k = nu^{-k} gb(k)
fn ga(k: f64, p: f64) -> f64 {
    k * (1.0 - p + k * p) * (1.0 + k * p)
}

fn gb(k: f64, p: f64) -> f64 {
    k * (k + 1.0) * (2.0 - p + k * p) * (2.0 + k * p)
}

/// `sum_{k >= n} a_n / a_k`, stopping once the geometric tail bound drops below `tol` times
/// the partial sum.
fn tail_sum(g: impl Fn(f64) -> f64, n: usize, p: f64, tol: f64) -> Bounded {
    let nu = 1.0 - p;
    let gn = g(n as f64);
    let mut sum = 0.0;
    let mut weight = 1.0;
    let mut k = n as f64;
    loop {
        let term = weight * gn / g(k);
        sum += term;
        let bound = term * nu / p;
        if bound < tol * sum {
            return Bounded { value: sum, error: bound };
        }
        weight *= nu;
        k += 1.0;
    }
}

/// `A_n` and `B_n` at a single `n`.
pub fn p_coefficients_at(p: f64, n: usize, tol: f64) -> Result<(Bounded, Bounded)> {
    check(p, tol)?;
    if n == 0 {
        return Err(invalid("index starts at 1"));
    }
    Ok((tail_sum(|k| ga(k, p), n, p, tol), tail_sum(|k| gb(k, p), n, p, tol)))
}

/// Coefficients along `n_min..=n_max`: the tail sum at `n_max`, then the backward recursion
/// `A_n = 1 + nu ga(n)/ga(n+1) A_{n+1}`, which contracts the tail error.
pub fn p_coefficients(p: f64, n_min: usize, n_max: usize, tol: f64) -> Result<PCoefficients> {
    if n_min == 0 || n_min > n_max {
        return Err(invalid(format!("need 1 <= n_min <= n_max, got {n_min}, {n_max}")));
    }
    let (top_a, top_b) = p_coefficients_at(p, n_max, tol)?;
    let nu = 1.0 - p;
    let len = n_max - n_min + 1;
    let mut out =
        PCoefficients { n_min, a: vec![0.0; len], b: vec![0.0; len], a_error: vec![0.0; len], b_error: vec![0.0; len] };
    out.a[len - 1] = top_a.value;
    out.b[len - 1] = top_b.value;
    out.a_error[len - 1] = top_a.error;
    out.b_error[len - 1] = top_b.error;
    for i in (0..len - 1).rev() {
        let n = (n_min + i) as f64;
        let ra = nu * ga(n, p) / ga(n + 1.0, p);
        let rb = nu * gb(n, p) / gb(n + 1.0, p);
        out.a[i] = 1.0 + ra * out.a[i + 1];
        out.b[i] = 1.0 + rb * out.b[i + 1];
        out.a_error[i] = ra * out.a_error[i + 1];
        out.b_error[i] = rb * out.b_error[i + 1];
    }
    Ok(out)
}

/// `A(t)` and `B(t)` of the continuized martingale by exponential-weight quadrature.
pub fn continuized_coefficients(t: f64, tol: f64) -> Result<(f64, f64)> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(invalid(format!("t must be positive, got {t}")));
    }
    if !(tol > 0.0) {
        return Err(invalid(format!("tolerance must be positive, got {tol}")));
    }
    let a = shifted_exp_integral(|v| t * (1.0 + t).powi(2) / (v * (1.0 + v).powi(2)), t, tol)?;
    let b = shifted_exp_integral(|v| (t * (2.0 + t) / (v * (2.0 + v))).powi(2), t, tol)?;
    Ok((a, b))
}
