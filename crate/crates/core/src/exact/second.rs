use std::f64::consts::PI;

use serde::Serialize;

use super::mean::check_index;
use super::scalar::{total, Scalar};
use crate::error::{invalid, Result};
use crate::process::{check_probability, DiscreteInit};

/// `q = E X_n^2`, `p = E S_n^2`, `w = E X_n S_{n-1}`, `t = sum_{k<=n} q_k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SecondMoments<S> {
    pub n: usize,
    pub q: S,
    pub p: S,
    pub w: S,
    pub t: S,
}

/// Forward iteration of the coupled `(q, p, w, t)` system from the forced state at `n = r`.
#[derive(Debug, Clone)]
pub struct SecondMomentIter<S> {
    state: SecondMoments<S>,
    prob: S,
    nu: S,
}

impl<S: Scalar> SecondMomentIter<S> {
    pub fn new(init: &[S], prob: S) -> Self {
        let r = init.len();
        let xr = init[r - 1].clone();
        let s_prev = total(&init[..r - 1]);
        let s = s_prev.clone() + xr.clone();
        let t = init.iter().cloned().fold(S::zero(), |a, x| a + x.clone() * x);
        let state = SecondMoments { n: r, q: xr.clone() * xr.clone(), p: s.clone() * s, w: xr * s_prev, t };
        let nu = S::one() - prob.clone();
        Self { state, prob, nu }
    }
}

impl<S: Scalar> Iterator for SecondMomentIter<S> {
    type Item = SecondMoments<S>;

    fn next(&mut self) -> Option<Self::Item> {
        let out = self.state.clone();
        let SecondMoments { n, q, p, w, t } = &self.state;
        let nn = S::from_count(*n);
        let two = S::from_int(2);
        let q1 = self.nu.clone() * q.clone()
            + self.prob.clone()
                * (two.clone() * t.clone() / nn.clone() + two.clone() * p.clone() / (nn.clone() * nn.clone()));
        let w1 = self.nu.clone() * (w.clone() + q.clone()) + two.clone() * self.prob.clone() * p.clone() / nn;
        let t1 = t.clone() + q1.clone();
        let p1 = p.clone() + two * w1.clone() + q1.clone();
        self.state = SecondMoments { n: n + 1, q: q1, p: p1, w: w1, t: t1 };
        Some(out)
    }
}

pub fn second_moment_exact(init: &DiscreteInit, p: f64, n: usize) -> Result<SecondMoments<f64>> {
    check_probability(p)?;
    check_index(init, n)?;
    Ok(SecondMomentIter::new(init.values(), p).nth(n - init.len()).expect("unbounded iterator"))
}

/// `W_n` by its first-order recursion from `W_0 = 1`.
pub fn casoratian_base(n: usize) -> f64 {
    (0..n).fold(1.0, |w, k| {
        let a = (k + 1) as f64;
        w * ((a + 1.0) * (a + 1.0) + 1.0) / (a * a)
    })
}

/// `W_n = ((n+1)^2 + 1)/2 * prod_{k<=n} (1 + 1/k^2)`.
pub fn casoratian_closed(n: usize) -> f64 {
    let a = (n + 1) as f64;
    0.5 * (a * a + 1.0) * (1..=n).map(|k| 1.0 + 1.0 / (k * k) as f64).product::<f64>()
}

/// Limit of `q_n / n^2` for the base process from an arbitrary history.
///
/// Casoratian solution of the second-order recurrence for `q_n`, which holds from
/// `n = r + 1`, so it is anchored at `q_{r+1}` and `q_{r+2}`.
pub fn k_closed_form(init: &DiscreteInit) -> f64 {
    let r = init.len() as f64;
    let s = init.sum();
    let t = init.sum_of_squares();
    let q1 = 2.0 * t / r + 2.0 * s * s / (r * r);
    let t1 = t + q1;
    let p1 = (r + 4.0) / r * s * s + q1;
    let q2 = 2.0 * t1 / (r + 1.0) + 2.0 * p1 / ((r + 1.0) * (r + 1.0));
    PI.sinh() / (2.0 * PI * casoratian_closed(init.len() + 1)) * ((r + 2.0) * q2 - (r + 3.0) * q1)
}

/// Extrapolated `lim q_n/n^2` for the p-adding process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KEstimate {
    pub value: f64,
    /// `q_n/n^2` at the largest index used.
    pub raw: f64,
    pub n_max: usize,
}

/// Fits `q_n/n^2 = K + a ln(n)/n + b/n` through three indices `n_max/4, n_max/2, n_max`.
pub fn k_limit(init: &DiscreteInit, p: f64, n_max: usize) -> Result<KEstimate> {
    check_probability(p)?;
    if n_max < 4 * init.len().max(100) {
        return Err(invalid(format!("n_max = {n_max} too small for extrapolation")));
    }
    let ns = [n_max / 4, n_max / 2, n_max];
    let mut ys = [0.0; 3];
    let mut next = 0;
    for st in SecondMomentIter::new(init.values(), p).take(n_max - init.len() + 1) {
        if st.n == ns[next] {
            ys[next] = st.q / (st.n as f64 * st.n as f64);
            next += 1;
            if next == 3 {
                break;
            }
        }
    }
    let rows: Vec<[f64; 3]> = ns.iter().map(|&n| [1.0, (n as f64).ln() / n as f64, 1.0 / n as f64]).collect();
    let m = nalgebra::Matrix3::from_fn(|i, j| rows[i][j]);
    let sol = m
        .lu()
        .solve(&nalgebra::Vector3::from_column_slice(&ys))
        .ok_or_else(|| crate::error::numerical("singular extrapolation system"))?;
    Ok(KEstimate { value: sol[0], raw: ys[2], n_max })
}
