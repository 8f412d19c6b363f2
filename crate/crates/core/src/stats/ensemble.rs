use rayon::prelude::*;
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{invalid, Result};
use crate::martingale::{continuized_coefficients, p_coefficients};
use crate::process::{
    simulate_continuized_with, simulate_discrete_with, simulate_weighted_with, InitialCondition, ProcessSpec,
};

/// Runs `f(stream)` for `stream in 0..reps` in parallel; results come back in stream order.
pub fn ensemble_map<T: Send>(reps: usize, f: impl Fn(u64) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    (0..reps as u64).into_par_iter().map(f).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub se: f64,
}

impl Estimate {
    pub fn from_samples(xs: impl Iterator<Item = f64> + Clone) -> Self {
        let n = xs.clone().count() as f64;
        let mean = xs.clone().sum::<f64>() / n;
        let var = xs.map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        Self { mean, se: (var / n).sqrt() }
    }

    /// `|mean - target| <= k se`.
    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.mean - target).abs() <= k * self.se
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleRow {
    pub index: f64,
    pub x: Estimate,
    pub x2: Estimate,
    pub x3: Estimate,
    pub m: Option<Estimate>,
    pub m2: Option<Estimate>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleSummary {
    pub reps: usize,
    pub seed: u64,
    pub spec: ProcessSpec,
    pub rows: Vec<EnsembleRow>,
}

impl EnsembleSummary {
    pub fn row(&self, index: f64) -> Option<&EnsembleRow> {
        self.rows.iter().find(|r| r.index == index)
    }
}

fn discrete_grid(grid: &[f64]) -> Result<Vec<usize>> {
    grid.iter()
        .map(|&g| {
            if g >= 1.0 && g.fract() == 0.0 {
                Ok(g as usize)
            } else {
                Err(invalid(format!("discrete index {g} must be a positive integer")))
            }
        })
        .collect()
}

/// Martingale multipliers `(on S, on X)` at each grid index, when the variant has a martingale.
fn martingale_weights(spec: &ProcessSpec, grid: &[f64]) -> Result<Option<Vec<(f64, f64)>>> {
    Ok(match *spec {
        ProcessSpec::DiscreteAdding { p: 1.0 } => Some(grid.iter().map(|n| (1.0 / (n * (n + 1.0)), 0.0)).collect()),
        ProcessSpec::DiscreteAdding { p } => {
            let idx = discrete_grid(grid)?;
            let top = idx.iter().copied().max().unwrap_or(1);
            let c = p_coefficients(p, 1, top, 1e-13)?;
            Some(
                idx.iter()
                    .map(|&n| {
                        let nf = n as f64;
                        (p * c.a[n - 1] / (nf * (1.0 + nf * p)), (1.0 - p) * c.b[n - 1] / ((nf + 1.0) * (2.0 + nf * p)))
                    })
                    .collect(),
            )
        }
        ProcessSpec::DiscreteWeighted { a, b } if a + b > 1.0 => {
            Some(grid.iter().map(|&n| ((ln_gamma(n) - ln_gamma(n + a + b)).exp(), 0.0)).collect())
        }
        ProcessSpec::DiscreteWeighted { .. } => None,
        ProcessSpec::Continuized { .. } if spec.is_continuized_base() => Some(
            grid.iter()
                .map(|&t| {
                    let (a, b) = continuized_coefficients(t, 1e-10)?;
                    Ok((a / (t * (1.0 + t)), b / (t * (2.0 + t))))
                })
                .collect::<Result<_>>()?,
        ),
        ProcessSpec::Continuized { .. } => None,
    })
}

/// Simulates `reps` independent trajectories and summarizes moments and martingale values on
/// `grid` (indices `n` for discrete specs, times `t` for continuized ones).
pub fn mc_ensemble(
    spec: &ProcessSpec,
    init: &InitialCondition,
    grid: &[f64],
    reps: usize,
    seed: u64,
) -> Result<EnsembleSummary> {
    spec.validate()?;
    if reps < 2 {
        return Err(invalid("need at least two replicates"));
    }
    if grid.is_empty() || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("grid must be non-empty and strictly increasing"));
    }
    let weights = martingale_weights(spec, grid)?;
    let top = grid[grid.len() - 1];
    // per replicate: (X, S) at each grid point
    let samples: Vec<Vec<(f64, f64)>> = match (spec, init) {
        (ProcessSpec::Continuized { .. }, InitialCondition::Path(path)) => {
            if grid[0] < path.tau() || grid[0] <= 0.0 {
                return Err(invalid("continuized grid must start after tau and above 0"));
            }
            ensemble_map(reps, |k| {
                let tr = simulate_continuized_with(path, spec, top, seed, k)?;
                Ok(grid.iter().map(|&t| (tr.value_at(t), tr.integral_to(t))).collect())
            })?
        }
        (ProcessSpec::DiscreteAdding { p }, InitialCondition::Discrete(d)) => {
            let idx = discrete_grid(grid)?;
            ensemble_map(reps, |k| {
                let tr = simulate_discrete_with(d, *p, top as usize, seed, k)?;
                Ok(idx.iter().map(|&n| (tr.x(n), tr.s(n))).collect())
            })?
        }
        (ProcessSpec::DiscreteWeighted { a, b }, InitialCondition::Discrete(d)) => {
            let idx = discrete_grid(grid)?;
            ensemble_map(reps, |k| {
                let tr = simulate_weighted_with(d, *a, *b, top as usize, seed, k)?;
                Ok(idx.iter().map(|&n| (tr.x(n), tr.s(n))).collect())
            })?
        }
        _ => return Err(invalid("initial condition does not match the process variant")),
    };
    let rows = grid
        .iter()
        .enumerate()
        .map(|(i, &index)| {
            let xs = samples.iter().map(move |s| s[i].0);
            let ms = weights.as_ref().map(|w| {
                let (ws, wx) = w[i];
                samples.iter().map(move |s| ws * s[i].1 + wx * s[i].0)
            });
            EnsembleRow {
                index,
                x: Estimate::from_samples(xs.clone()),
                x2: Estimate::from_samples(xs.clone().map(|x| x * x)),
                x3: Estimate::from_samples(xs.map(|x| x * x * x)),
                m: ms.clone().map(Estimate::from_samples),
                m2: ms.map(|m| Estimate::from_samples(m.map(|v| v * v))),
            }
        })
        .collect();
    Ok(EnsembleSummary { reps, seed, spec: *spec, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::DiscreteInit;

    #[test]
    fn deterministic_and_unbiased() {
        let init = InitialCondition::Discrete(DiscreteInit::unit());
        let a = mc_ensemble(&ProcessSpec::base(), &init, &[10.0, 100.0], 4000, 9).unwrap();
        let b = mc_ensemble(&ProcessSpec::base(), &init, &[10.0, 100.0], 4000, 9).unwrap();
        assert_eq!(a, b);
        let row = a.row(100.0).unwrap();
        assert!(row.x.within(100.0, 4.0));
        assert!(row.m.unwrap().within(0.5, 4.0));
        assert!(mc_ensemble(&ProcessSpec::base(), &init, &[10.0], 1, 9).is_err());
        assert!(mc_ensemble(&ProcessSpec::base(), &init, &[10.5], 10, 9).is_err());
    }

    #[test]
    fn p_adding_martingale_mean() {
        let init = InitialCondition::Discrete(DiscreteInit::unit());
        let s = mc_ensemble(&ProcessSpec::DiscreteAdding { p: 0.5 }, &init, &[1.0, 50.0], 4000, 2).unwrap();
        let m1 = s.rows[0].m.unwrap().mean;
        assert!(s.rows[1].m.unwrap().within(m1, 4.0));
    }
}
