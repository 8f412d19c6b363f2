//! Process specifications, initial histories and sample-path generation.

mod continuized;
mod discrete;

pub use continuized::{sample_selection_time, simulate_continuized, simulate_continuized_with, ContinuousTrajectory};
pub use discrete::{simulate_discrete, simulate_discrete_with, simulate_weighted, simulate_weighted_with, Trajectory};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Fixed history `x_1, .., x_r` of a discrete-time process.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteInit {
    values: Vec<f64>,
}

impl DiscreteInit {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(invalid("initial sequence must contain at least one value"));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(invalid(format!("initial values must be positive and finite, got {v}")));
        }
        Ok(Self { values })
    }

    pub fn unit() -> Self {
        Self { values: vec![1.0] }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Length `r` of the fixed history.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn last(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.values.iter().map(|v| v * factor).collect())
    }
}

/// Piecewise-constant initial path `x(t)` on `[0, tau]`.
///
/// `breakpoints[0] == 0` and value `values[i]` holds on `(breakpoints[i], breakpoints[i+1]]`
/// (left-continuous), with `x(0) = values[0]`. The last value extends to `tau`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathInit {
    tau: f64,
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl PathInit {
    pub fn new(tau: f64, breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if !(tau.is_finite() && tau >= 0.0) {
            return Err(invalid(format!("tau must be finite and non-negative, got {tau}")));
        }
        if breakpoints.is_empty() || breakpoints.len() != values.len() {
            return Err(invalid("path needs one value per breakpoint"));
        }
        if breakpoints[0] != 0.0 {
            return Err(invalid("first breakpoint must be 0"));
        }
        if breakpoints.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(invalid("breakpoints must be strictly increasing"));
        }
        if breakpoints.len() > 1 && breakpoints[breakpoints.len() - 1] >= tau {
            return Err(invalid("breakpoints must lie inside [0, tau)"));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(invalid(format!("path values must be positive and finite, got {v}")));
        }
        Ok(Self { tau, breakpoints, values })
    }

    /// Degenerate history `tau = 0` with the single value `x(0)`.
    pub fn point(value: f64) -> Result<Self> {
        Self::new(0.0, vec![0.0], vec![value])
    }

    pub fn constant(tau: f64, value: f64) -> Result<Self> {
        Self::new(tau, vec![0.0], vec![value])
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `x(tau)`, the value the process holds until its first jump.
    pub fn end_value(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// `x(u)` for `u` in `[0, tau]`.
    pub fn value_at(&self, u: f64) -> f64 {
        // number of breakpoints strictly below u selects the interval (b_i, b_{i+1}]
        let i = self.breakpoints.partition_point(|&b| b < u);
        self.values[i.saturating_sub(1)]
    }

    /// `int_0^u x(v) dv` for `u` in `[0, tau]`.
    pub fn integral_to(&self, u: f64) -> f64 {
        let u = u.min(self.tau);
        let mut acc = 0.0;
        for (i, &b) in self.breakpoints.iter().enumerate() {
            if b >= u {
                break;
            }
            let end = self.breakpoints.get(i + 1).copied().unwrap_or(self.tau).min(u);
            acc += self.values[i] * (end - b);
        }
        acc
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.tau, self.breakpoints.clone(), self.values.iter().map(|v| v * factor).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialCondition {
    Discrete(DiscreteInit),
    Path(PathInit),
}

/// Law of a weight coefficient `A` or `B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum CoefficientLaw {
    Constant { value: f64 },
    RandomTwoPoint { v1: f64, v2: f64, prob1: f64 },
}

impl CoefficientLaw {
    pub fn constant(value: f64) -> Self {
        CoefficientLaw::Constant { value }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            CoefficientLaw::Constant { value } => {
                if !value.is_finite() || value == 0.0 {
                    return Err(invalid(format!("constant weight must be finite and non-zero, got {value}")));
                }
            }
            CoefficientLaw::RandomTwoPoint { v1, v2, prob1 } => {
                if !(v1.is_finite() && v2.is_finite()) {
                    return Err(invalid("two-point weight values must be finite"));
                }
                if !(0.0..=1.0).contains(&prob1) {
                    return Err(invalid(format!("two-point probability must lie in [0, 1], got {prob1}")));
                }
            }
        }
        Ok(())
    }

    pub fn mean(&self) -> f64 {
        match *self {
            CoefficientLaw::Constant { value } => value,
            CoefficientLaw::RandomTwoPoint { v1, v2, prob1 } => prob1 * v1 + (1.0 - prob1) * v2,
        }
    }

    pub fn second_moment(&self) -> f64 {
        match *self {
            CoefficientLaw::Constant { value } => value * value,
            CoefficientLaw::RandomTwoPoint { v1, v2, prob1 } => prob1 * v1 * v1 + (1.0 - prob1) * v2 * v2,
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, CoefficientLaw::Constant { .. })
    }

    /// Constant laws consume no randomness.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            CoefficientLaw::Constant { value } => value,
            CoefficientLaw::RandomTwoPoint { v1, v2, prob1 } => {
                if crate::rng::unit(rng) < prob1 {
                    v1
                } else {
                    v2
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub a: CoefficientLaw,
    pub b: CoefficientLaw,
}

impl WeightSpec {
    pub fn unit() -> Self {
        Self::constant(1.0, 1.0)
    }

    pub fn constant(a: f64, b: f64) -> Self {
        Self { a: CoefficientLaw::constant(a), b: CoefficientLaw::constant(b) }
    }

    pub fn validate(&self) -> Result<()> {
        self.a.validate()?;
        self.b.validate()
    }

    pub fn is_unit(&self) -> bool {
        self.a == CoefficientLaw::constant(1.0) && self.b == CoefficientLaw::constant(1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum ProcessSpec {
    /// Ulam's adding process with update probability `p`; `p = 1` is the base process.
    DiscreteAdding { p: f64 },
    /// Discrete-time weighted adding `X_{n+1} = a X_U + b X_V`.
    DiscreteWeighted { a: f64, b: f64 },
    /// Poisson-regulated adding with power-law selection of past times.
    Continuized { alpha: f64, beta: f64, weights: WeightSpec },
}

impl ProcessSpec {
    pub fn base() -> Self {
        ProcessSpec::DiscreteAdding { p: 1.0 }
    }

    pub fn continuized_base() -> Self {
        ProcessSpec::Continuized { alpha: 1.0, beta: 1.0, weights: WeightSpec::unit() }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ProcessSpec::DiscreteAdding { p } => check_probability(p),
            ProcessSpec::DiscreteWeighted { a, b } => {
                if !(a.is_finite() && b.is_finite()) || a == 0.0 || b == 0.0 {
                    return Err(invalid("weights must be finite and non-zero"));
                }
                Ok(())
            }
            ProcessSpec::Continuized { alpha, beta, weights } => {
                if !(alpha.is_finite() && alpha > 0.0) {
                    return Err(invalid(format!("alpha must be positive, got {alpha}")));
                }
                if !(beta.is_finite() && beta > 0.0) {
                    return Err(invalid(format!("beta must be positive, got {beta}")));
                }
                weights.validate()
            }
        }
    }

    /// True for the uniform-selection, unit-weight continuized process.
    pub fn is_continuized_base(&self) -> bool {
        matches!(*self, ProcessSpec::Continuized { alpha, beta, weights } if alpha == 1.0 && beta == 1.0 && weights.is_unit())
    }
}

pub fn check_probability(p: f64) -> Result<()> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(invalid(format!("p must lie in (0, 1], got {p}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_init_rejects_bad_values() {
        assert!(DiscreteInit::new(vec![]).is_err());
        assert!(DiscreteInit::new(vec![1.0, 0.0]).is_err());
        assert!(DiscreteInit::new(vec![1.0, -2.0]).is_err());
        assert!(DiscreteInit::new(vec![1.0, f64::NAN]).is_err());
        let init = DiscreteInit::new(vec![1.0, 2.0]).unwrap();
        assert_eq!(init.sum(), 3.0);
        assert_eq!(init.sum_of_squares(), 5.0);
    }

    #[test]
    fn path_lookup_is_left_continuous() {
        let path = PathInit::new(3.0, vec![0.0, 1.0, 2.0], vec![1.0, 2.0, 4.0]).unwrap();
        assert_eq!(path.value_at(0.0), 1.0);
        assert_eq!(path.value_at(0.5), 1.0);
        assert_eq!(path.value_at(1.0), 1.0);
        assert_eq!(path.value_at(1.0 + 1e-12), 2.0);
        assert_eq!(path.value_at(2.5), 4.0);
        assert_eq!(path.end_value(), 4.0);
        assert!((path.integral_to(3.0) - 7.0).abs() < 1e-15);
        assert!((path.integral_to(1.5) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn path_validation() {
        assert!(PathInit::new(-1.0, vec![0.0], vec![1.0]).is_err());
        assert!(PathInit::new(1.0, vec![0.0, 0.0], vec![1.0, 1.0]).is_err());
        assert!(PathInit::new(1.0, vec![0.0, 1.0], vec![1.0, 1.0]).is_err());
        assert!(PathInit::new(1.0, vec![0.5], vec![1.0]).is_err());
        assert!(PathInit::new(1.0, vec![0.0], vec![0.0]).is_err());
        let p = PathInit::point(2.0).unwrap();
        assert_eq!(p.tau(), 0.0);
        assert_eq!(p.end_value(), 2.0);
    }

    #[test]
    fn spec_validation() {
        assert!(ProcessSpec::DiscreteAdding { p: 0.0 }.validate().is_err());
        assert!(ProcessSpec::DiscreteAdding { p: 1.5 }.validate().is_err());
        assert!(ProcessSpec::DiscreteAdding { p: 1.0 }.validate().is_ok());
        let bad = ProcessSpec::Continuized { alpha: 0.0, beta: 1.0, weights: WeightSpec::unit() };
        assert!(bad.validate().is_err());
        let bad = ProcessSpec::Continuized { alpha: 1.0, beta: 1.0, weights: WeightSpec::constant(0.0, 1.0) };
        assert!(bad.validate().is_err());
        assert!(ProcessSpec::continuized_base().is_continuized_base());
    }

    #[test]
    fn two_point_law_moments() {
        let law = CoefficientLaw::RandomTwoPoint { v1: 2.0, v2: 0.0, prob1: 0.25 };
        assert!(law.validate().is_ok());
        assert_eq!(law.mean(), 0.5);
        assert_eq!(law.second_moment(), 1.0);
        assert!(CoefficientLaw::RandomTwoPoint { v1: 1.0, v2: 0.0, prob1: 1.5 }.validate().is_err());
    }
}
