//! Exact moments of the discrete-time processes by forward iteration of their
//! moment recursions. Every iterator is generic over [`Scalar`], so the same
//! code runs in `f64` and in exact rational arithmetic.

mod higher;
mod mean;
mod oracle;
mod product;
mod scalar;
mod second;

pub use higher::{fourth_moment_exact, fourth_moments, third_moment_exact, third_moments, FourthState, ThirdState};
pub use mean::{mean_closed_form, mean_exact, MeanIter};
pub use oracle::{enumerate_oracle, PathDistribution, OUTCOME_BUDGET};
pub use product::{product_moment_closed_form, product_moment_exact, ProductRow};
pub use scalar::Scalar;
pub use second::{
    casoratian_base, casoratian_closed, k_closed_form, k_limit, second_moment_exact, KEstimate, SecondMomentIter,
    SecondMoments,
};

use serde::Serialize;

use crate::error::Result;
use crate::process::{check_probability, DiscreteInit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentKind {
    Mean,
    Second,
    Third,
    Fourth,
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    ForwardSystem,
    RationalOracle,
    Enumeration,
    Ode,
    MonteCarlo,
}

/// Index -> moment table with provenance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentSeries {
    pub kind: MomentKind,
    pub method: Method,
    pub index: Vec<f64>,
    pub values: Vec<f64>,
    pub std_errors: Option<Vec<f64>>,
    pub p: Option<f64>,
    pub init: Option<Vec<f64>>,
    /// Fixed first index for product moments.
    pub m: Option<usize>,
}

impl MomentSeries {
    fn discrete(
        kind: MomentKind,
        points: impl Iterator<Item = (usize, f64)>,
        p: Option<f64>,
        init: Option<&DiscreteInit>,
    ) -> Self {
        let (index, values): (Vec<f64>, Vec<f64>) = points.map(|(n, v)| (n as f64, v)).unzip();
        Self {
            kind,
            method: Method::ForwardSystem,
            index,
            values,
            std_errors: None,
            p,
            init: init.map(|i| i.values().to_vec()),
            m: None,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at index `n`, if present.
    pub fn at(&self, n: f64) -> Option<f64> {
        self.index.iter().position(|&i| i == n).map(|k| self.values[k])
    }

    pub fn last(&self) -> Option<(f64, f64)> {
        Some((*self.index.last()?, *self.values.last()?))
    }
}

pub fn mean_series(init: &DiscreteInit, p: f64, n_max: usize) -> Result<MomentSeries> {
    check_probability(p)?;
    mean::check_index(init, n_max)?;
    let it = MeanIter::new(init.values(), p).take(n_max - init.len() + 1);
    Ok(MomentSeries::discrete(MomentKind::Mean, it, Some(p), Some(init)))
}

pub fn second_moment_series(init: &DiscreteInit, p: f64, n_max: usize) -> Result<MomentSeries> {
    check_probability(p)?;
    mean::check_index(init, n_max)?;
    let it = SecondMomentIter::new(init.values(), p).take(n_max - init.len() + 1).map(|s| (s.n, s.q));
    Ok(MomentSeries::discrete(MomentKind::Second, it, Some(p), Some(init)))
}

/// Third moments of the base process from `x_1 = 1`.
pub fn third_moment_series(n_max: usize) -> MomentSeries {
    MomentSeries::discrete(
        MomentKind::Third,
        third_moments::<f64>().take(n_max),
        Some(1.0),
        Some(&DiscreteInit::unit()),
    )
}

/// Fourth moments of the base process from `x_1 = 1`.
pub fn fourth_moment_series(n_max: usize) -> MomentSeries {
    MomentSeries::discrete(
        MomentKind::Fourth,
        fourth_moments::<f64>().take(n_max),
        Some(1.0),
        Some(&DiscreteInit::unit()),
    )
}

pub fn product_moment_series(init: &DiscreteInit, p: f64, m: usize, n_max: usize) -> Result<MomentSeries> {
    product_moment_exact(init, p, m, m.max(n_max))?;
    let it = ProductRow::new(init.values(), p, m).take(n_max - m + 1);
    let mut s = MomentSeries::discrete(MomentKind::Product, it, Some(p), Some(init));
    s.m = Some(m);
    Ok(s)
}
