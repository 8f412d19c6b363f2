//! Moments of the continuized processes from their ordinary differential equations, the
//! sigma equation of the generalized process and its growth classification.

mod base;
mod generalized;
pub mod series;

use serde::Serialize;
use std::f64::consts::PI;

pub use base::{
    continuized_k_fit, mean_continuized, product_moment_continuized, product_moment_from_state,
    second_moment_continuized_base, second_moment_continuized_base_with, third_moment_continuized_base,
    third_moment_continuized_base_with, BootstrapOptions, SecondMomentState, ThirdMomentState,
};
pub use generalized::{
    classify_regions, classify_weights, generalized_mean_ode, generalized_mean_ode_with, oscillation_discriminant,
    sigma_roots, GeneralizedMean, GrowthReport, RegionLabel,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NamedConstants {
    /// `lim q_n / n^2` for the discrete base process, `sinh(pi) / (2 pi)`.
    pub k_discrete_base: f64,
    /// `lim q(t) / t^2` for the continuized base process, `cosh(pi sqrt(7) / 2) / (4 pi)`.
    pub k_continuized_base: f64,
    /// `E M^2 = K / 6` for the discrete base martingale limit.
    pub em2_discrete_base: f64,
}

impl NamedConstants {
    pub fn entries(&self) -> [(&'static str, f64); 3] {
        [
            ("K_discrete_base", self.k_discrete_base),
            ("K_continuized_base", self.k_continuized_base),
            ("EM2_discrete_base", self.em2_discrete_base),
        ]
    }
}

pub fn named_constants() -> NamedConstants {
    let k = PI.sinh() / (2.0 * PI);
    NamedConstants {
        k_discrete_base: k,
        k_continuized_base: (PI * 7f64.sqrt() / 2.0).cosh() / (4.0 * PI),
        em2_discrete_base: k / 6.0,
    }
}
