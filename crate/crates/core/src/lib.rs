//! Ulam's history-dependent random adding process and its variants.
//!
//! The crate pairs Monte Carlo simulation with exact moment solvers:
//!
//! * [`process`] specifications and sample paths (discrete, p-adding, continuized, weighted);
//! * [`exact`] forward iteration of the discrete moment recursions, with a rational oracle;
//! * [`continuous`] ODE moments of the continuized processes and the growth classifier;
//! * [`asymptotics`] characteristic roots of polynomial-coefficient recurrences;
//! * [`martingale`] normalized martingales and their convergence diagnostics;
//! * [`stats`] ensembles, Wasserstein distances to the limit laws and a log-gamma fit.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod cli;
pub mod continuous;
pub mod error;
pub mod exact;
pub mod figures;
pub mod martingale;
pub mod numerics;
pub mod output;
pub mod process;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
