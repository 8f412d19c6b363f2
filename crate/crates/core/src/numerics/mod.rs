//! Numerical building blocks: an adaptive Runge-Kutta integrator and adaptive quadrature.

mod ode;
mod quad;

pub use ode::{dopri5, OdeOptions};
pub use quad::{exp_weighted, integrate, QuadOptions, Quadrature, EXP_CUTOFF};
