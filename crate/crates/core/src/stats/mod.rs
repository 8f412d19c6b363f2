//! Monte Carlo ensembles, limit-law distances and the log-gamma moment fit.

mod density;
mod distance;
mod ensemble;
mod fit;

pub use density::{histogram, limit_density_samples, Histogram, LimitSamples};
pub use distance::{exp1_quantile, gamma2_cdf, gamma2_pdf, gamma2_quantile, wasserstein2, Target};
pub use ensemble::{ensemble_map, mc_ensemble, EnsembleRow, EnsembleSummary, Estimate};
pub use fit::{limit_moments_2m, loggamma_fit, FitReport};
