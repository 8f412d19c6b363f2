//! Scaled values against their Gamma(2, 1) and Exp(1) limits.

use ulam::process::DiscreteInit;
use ulam::stats::{limit_density_samples, wasserstein2, Target};

pub fn run_example() -> ulam::Result<()> {
    for n in [100, 1000] {
        let s = limit_density_samples(&DiscreteInit::unit(), n, 2000, 21)?;
        println!(
            "n = {n}: d2(X_n/(n M_(n-1)), Gamma2) = {:.4}, d2(X_U/(n M_n), Exp1) = {:.4}, max bin gap {:.3}",
            wasserstein2(&s.scaled, Target::Gamma2)?,
            wasserstein2(&s.single, Target::Exp1)?,
            s.hist_scaled.max_deviation(Target::Gamma2)
        );
    }
    Ok(())
}

fn main() -> ulam::Result<()> {
    run_example()
}
