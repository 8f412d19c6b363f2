//! Mean of the generalized continuized process and its sigma exponents.

use ulam::asymptotics::empirical_exponent;
use ulam::continuous::{generalized_mean_ode, sigma_roots};

pub fn run_example() -> ulam::Result<()> {
    let grid: Vec<f64> = (1..=200).map(|i| 5.0 * i as f64).collect();
    for (alpha, beta, a, b) in [(1.0, 1.0, 1.0, 1.0), (8.0, 0.5, 1.0, 1.0), (1.5, 0.7, 1.2, 0.3)] {
        let m = generalized_mean_ode(alpha, beta, a, b, &grid)?;
        let fit = empirical_exponent(&grid, &m.m, 0.5)?;
        let sigma = sigma_roots(alpha, beta, a, b);
        println!(
            "alpha {alpha}, beta {beta}, A {a}, B {b}: m(1000) = {:.4e}, slope {:.3}, sigma = {:.3} / {:.3}",
            m.m[199], fit.slope, sigma[0], sigma[1]
        );
    }
    Ok(())
}

fn main() -> ulam::Result<()> {
    run_example()
}
