//! Third moment of the continuized process from the seven-dimensional system.

use ulam::asymptotics::empirical_exponent;
use ulam::continuous::third_moment_continuized_base;

pub fn run_example() -> ulam::Result<()> {
    let grid: Vec<f64> = (1..=200).map(|i| 10.0 * i as f64).collect();
    let states = third_moment_continuized_base(&grid)?;
    let last = states.last().expect("non-empty grid");
    println!("E X(t)^3 / t^3 at t = {}: {:.4}", last.t, last.third_moment() / last.t.powi(3));
    let beta3: Vec<f64> = states.iter().map(|s| s.beta3).collect();
    let fit = empirical_exponent(&grid, &beta3, 0.5)?;
    println!("growth exponent of the integral: {:.3} +- {:.3}", fit.slope, fit.slope_se);
    Ok(())
}

fn main() -> ulam::Result<()> {
    run_example()
}
