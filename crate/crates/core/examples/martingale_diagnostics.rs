//! Ensemble convergence diagnostics for the base martingale on a dyadic ladder.

use ulam::martingale::{base_martingale, diagnose};
use ulam::process::{simulate_discrete_with, DiscreteInit};
use ulam::stats::ensemble_map;

pub fn run_example() -> ulam::Result<()> {
    let ladder = [100usize, 200, 400, 800];
    let init = DiscreteInit::unit();
    let samples = ensemble_map(2000, |k| {
        let m = base_martingale(&simulate_discrete_with(&init, 1.0, 800, 17, k)?)?;
        Ok(ladder.iter().map(|&n| m.at(n).unwrap_or(f64::NAN)).collect())
    })?;
    let index: Vec<f64> = ladder.iter().map(|&n| n as f64).collect();
    let d = diagnose(&index, &samples)?;
    println!("means {:?}", d.means);
    println!("constant within 3 SE: {}", d.constant_means);
    println!("E(M_2n - M_n)^2 = {:?}, ratios {:?}", d.cauchy, d.cauchy_ratios);
    Ok(())
}

fn main() -> ulam::Result<()> {
    run_example()
}
