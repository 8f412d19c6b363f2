//! Simulate the discrete adding process and compare an ensemble mean with `E X_n = n x_1`.

use ulam::process::{simulate_discrete, DiscreteInit, InitialCondition, ProcessSpec};
use ulam::stats::mc_ensemble;

pub fn run_example() -> ulam::Result<()> {
    let init = DiscreteInit::unit();
    let path = simulate_discrete(&init, 1.0, 20, 42)?;
    println!("X_1..X_20 = {:?}", path.values());

    let half = simulate_discrete(&init, 0.5, 20, 42)?;
    println!("p = 0.5 path repeats values: {:?}", half.values());

    let summary = mc_ensemble(&ProcessSpec::base(), &InitialCondition::Discrete(init), &[10.0, 100.0], 2000, 7)?;
    for row in &summary.rows {
        println!("n = {:>4}: mean X = {:.3} +- {:.3} (exact {})", row.index, row.x.mean, row.x.se, row.index);
    }
    Ok(())
}

fn main() -> ulam::Result<()> {
    run_example()
}
