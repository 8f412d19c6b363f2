//! Poisson-regulated version: jumps at rate 1, past times chosen by a power law.

use ulam::continuous::mean_continuized;
use ulam::process::{simulate_continuized, InitialCondition, PathInit, ProcessSpec, WeightSpec};
use ulam::stats::mc_ensemble;

pub fn run_example() -> ulam::Result<()> {
    let init = PathInit::point(1.0)?;
    let path = simulate_continuized(&init, &ProcessSpec::continuized_base(), 10.0, 3)?;
    println!("{} jumps up to t = 10, X(10) = {}", path.jumps_up_to(10.0), path.value_at(10.0));

    let summary =
        mc_ensemble(&ProcessSpec::continuized_base(), &InitialCondition::Path(init.clone()), &[5.0], 2000, 11)?;
    let row = &summary.rows[0];
    println!("E X(5): simulated {:.3} +- {:.3}, exact {}", row.x.mean, row.x.se, mean_continuized(&init, 5.0)?);

    // generalized process with faster selection and weights A = 0.5, B = 1.5
    let spec = ProcessSpec::Continuized { alpha: 2.0, beta: 1.0, weights: WeightSpec::constant(0.5, 1.5) };
    let g = simulate_continuized(&init, &spec, 10.0, 3)?;
    println!("generalized X(10) = {:.3}", g.value_at(10.0));
    Ok(())
}

fn main() -> ulam::Result<()> {
    run_example()
}
