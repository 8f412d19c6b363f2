//! The martingales of the four process variants along single trajectories.

use ulam::martingale::{base_martingale, continuized_martingale, generalized_discrete_martingale, p_martingale};
use ulam::process::{simulate_continuized, simulate_discrete, simulate_weighted, DiscreteInit, PathInit, ProcessSpec};

pub fn run_example() -> ulam::Result<()> {
    let init = DiscreteInit::unit();
    let base = base_martingale(&simulate_discrete(&init, 1.0, 10_000, 5)?)?;
    println!("base: M_100 = {:.4}, M_10000 = {:.4}", base.at(100).unwrap_or(f64::NAN), base.last().unwrap_or(f64::NAN));

    let p = p_martingale(&simulate_discrete(&init, 0.5, 10_000, 5)?, 0.5, 1e-12)?;
    let a = p.coeff_a.as_ref().expect("p-adding coefficients");
    println!("p = 0.5: M_10000 = {:.4}, A_10000 = {:.5}", p.last().unwrap_or(f64::NAN), a[a.len() - 1]);

    let g = generalized_discrete_martingale(&simulate_weighted(&init, 1.0, 2.0, 10_000, 5)?, 1.0, 2.0)?;
    println!("A = 1, B = 2: M_10000 = {:.4}", g.last().unwrap_or(f64::NAN));

    let path = simulate_continuized(&PathInit::point(1.0)?, &ProcessSpec::continuized_base(), 200.0, 5)?;
    let c = continuized_martingale(&path, &[50.0, 100.0, 200.0], 1e-10)?;
    println!("continuized: M(t) = {:?}, A(200) = {:.5}", c.values, c.coeff_a.as_ref().expect("coefficients")[2]);
    Ok(())
}

fn main() -> ulam::Result<()> {
    run_example()
}
