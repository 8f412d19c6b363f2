//! Exact mean and second moment from the forward recursions, and the growth constant K.

use ulam::exact::{k_closed_form, k_limit, mean_closed_form, mean_exact, second_moment_exact};
use ulam::process::DiscreteInit;

pub fn run_example() -> ulam::Result<()> {
    let init = DiscreteInit::new(vec![1.0, 2.0])?;
    println!("E X_100 = {} (closed form {})", mean_exact(&init, 1.0, 100)?, mean_closed_form(&init, 1.0, 100)?);

    let unit = DiscreteInit::unit();
    let s = second_moment_exact(&unit, 1.0, 100_000)?;
    println!("q_n / n^2 at n = 1e5: {:.6}", s.q / 1e10);
    println!("K closed form: {:.12}", k_closed_form(&unit));
    println!("K extrapolated: {:.12}", k_limit(&unit, 1.0, 400_000)?.value);
    for p in [0.2, 0.5] {
        let k = k_limit(&unit, p, 400_000)?.value;
        println!("p = {p}: K(p, 1) / p^2 = {:.6}", k / (p * p));
    }
    Ok(())
}

fn main() -> ulam::Result<()> {
    run_example()
}
