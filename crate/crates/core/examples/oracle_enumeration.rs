//! Brute-force enumeration of every path in exact rational arithmetic.

use ulam::exact::{enumerate_oracle, second_moment_exact};
use ulam::process::DiscreteInit;

pub fn run_example() -> ulam::Result<()> {
    let init = DiscreteInit::unit();
    let dist = enumerate_oracle(&init, 6)?;
    println!("{} distinct paths, total probability {}", dist.paths().len(), dist.total_probability());
    for n in 1..=6 {
        println!("n = {n}: E X = {}, E X^2 = {}, E X^3 = {}", dist.moment(n, 1), dist.moment(n, 2), dist.moment(n, 3));
    }
    println!("recursion q_6 = {}", second_moment_exact(&init, 1.0, 6)?.q);
    for (value, prob) in dist.marginal(4) {
        println!("P(X_4 = {value}) = {prob}");
    }
    Ok(())
}

fn main() -> ulam::Result<()> {
    run_example()
}
