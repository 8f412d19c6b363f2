//! Product moments E X_m X_n: the one-third drop at the diagonal.

use ulam::exact::{product_moment_closed_form, product_moment_exact, second_moment_exact};
use ulam::process::DiscreteInit;

pub fn run_example() -> ulam::Result<()> {
    let init = DiscreteInit::unit();
    let n = 1000;
    for p in [1.0, 0.2] {
        let below = product_moment_exact(&init, p, n - 1, n)?;
        let diag = second_moment_exact(&init, p, n)?.q;
        println!("p = {p}: c(n-1, n) / q_n = {:.4}", below / diag);
        println!("        c(500, 1000) / n^2 = {:.5}", product_moment_exact(&init, p, 500, n)? / 1e6);
    }
    let direct = product_moment_exact(&init, 0.3, 40, 90)?;
    let closed = product_moment_closed_form(&init, 0.3, 40, 90)?;
    println!("p = 0.3 recursion {direct:.6} vs closed form {closed:.6}");
    Ok(())
}

fn main() -> ulam::Result<()> {
    run_example()
}
