//! Second and product moments of the continuized base process from the ODE system.

use ulam::continuous::{
    continuized_k_fit, named_constants, product_moment_continuized, second_moment_continuized_base,
};

pub fn run_example() -> ulam::Result<()> {
    let grid = [0.01, 1.0, 10.0, 100.0, 1000.0];
    for s in second_moment_continuized_base(&grid)? {
        println!("t = {:>7}: q = {:.6e}, q/t^2 = {:.6}", s.t, s.q, s.q / (s.t * s.t));
    }
    println!("tail fit of q/t^2: {:.9}", continuized_k_fit(1000.0)?);
    println!("closed form:       {:.9}", named_constants().k_continuized_base);
    let c = product_moment_continuized(500.0, 1000.0)?;
    println!("c(500, 1000) / 1000^2 = {:.5}", c / 1e6);
    Ok(())
}

fn main() -> ulam::Result<()> {
    run_example()
}
