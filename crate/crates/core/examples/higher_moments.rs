//! Third and fourth moments of the base process and their growth constants.

use num_rational::BigRational;
use ulam::exact::{fourth_moment_exact, third_moment_exact, third_moments};

pub fn run_example() -> ulam::Result<()> {
    let first: Vec<String> = third_moments::<BigRational>().take(5).map(|(_, t)| t.to_string()).collect();
    println!("t_1..t_5 = {}", first.join(", "));
    let n = 100_000.0f64;
    println!("t_n / n^3 = {:.4}", third_moment_exact(100_000) / n.powi(3));
    println!("f_n / n^4 = {:.4}", fourth_moment_exact(100_000) / n.powi(4));
    Ok(())
}

fn main() -> ulam::Result<()> {
    run_example()
}
