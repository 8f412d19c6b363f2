//! Log-gamma fit to the first three moments of 2M and its fourth-moment prediction.

use ulam::stats::{limit_moments_2m, loggamma_fit};

pub fn run_example() -> ulam::Result<()> {
    let rounded = loggamma_fit(1.0, 1.225, 1.932)?;
    println!("rounded inputs: k = {:.3}, theta = {:.5}, mu4 = {:.4}", rounded.k, rounded.theta, rounded.predicted_mu4);
    let [m2, m3, m4] = limit_moments_2m(50_000)?;
    let exact = loggamma_fit(1.0, m2, m3)?;
    println!("exact moments ({m2:.6}, {m3:.6}, {m4:.6}): predicted mu4 = {:.4}", exact.predicted_mu4);
    Ok(())
}

fn main() -> ulam::Result<()> {
    run_example()
}
