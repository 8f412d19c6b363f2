//! Growth and oscillation classification of the generalized process.

use ulam::continuous::{classify_regions, classify_weights};
use ulam::process::{CoefficientLaw, WeightSpec};

pub fn run_example() -> ulam::Result<()> {
    for (alpha, beta, a, b) in
        [(1.0, 1.0, 1.0, 1.0), (2.0, 1.0, 0.5, -1.0), (4.0, 1.0, 2.0, -1.5), (1.0, 1.0, 0.2, 0.3)]
    {
        let g = classify_regions(alpha, beta, a, b)?;
        println!(
            "({alpha}, {beta}, {a}, {b}): {} sigma = {:.4}, second moment exponent {:?}",
            g.region_label, g.sigma_roots[0], g.second_moment_exponent
        );
    }
    let random = WeightSpec {
        a: CoefficientLaw::RandomTwoPoint { v1: 0.0, v2: 2.0, prob1: 0.5 },
        b: CoefficientLaw::constant(1.0),
    };
    let g = classify_weights(1.0, 1.0, &random)?;
    println!("random A in {{0, 2}}: {} with exponent {:?}", g.region_label, g.second_moment_exponent);
    Ok(())
}

fn main() -> ulam::Result<()> {
    run_example()
}
