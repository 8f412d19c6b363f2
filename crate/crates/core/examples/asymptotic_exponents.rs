//! Growth exponents of the reduced recurrences by trial substitution n^rho delta^n.

use ulam::asymptotics::{characteristic_delta, empirical_exponent, polynomial_rho, RecurrencePoly};
use ulam::exact::second_moment_series;
use ulam::process::DiscreteInit;

pub fn run_example() -> ulam::Result<()> {
    let recs = [
        ("second", RecurrencePoly::discrete_second_moment()),
        ("third", RecurrencePoly::discrete_third_moment()),
        ("p-adding, p = 0.25", RecurrencePoly::p_adding_second_moment(0.25)),
    ];
    for (name, rec) in recs {
        for delta in characteristic_delta(&rec)? {
            let rho: Vec<String> = polynomial_rho(&rec, &delta)?.iter().map(|r| format!("{:.3}", r.re)).collect();
            println!("{name}: delta = {:.3} (x{}), rho = {}", delta.re, delta.multiplicity, rho.join(", "));
        }
    }
    let q = second_moment_series(&DiscreteInit::unit(), 1.0, 100_000)?;
    let fit = empirical_exponent(&q.index, &q.values, 0.2)?;
    println!("empirical exponent of q_n: {:.4}", fit.slope);
    Ok(())
}

fn main() -> ulam::Result<()> {
    run_example()
}
