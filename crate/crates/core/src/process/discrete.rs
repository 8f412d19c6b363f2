use rand::Rng;

use super::{check_probability, DiscreteInit, ProcessSpec};
use crate::error::{invalid, Result};
use crate::rng::{stream_rng, uniform_index, unit};

/// One realized discrete-time path `X_1, .., X_n` with its partial sums.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    values: Vec<f64>,
    partial_sums: Vec<f64>,
    seed: u64,
    stream: u64,
    spec: ProcessSpec,
    init: DiscreteInit,
}

impl Trajectory {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn partial_sums(&self) -> &[f64] {
        &self.partial_sums
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `X_n`, 1-based.
    pub fn x(&self, n: usize) -> f64 {
        self.values[n - 1]
    }

    /// `S_n`, 1-based.
    pub fn s(&self, n: usize) -> f64 {
        self.partial_sums[n - 1]
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn spec(&self) -> &ProcessSpec {
        &self.spec
    }

    pub fn init(&self) -> &DiscreteInit {
        &self.init
    }
}

/// Simulate the p-adding process on stream 0 of `seed`.
pub fn simulate_discrete(init: &DiscreteInit, p: f64, n_max: usize, seed: u64) -> Result<Trajectory> {
    simulate_discrete_with(init, p, n_max, seed, 0)
}

/// Simulate the p-adding process on an explicit stream, as used by ensembles.
pub fn simulate_discrete_with(init: &DiscreteInit, p: f64, n_max: usize, seed: u64, stream: u64) -> Result<Trajectory> {
    check_probability(p)?;
    check_length(init, n_max)?;
    let mut rng = stream_rng(seed, stream);
    let (values, partial_sums) = run(init, n_max, |xs, n| {
        if p < 1.0 && unit(&mut rng) >= p {
            return xs[n - 1];
        }
        pick(&mut rng, xs, n) + pick(&mut rng, xs, n)
    });
    Ok(Trajectory { values, partial_sums, seed, stream, spec: ProcessSpec::DiscreteAdding { p }, init: init.clone() })
}

/// Simulate `X_{n+1} = a X_U + b X_V` on stream 0 of `seed`.
pub fn simulate_weighted(init: &DiscreteInit, a: f64, b: f64, n_max: usize, seed: u64) -> Result<Trajectory> {
    simulate_weighted_with(init, a, b, n_max, seed, 0)
}

pub fn simulate_weighted_with(
    init: &DiscreteInit,
    a: f64,
    b: f64,
    n_max: usize,
    seed: u64,
    stream: u64,
) -> Result<Trajectory> {
    let spec = ProcessSpec::DiscreteWeighted { a, b };
    spec.validate()?;
    check_length(init, n_max)?;
    let mut rng = stream_rng(seed, stream);
    let (values, partial_sums) = run(init, n_max, |xs, n| a * pick(&mut rng, xs, n) + b * pick(&mut rng, xs, n));
    Ok(Trajectory { values, partial_sums, seed, stream, spec, init: init.clone() })
}

fn check_length(init: &DiscreteInit, n_max: usize) -> Result<()> {
    if n_max < init.len() {
        return Err(invalid(format!("n_max = {n_max} is shorter than the initial history ({})", init.len())));
    }
    Ok(())
}

#[inline]
fn pick<R: Rng>(rng: &mut R, xs: &[f64], n: usize) -> f64 {
    xs[uniform_index(n, unit(rng)) - 1]
}

fn run(init: &DiscreteInit, n_max: usize, mut step: impl FnMut(&[f64], usize) -> f64) -> (Vec<f64>, Vec<f64>) {
    let mut values = Vec::with_capacity(n_max);
    let mut sums = Vec::with_capacity(n_max);
    let mut s = 0.0;
    for &x in init.values() {
        s += x;
        values.push(x);
        sums.push(s);
    }
    for n in init.len()..n_max {
        let x = step(&values, n);
        s += x;
        values.push(x);
        sums.push(s);
    }
    (values, sums)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_value_is_forced() {
        for seed in 0..20 {
            let t = simulate_discrete(&DiscreteInit::unit(), 1.0, 2, seed).unwrap();
            assert_eq!(t.values(), &[1.0, 2.0]);
        }
    }

    #[test]
    fn third_value_distribution() {
        let mut counts = [0usize; 5];
        let reps = 40_000;
        for k in 0..reps {
            let t = simulate_discrete_with(&DiscreteInit::unit(), 1.0, 3, 11, k).unwrap();
            counts[t.x(3) as usize] += 1;
        }
        let f = |x: usize| counts[x] as f64 / reps as f64;
        assert!((f(2) - 0.25).abs() < 0.01);
        assert!((f(3) - 0.5).abs() < 0.01);
        assert!((f(4) - 0.25).abs() < 0.01);
        assert_eq!(counts[0] + counts[1], 0);
    }

    #[test]
    fn bounds_and_sums() {
        let t = simulate_discrete(&DiscreteInit::new(vec![1.0, 3.0]).unwrap(), 1.0, 500, 5).unwrap();
        let mut hi = 0.0f64;
        let mut lo = f64::INFINITY;
        for n in 1..t.len() {
            hi = hi.max(t.x(n));
            lo = lo.min(t.x(n));
            if n < 2 {
                continue;
            }
            assert!(t.x(n + 1) <= 2.0 * hi && t.x(n + 1) >= 2.0 * lo);
        }
        let direct: f64 = t.values().iter().sum();
        assert!((direct - t.s(t.len())).abs() <= 1e-12 * direct);
    }

    #[test]
    fn persistence_repeats_last_value() {
        let t = simulate_discrete(&DiscreteInit::unit(), 0.3, 200, 9).unwrap();
        let repeats = t.values().windows(2).filter(|w| w[0] == w[1]).count();
        assert!(repeats > 100);
    }

    #[test]
    fn rejects_bad_arguments() {
        let init = DiscreteInit::new(vec![1.0, 1.0]).unwrap();
        assert!(simulate_discrete(&init, 1.0, 1, 0).is_err());
        assert!(simulate_discrete(&init, 0.0, 5, 0).is_err());
        assert!(simulate_weighted(&init, 0.0, 1.0, 5, 0).is_err());
    }
}
