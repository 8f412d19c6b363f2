use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::{powi, Scalar};
use crate::error::{invalid, Result};
use crate::process::DiscreteInit;

/// Largest number of raw `(U, V)` choice sequences the enumeration accepts.
pub const OUTCOME_BUDGET: u128 = 10_000_000;

/// Exact law of `(X_1, .., X_n)` for the base process; identical prefixes are merged.
#[derive(Debug, Clone)]
pub struct PathDistribution {
    paths: Vec<(Vec<BigRational>, BigRational)>,
    n_max: usize,
}

impl PathDistribution {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Distinct paths with their probabilities.
    pub fn paths(&self) -> &[(Vec<BigRational>, BigRational)] {
        &self.paths
    }

    pub fn total_probability(&self) -> BigRational {
        self.paths.iter().map(|(_, w)| w.clone()).fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn expect(&self, f: impl Fn(&[BigRational]) -> BigRational) -> BigRational {
        self.paths.iter().fold(BigRational::zero(), |acc, (path, w)| acc + f(path) * w.clone())
    }

    /// `E X_n^k`.
    pub fn moment(&self, n: usize, k: u32) -> BigRational {
        self.expect(|x| powi(&x[n - 1], k))
    }

    /// `E X_n^j S_{n-1}^k`.
    pub fn mixed(&self, n: usize, j: u32, k: u32) -> BigRational {
        self.expect(|x| powi(&x[n - 1], j) * powi(&sum(&x[..n - 1]), k))
    }

    /// `E S_n^k`.
    pub fn sum_moment(&self, n: usize, k: u32) -> BigRational {
        self.expect(|x| powi(&sum(&x[..n]), k))
    }

    /// `E X_m X_n`.
    pub fn product(&self, m: usize, n: usize) -> BigRational {
        self.expect(|x| x[m - 1].clone() * x[n - 1].clone())
    }

    /// Law of `X_n` as `(value, probability)` sorted by value.
    pub fn marginal(&self, n: usize) -> Vec<(BigRational, BigRational)> {
        let mut acc: HashMap<BigRational, BigRational> = HashMap::new();
        for (path, w) in &self.paths {
            *acc.entry(path[n - 1].clone()).or_insert_with(BigRational::zero) += w.clone();
        }
        let mut out: Vec<_> = acc.into_iter().collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

fn sum(xs: &[BigRational]) -> BigRational {
    xs.iter().cloned().fold(BigRational::zero(), |a, b| a + b)
}

/// Brute-force enumeration of every `(U(k), V(k))` choice for `k = r .. n_max - 1`.
pub fn enumerate_oracle(init: &DiscreteInit, n_max: usize) -> Result<PathDistribution> {
    let r = init.len();
    if n_max < r {
        return Err(invalid(format!("n_max = {n_max} precedes the initial history")));
    }
    let outcomes: u128 =
        (r..n_max).map(|k| (k * k) as u128).try_fold(1u128, |a, b| a.checked_mul(b)).unwrap_or(u128::MAX);
    if outcomes > OUTCOME_BUDGET {
        return Err(invalid(format!("{outcomes} outcomes exceed the enumeration budget of {OUTCOME_BUDGET}")));
    }
    let start: Vec<BigRational> = init.values().iter().map(|&v| BigRational::from_binary(v)).collect();
    let mut paths = vec![(start, BigRational::one())];
    for n in r..n_max {
        let pair_weight = BigRational::new(BigInt::one(), BigInt::from(n * n));
        let mut next: HashMap<Vec<BigRational>, BigRational> = HashMap::new();
        for (path, w) in paths {
            let mut sums: HashMap<BigRational, u64> = HashMap::new();
            for u in &path {
                for v in &path {
                    *sums.entry(u.clone() + v.clone()).or_insert(0) += 1;
                }
            }
            for (value, count) in sums {
                let mut child = path.clone();
                child.push(value);
                let p = w.clone() * pair_weight.clone() * BigRational::from_int(count as i64);
                *next.entry(child).or_insert_with(BigRational::zero) += p;
            }
        }
        paths = next.into_iter().collect();
    }
    paths.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(PathDistribution { paths, n_max })
}
