//! Growth exponents of linear recurrences with polynomial coefficients.
//!
//! A recurrence `sum_j c_j(n) u_{n+j} = 0` is stored as `coeffs[j][i]`, the
//! coefficient of `n^i` in `c_j`. Trial solutions `n^rho delta^n` give the
//! characteristic bases `delta` from the leading powers and the exponents
//! `rho` from the first non-vanishing correction in `1/n`.

mod empirical;
mod roots;

pub use empirical::{empirical_exponent, SlopeEstimate};
pub use roots::{polynomial_roots, real_polynomial_roots, Root};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, numerical, Result};
use crate::exact::Scalar;

/// Relative distance below which companion eigenvalues are merged into one root.
pub const CLUSTER_TOL: f64 = 1e-2;

/// Extra orders in `1/n` examined beyond a root's multiplicity before giving up.
pub const EXTRA_DEPTH: usize = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RecurrencePoly {
    coeffs: Vec<Vec<f64>>,
}

impl RecurrencePoly {
    pub fn new(coeffs: Vec<Vec<f64>>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(invalid("a recurrence needs at least two terms"));
        }
        let zero = |c: &Vec<f64>| c.iter().all(|&x| x == 0.0);
        if zero(&coeffs[0]) || zero(&coeffs[coeffs.len() - 1]) {
            return Err(invalid("leading and trailing coefficient polynomials must be non-zero"));
        }
        if coeffs.iter().flatten().any(|x| !x.is_finite()) {
            return Err(invalid("coefficients must be finite"));
        }
        let d = coeffs.iter().map(Vec::len).max().unwrap_or(0);
        let coeffs = coeffs
            .into_iter()
            .map(|mut c| {
                c.resize(d, 0.0);
                c
            })
            .collect();
        Ok(Self { coeffs })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::new(serde_json::from_str(text)?)
    }

    /// Eq. for `q_n` of the base process (second order).
    pub fn discrete_second_moment() -> Self {
        Self::from_json(include_str!("../../fixtures/discrete_second_moment.json")).expect("bundled fixture")
    }

    /// Third-moment recurrence of the base process (third order).
    pub fn discrete_third_moment() -> Self {
        Self::from_json(include_str!("../../fixtures/discrete_third_moment.json")).expect("bundled fixture")
    }

    /// Fourth-moment recurrence of the base process (fifth order).
    pub fn discrete_fourth_moment() -> Self {
        Self::from_json(include_str!("../../fixtures/discrete_fourth_moment.json")).expect("bundled fixture")
    }

    /// Fourth-order recurrence for `q_n` of the p-adding process.
    pub fn p_adding_second_moment(p: f64) -> Self {
        let nu = 1.0 - p;
        Self::new(vec![
            vec![0.0, 0.0, nu * nu],
            vec![-nu * 3.0, -nu * (2.0 * p + 6.0), -nu * (4.0 - 2.0 * p)],
            vec![15.0 + 2.0 * p * p, 18.0 - 8.0 * p - 2.0 * p * p, 6.0 - 6.0 * p + p * p],
            vec![-3.0 * p - 21.0, 4.0 * p - 18.0, 2.0 * p - 4.0],
            vec![9.0, 6.0, 1.0],
        ])
        .expect("valid for p in (0, 1]")
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Common (padded) degree of the coefficient polynomials.
    pub fn degree(&self) -> usize {
        self.coeffs[0].len() - 1
    }

    pub fn coeffs(&self) -> &[Vec<f64>] {
        &self.coeffs
    }

    /// Multiply every coefficient polynomial by the same polynomial in `n`.
    pub fn times_polynomial(&self, poly: &[f64]) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let mut out = vec![0.0; c.len() + poly.len() - 1];
                for (i, a) in c.iter().enumerate() {
                    for (k, b) in poly.iter().enumerate() {
                        out[i + k] += a * b;
                    }
                }
                out
            })
            .collect();
        Self::new(coeffs).expect("non-zero multiplier")
    }

    /// `c_j(n)` in the scalar type `S`.
    pub fn coefficient<S: Scalar>(&self, j: usize, n: usize) -> S {
        let n = S::from_count(n);
        self.coeffs[j].iter().rev().fold(S::zero(), |acc, &c| acc * n.clone() + S::from_binary(c))
    }

    /// Runs the recurrence forward from `u_{n0}, .., u_{n0+k-1}` and returns `u_{n0}, .., u_{n_last}`.
    pub fn iterate<S: Scalar>(&self, initial: &[S], n0: usize, n_last: usize) -> Result<Vec<S>> {
        let k = self.order();
        if initial.len() != k {
            return Err(invalid(format!("recurrence of order {k} needs {k} initial values")));
        }
        let mut u = initial.to_vec();
        let mut n = n0;
        while n + k <= n_last {
            let lead: S = self.coefficient(k, n);
            if lead.is_zero() {
                return Err(numerical(format!("leading coefficient vanishes at n = {n}")));
            }
            let acc = (0..k).fold(S::zero(), |acc, j| acc + self.coefficient::<S>(j, n) * u[n - n0 + j].clone());
            u.push(-acc / lead);
            n += 1;
        }
        Ok(u)
    }

    /// Residual `sum_j c_j(n) u_{n+j}` for a sequence starting at index `n0`.
    pub fn residual<S: Scalar>(&self, u: &[S], n0: usize, n: usize) -> S {
        (0..=self.order()).fold(S::zero(), |acc, j| acc + self.coefficient::<S>(j, n) * u[n - n0 + j].clone())
    }
}

/// Roots `delta` of `sum_j lc_j delta^j`, where `lc_j` is the `n^d` coefficient of `c_j`.
pub fn characteristic_delta(rec: &RecurrencePoly) -> Result<Vec<Root>> {
    let d = rec.degree();
    let lead: Vec<f64> = rec.coeffs.iter().map(|c| c[d]).collect();
    if lead.iter().all(|&x| x == 0.0) {
        return Err(invalid("leading form is identically zero"));
    }
    real_polynomial_roots(&lead, CLUSTER_TOL)
}

/// Exponents `rho` of trial solutions `n^rho delta^n` for a characteristic root `delta`.
///
/// Expands `sum_j c_j(n) delta^j (1 + j/n)^rho` in powers of `1/n` and returns the roots of the
/// first coefficient that is not identically zero in `rho`, examining at most
/// `multiplicity + EXTRA_DEPTH` orders.
pub fn polynomial_rho(rec: &RecurrencePoly, delta: &Root) -> Result<Vec<Root>> {
    let d = rec.degree();
    let z = delta.value();
    let depth = delta.multiplicity + EXTRA_DEPTH;
    let scale = rec
        .coeffs
        .iter()
        .enumerate()
        .flat_map(|(j, c)| c.iter().map(move |x| x.abs() * z.norm().powi(j as i32)))
        .fold(0.0, f64::max)
        * (rec.order() as f64 + 1.0).powi(depth as i32);
    for s in 1..=depth.min(d) {
        // E_s(rho) = sum_{l<=s} binom(rho, l) sum_j c_{j, d-s+l} delta^j j^l
        let mut poly = vec![Complex64::new(0.0, 0.0); s + 1];
        for l in 0..=s {
            let weight: Complex64 = rec
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| c[d - s + l] * z.powu(j as u32) * (j as f64).powi(l as i32))
                .sum();
            for (k, b) in falling_binomial(l).iter().enumerate() {
                poly[k] += weight * b;
            }
        }
        if poly.iter().all(|c| c.norm() <= 1e-9 * scale) {
            continue;
        }
        return polynomial_roots(&poly, CLUSTER_TOL);
    }
    Err(numerical(format!("cancellation persists to order {depth} in 1/n")))
}

/// Coefficients of `binom(rho, l) = rho (rho - 1) .. (rho - l + 1) / l!` in powers of `rho`.
fn falling_binomial(l: usize) -> Vec<f64> {
    let mut poly = vec![1.0];
    for i in 0..l {
        let mut next = vec![0.0; poly.len() + 1];
        for (k, &a) in poly.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= a * i as f64;
        }
        poly = next.into_iter().map(|x| x / (i + 1) as f64).collect();
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{fourth_moments, third_moments, SecondMomentIter};
    use num_rational::BigRational;

    fn reals(roots: &[Root]) -> Vec<(f64, usize)> {
        let mut v: Vec<_> = roots.iter().map(|r| ((r.re * 1e9).round() / 1e9, r.multiplicity)).collect();
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        v
    }

    #[test]
    fn constant_coefficients() {
        let rec = RecurrencePoly::new(vec![vec![2.0], vec![-3.0], vec![1.0]]).unwrap();
        assert_eq!(reals(&characteristic_delta(&rec).unwrap()), vec![(1.0, 1), (2.0, 1)]);
    }

    #[test]
    fn second_moment_fixture() {
        let rec = RecurrencePoly::discrete_second_moment();
        let deltas = characteristic_delta(&rec).unwrap();
        assert_eq!(reals(&deltas), vec![(1.0, 2)]);
        assert_eq!(reals(&polynomial_rho(&rec, &deltas[0]).unwrap()), vec![(1.0, 1), (2.0, 1)]);
    }

    #[test]
    fn third_and_fourth_fixtures() {
        let rec = RecurrencePoly::discrete_third_moment();
        let deltas = characteristic_delta(&rec).unwrap();
        assert_eq!(reals(&deltas), vec![(1.0, 3)]);
        assert_eq!(reals(&polynomial_rho(&rec, &deltas[0]).unwrap()), vec![(1.0, 1), (2.0, 1), (3.0, 1)]);
        let rec = RecurrencePoly::discrete_fourth_moment();
        let deltas = characteristic_delta(&rec).unwrap();
        assert_eq!(reals(&deltas), vec![(1.0, 5)]);
        let rho = reals(&polynomial_rho(&rec, &deltas[0]).unwrap());
        assert_eq!(rho.iter().map(|r| r.0).fold(f64::MIN, f64::max), 4.0);
    }

    #[test]
    fn p_adding_fixture() {
        let p = 0.25;
        let rec = RecurrencePoly::p_adding_second_moment(p);
        let deltas = characteristic_delta(&rec).unwrap();
        assert_eq!(reals(&deltas), vec![(0.75, 2), (1.0, 2)]);
        let one = deltas.iter().find(|r| (r.re - 1.0).abs() < 1e-9).unwrap();
        assert_eq!(reals(&polynomial_rho(&rec, one).unwrap()), vec![(1.0, 1), (2.0, 1)]);
    }

    #[test]
    fn rho_invariant_under_polynomial_factor() {
        for rec in [RecurrencePoly::discrete_second_moment(), RecurrencePoly::discrete_third_moment()] {
            let delta = characteristic_delta(&rec).unwrap()[0];
            let scaled = rec.times_polynomial(&[3.0, 1.0]);
            assert_eq!(reals(&polynomial_rho(&rec, &delta).unwrap()), reals(&polynomial_rho(&scaled, &delta).unwrap()));
        }
    }

    #[test]
    fn fixtures_reproduce_moment_systems() {
        let one = BigRational::from_int(1);
        let q: Vec<BigRational> =
            SecondMomentIter::new(std::slice::from_ref(&one), one.clone()).take(40).map(|s| s.q).collect();
        let rec = RecurrencePoly::discrete_second_moment();
        assert_eq!(rec.iterate(&q[..2], 1, 40).unwrap(), q);
        let t: Vec<BigRational> = third_moments().take(40).map(|(_, t)| t).collect();
        assert_eq!(RecurrencePoly::discrete_third_moment().iterate(&t[..3], 1, 40).unwrap(), t);
        let f: Vec<BigRational> = fourth_moments().take(40).map(|(_, f)| f).collect();
        assert_eq!(RecurrencePoly::discrete_fourth_moment().iterate(&f[..5], 1, 40).unwrap(), f);
        let p = BigRational::ratio(1, 4);
        let q: Vec<BigRational> = SecondMomentIter::new(&[one], p).take(40).map(|s| s.q).collect();
        assert_eq!(RecurrencePoly::p_adding_second_moment(0.25).iterate(&q[..4], 1, 40).unwrap(), q);
    }

    #[test]
    fn rejects_degenerate() {
        assert!(RecurrencePoly::new(vec![vec![0.0], vec![1.0]]).is_err());
        assert!(RecurrencePoly::new(vec![vec![1.0]]).is_err());
    }
}
