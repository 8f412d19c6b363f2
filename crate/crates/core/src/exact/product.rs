use super::mean::check_index;
use super::scalar::Scalar;
use super::second::SecondMomentIter;
use crate::error::{invalid, Result};
use crate::process::{check_probability, DiscreteInit};

/// Row `n -> c_{m,n} = E X_m X_n` for fixed `m`, yielding `(n, c_{m,n})` from `n = m`.
///
/// Iterates `c_{m,n+1} = nu c_{m,n} + (2p/n) E X_m S_n` while tracking `E X_m S_n`.
#[derive(Debug, Clone)]
pub struct ProductRow<S> {
    n: usize,
    c: S,
    xs: S,
    prob: S,
    nu: S,
}

impl<S: Scalar> ProductRow<S> {
    pub fn new(init: &[S], prob: S, m: usize) -> Self {
        let st = SecondMomentIter::new(init, prob.clone()).nth(m - init.len()).expect("unbounded iterator");
        let nu = S::one() - prob.clone();
        Self { n: m, xs: st.w + st.q.clone(), c: st.q, prob, nu }
    }
}

impl<S: Scalar> Iterator for ProductRow<S> {
    type Item = (usize, S);

    fn next(&mut self) -> Option<Self::Item> {
        let out = (self.n, self.c.clone());
        let two = S::from_int(2);
        let c1 = self.nu.clone() * self.c.clone() + two * self.prob.clone() * self.xs.clone() / S::from_count(self.n);
        self.xs = self.xs.clone() + c1.clone();
        self.c = c1;
        self.n += 1;
        Some(out)
    }
}

pub fn product_moment_exact(init: &DiscreteInit, p: f64, m: usize, n: usize) -> Result<f64> {
    check_probability(p)?;
    check_index(init, m)?;
    if n < m {
        return Err(invalid(format!("need m <= n, got m = {m}, n = {n}")));
    }
    Ok(ProductRow::new(init.values(), p, m).nth(n - m).map(|(_, c)| c).unwrap_or(f64::NAN))
}

/// Casoratian-form solution of the product-moment recursion for `p < 1`.
pub fn product_moment_closed_form(init: &DiscreteInit, p: f64, m: usize, n: usize) -> Result<f64> {
    check_probability(p)?;
    check_index(init, m)?;
    if n < m || p == 1.0 {
        return Err(invalid("closed form needs m <= n and p < 1"));
    }
    let mut row = ProductRow::new(init.values(), p, m);
    let (_, q) = row.next().expect("row");
    let (_, c1) = row.next().expect("row");
    let nu = 1.0 - p;
    // h_k = nu^{k-1}/(k (nu + pk)(1 + pk)); only ratios h_k/h_m enter
    let g = |k: f64| k * (nu + p * k) * (1.0 + p * k);
    let mf = m as f64;
    let rel: f64 = (m..n).map(|k| nu.powi((k - m) as i32) * g(mf) / g(k as f64)).sum();
    let b = c1 / (nu + p * (mf + 1.0)) - q / (nu + p * mf);
    Ok((nu + p * n as f64) * (q / (nu + p * mf) + b * rel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::second::second_moment_exact;
    use std::f64::consts::PI;

    #[test]
    fn small_values() {
        let init = DiscreteInit::unit();
        assert_eq!(product_moment_exact(&init, 1.0, 2, 3).unwrap(), 6.0);
        for m in [1, 4, 9] {
            let q = second_moment_exact(&init, 0.4, m).unwrap().q;
            assert_eq!(product_moment_exact(&init, 0.4, m, m).unwrap(), q);
        }
        assert!(product_moment_exact(&init, 1.0, 3, 2).is_err());
    }

    #[test]
    fn closed_form_agrees() {
        let init = DiscreteInit::new(vec![1.0, 2.0]).unwrap();
        for (m, n) in [(2, 2), (3, 9), (10, 40), (50, 300)] {
            let a = product_moment_exact(&init, 0.2, m, n).unwrap();
            let b = product_moment_closed_form(&init, 0.2, m, n).unwrap();
            assert!((a - b).abs() < 1e-10 * a, "({m},{n}): {a} vs {b}");
        }
    }

    #[test]
    fn off_diagonal_limit_base() {
        let k = PI.sinh() / (2.0 * PI);
        let c = product_moment_exact(&DiscreteInit::unit(), 1.0, 500, 1000).unwrap() / 1e6;
        assert!((c / (k / 3.0) - 1.0).abs() < 0.02);
    }
}
