use super::scalar::{total, Scalar};
use crate::error::{invalid, Result};
use crate::process::{check_probability, DiscreteInit};

/// Forward iteration of `m_{n+1} = nu m_n + (2p/n) sum_{k<=n} m_k`, yielding `(n, m_n)` from `n = r`.
#[derive(Debug, Clone)]
pub struct MeanIter<S> {
    n: usize,
    m: S,
    sum: S,
    p: S,
    nu: S,
}

impl<S: Scalar> MeanIter<S> {
    pub fn new(init: &[S], p: S) -> Self {
        let nu = S::one() - p.clone();
        Self { n: init.len(), m: init[init.len() - 1].clone(), sum: total(init), p, nu }
    }
}

impl<S: Scalar> Iterator for MeanIter<S> {
    type Item = (usize, S);

    fn next(&mut self) -> Option<Self::Item> {
        let out = (self.n, self.m.clone());
        let two = S::from_int(2);
        let next = self.nu.clone() * self.m.clone() + two * self.p.clone() * self.sum.clone() / S::from_count(self.n);
        self.sum = self.sum.clone() + next.clone();
        self.m = next;
        self.n += 1;
        Some(out)
    }
}

/// `E X_n` by forward iteration.
pub fn mean_exact(init: &DiscreteInit, p: f64, n: usize) -> Result<f64> {
    check_probability(p)?;
    check_index(init, n)?;
    let mut it = MeanIter::new(init.values(), p);
    Ok(it.nth(n - init.len()).map(|(_, m)| m).unwrap_or(f64::NAN))
}

/// Closed-form mean: `2 n s_r / (r (r+1))` for `p = 1`, the Casoratian solution otherwise.
pub fn mean_closed_form(init: &DiscreteInit, p: f64, n: usize) -> Result<f64> {
    check_probability(p)?;
    check_index(init, n)?;
    let r = init.len();
    let xr = init.last();
    let s = init.sum();
    if n == r {
        return Ok(xr);
    }
    if p == 1.0 {
        return Ok(2.0 * n as f64 * s / (r * (r + 1)) as f64);
    }
    let nu = 1.0 - p;
    let rf = r as f64;
    let c = 2.0 * s * (nu + p * rf) / rf - (1.0 + nu + p * rf) * xr;
    // nu^{k-1} / nu^{r-1} = nu^{k-r}, kept as a running power to avoid underflow
    let mut weight = 1.0;
    let mut sum = 0.0;
    for k in r..n {
        let kf = k as f64;
        sum += weight / (kf * (nu + p * kf) * (1.0 + p * kf));
        weight *= nu;
    }
    Ok((nu + p * n as f64) * (xr / (nu + p * rf) + c * p * rf * sum))
}

pub(crate) fn check_index(init: &DiscreteInit, n: usize) -> Result<()> {
    if n < init.len() {
        return Err(invalid(format!("index n = {n} precedes the end of the initial history (r = {})", init.len())));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn base_means() {
        assert_eq!(mean_exact(&DiscreteInit::unit(), 1.0, 10).unwrap(), 10.0);
        let init = DiscreteInit::new(vec![2.0, 5.0]).unwrap();
        assert!((mean_exact(&init, 1.0, 7).unwrap() - 7.0 * 7.0 / 3.0).abs() < 1e-12);
        assert!((mean_closed_form(&init, 1.0, 7).unwrap() - 7.0 * 7.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn p_adding_two_steps() {
        assert_eq!(mean_exact(&DiscreteInit::unit(), 0.5, 3).unwrap(), 2.0);
    }

    #[test]
    fn closed_form_matches_iteration() {
        let init = DiscreteInit::new(vec![1.0, 3.0, 0.5]).unwrap();
        for &p in &[0.1, 0.37, 0.5, 0.9, 1.0] {
            for n in [3, 4, 10, 200, 5000] {
                let a = mean_exact(&init, p, n).unwrap();
                let b = mean_closed_form(&init, p, n).unwrap();
                assert!((a - b).abs() <= 1e-10 * a.abs(), "p={p} n={n}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn rational_iteration() {
        let init = [BigRational::from_int(1), BigRational::from_int(3)];
        let m: Vec<_> = MeanIter::new(&init, BigRational::ratio(1, 2)).take(3).map(|(_, m)| m).collect();
        assert_eq!(m[1], BigRational::ratio(7, 2));
        assert_eq!(m[2], BigRational::ratio(17, 4));
    }

    #[test]
    fn rejects_early_index() {
        let init = DiscreteInit::new(vec![1.0, 1.0]).unwrap();
        assert!(mean_exact(&init, 1.0, 1).is_err());
        assert!(mean_exact(&init, 0.0, 3).is_err());
    }
}
