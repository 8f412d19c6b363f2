use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{invalid, numerical, Result};

/// A polynomial root with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Root {
    pub re: f64,
    pub im: f64,
    pub multiplicity: usize,
}

impl Root {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn is_real(&self) -> bool {
        self.im == 0.0
    }
}

/// Roots of `sum_k coeffs[k] z^k`, clustered into multiplicities.
///
/// Eigenvalues of the companion matrix spread a root of multiplicity `m` over a
/// circle of radius about `eps^(1/m)`, so clustering uses `cluster_tol` (relative)
/// and each cluster is replaced by its mean, which is accurate to roughly `eps`.
pub fn polynomial_roots(coeffs: &[Complex64], cluster_tol: f64) -> Result<Vec<Root>> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(invalid("polynomial is identically zero"));
    }
    let tiny = 1e-13 * scale;
    let mut hi = coeffs.len() - 1;
    while coeffs[hi].norm() <= tiny {
        hi -= 1;
    }
    let mut lo = 0;
    while coeffs[lo].norm() <= tiny {
        lo += 1;
    }
    let mut found: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); lo];
    let trimmed = &coeffs[lo..=hi];
    let deg = trimmed.len() - 1;
    if deg > 0 {
        let lead = trimmed[deg];
        let mut m = DMatrix::<Complex64>::zeros(deg, deg);
        for i in 1..deg {
            m[(i, i - 1)] = Complex64::new(1.0, 0.0);
        }
        for i in 0..deg {
            m[(i, deg - 1)] = -trimmed[i] / lead;
        }
        let eig = m.eigenvalues().ok_or_else(|| numerical("companion eigenvalue iteration failed"))?;
        found.extend(eig.iter().copied());
    }
    Ok(cluster(found, cluster_tol))
}

pub fn real_polynomial_roots(coeffs: &[f64], cluster_tol: f64) -> Result<Vec<Root>> {
    let c: Vec<Complex64> = coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    polynomial_roots(&c, cluster_tol)
}

fn cluster(mut zs: Vec<Complex64>, tol: f64) -> Vec<Root> {
    let mut out = Vec::new();
    while let Some(z) = zs.pop() {
        let radius = tol * z.norm().max(1.0);
        let (near, far): (Vec<Complex64>, Vec<Complex64>) = zs.into_iter().partition(|w| (w - z).norm() <= radius);
        let m = near.len() + 1;
        let mean = near.iter().fold(z, |a, b| a + b) / m as f64;
        let im = if mean.im.abs() <= 1e-9 * mean.norm().max(1.0) { 0.0 } else { mean.im };
        let re = if mean.re.abs() <= 1e-12 { 0.0 } else { mean.re };
        out.push(Root { re, im, multiplicity: m });
        zs = far;
    }
    out.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
    out
}
