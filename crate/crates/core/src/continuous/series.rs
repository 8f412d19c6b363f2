//! Power series of the regular solutions at the singular point t = 0.

/// Coefficients `(q_k, r_k, Q_k)` of the base second-moment system
/// `q' = -q + 2R/t + 2Q/t^2`, `R' = q`, `Q'' = -Q' + 2q + 4Q/t`.
pub fn second_moment_coefficients(order: usize) -> Vec<[f64; 3]> {
    let mut q = vec![0.0; order + 2];
    let mut r = vec![0.0; order + 2];
    let mut big = vec![0.0; order + 3];
    q[0] = 1.0;
    for k in 0..=order {
        let kf = k as f64;
        big[k + 2] = (2.0 * q[k] + (3.0 - kf) * big[k + 1]) / ((kf + 1.0) * (kf + 2.0));
        r[k + 1] = q[k] / (kf + 1.0);
        q[k + 1] = (2.0 * r[k + 1] + 2.0 * big[k + 2] - q[k]) / (kf + 1.0);
    }
    (0..=order).map(|k| [q[k], r[k], big[k]]).collect()
}

/// `(q, R, Q, Q')` at `t` from the truncated series.
pub fn second_moment_state(t: f64, order: usize) -> [f64; 4] {
    let coeffs = second_moment_coefficients(order);
    let mut out = [0.0; 4];
    let mut pow = 1.0;
    for (k, c) in coeffs.iter().enumerate() {
        out[0] += c[0] * pow;
        out[1] += c[1] * pow;
        out[2] += c[2] * pow;
        if k + 1 < coeffs.len() {
            out[3] += (k + 1) as f64 * coeffs[k + 1][2] * pow;
        }
        pow *= t;
    }
    out
}

/// Coefficients of `(a0, a1, a2, a3, b2, b3, g1)` for the third-moment system, `a3(0) = 1`.
pub fn third_moment_coefficients(order: usize) -> Vec<[f64; 7]> {
    let n = order + 3;
    let (mut a0, mut a1, mut a2, mut a3) = (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    let (mut b2, mut b3, mut g1) = (vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    a3[0] = 1.0;
    for k in 0..order {
        let k1 = k as f64 + 1.0;
        let k2 = k as f64 + 2.0;
        a0[k + 1] = 3.0 * a1[k] / k1;
        b2[k + 1] = (a2[k] + g1[k]) / k1;
        b3[k + 1] = a3[k] / k1;
        a1[k + 1] = (2.0 * a2[k] + 2.0 * a0[k + 1] - a1[k]) / k1;
        g1[k + 1] = (a3[k] + 2.0 * b2[k + 1] - g1[k]) / k1;
        a0[k + 2] = 3.0 * a1[k + 1] / k2;
        a2[k + 1] = (a3[k] + 2.0 * b2[k + 1] + 2.0 * a0[k + 2] - a2[k]) / k1;
        b2[k + 2] = (a2[k + 1] + g1[k + 1]) / k2;
        a3[k + 1] = (2.0 * b3[k + 1] + 6.0 * b2[k + 2] - a3[k]) / k1;
    }
    (0..=order).map(|k| [a0[k], a1[k], a2[k], a3[k], b2[k], b3[k], g1[k]]).collect()
}

pub fn third_moment_state(t: f64, order: usize) -> [f64; 7] {
    let mut out = [0.0; 7];
    let mut pow = 1.0;
    for c in third_moment_coefficients(order) {
        for (o, ci) in out.iter_mut().zip(c) {
            *o += ci * pow;
        }
        pow *= t;
    }
    out
}

/// Regular solution of the generalized mean equation with `m(0) = 1`:
/// `a_{k+1} = -a_k P(k) / ((k+1)(k+alpha)(k+beta))` with `P` the sigma polynomial.
pub fn generalized_mean_coefficients(alpha: f64, beta: f64, a: f64, b: f64, order: usize) -> Vec<f64> {
    let lin = beta * (1.0 - b) + alpha * (1.0 - a);
    let c = (1.0 - a - b) * alpha * beta;
    let mut out = Vec::with_capacity(order + 1);
    out.push(1.0);
    for k in 0..order {
        let kf = k as f64;
        let p = kf * kf + lin * kf + c;
        out.push(-out[k] * p / ((kf + 1.0) * (kf + alpha) * (kf + beta)));
    }
    out
}

/// `(m, m', m'')` at `t`.
pub fn generalized_mean_state(alpha: f64, beta: f64, a: f64, b: f64, t: f64, order: usize) -> [f64; 3] {
    let coeffs = generalized_mean_coefficients(alpha, beta, a, b, order + 2);
    let mut out = [0.0; 3];
    let mut pow = 1.0;
    for k in 0..=order {
        let kf = k as f64;
        out[0] += coeffs[k] * pow;
        out[1] += (kf + 1.0) * coeffs[k + 1] * pow;
        out[2] += (kf + 1.0) * (kf + 2.0) * coeffs[k + 2] * pow;
        pow *= t;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_moment_derivatives_at_zero() {
        let c = second_moment_coefficients(6);
        assert_eq!(c[0][0], 1.0);
        assert!((c[1][0] - 3.0).abs() < 1e-15);
        assert!((2.0 * c[2][0] - 8.0 / 3.0).abs() < 1e-15);
        assert!((6.0 * c[3][0] - 4.0 / 9.0).abs() < 1e-15);
        for (got, want) in [(c[2][2], 1.0), (c[3][2], 4.0 / 3.0), (c[4][2], 1.0 / 3.0)] {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn series_satisfies_reduced_fourth_order_equation() {
        // t^2 q'''' + (6t + 2t^2) q''' + (6 + 4t + t^2) q'' - (6 + 2t) q' + 2q = 0
        let q: Vec<f64> = second_moment_coefficients(30).iter().map(|c| c[0]).collect();
        for k in 0..26 {
            let f = |j: usize| q[j];
            let kf = k as f64;
            let res = f(k + 2) * (kf + 2.0) * (kf + 1.0) * kf * (kf - 1.0)
                + 6.0 * f(k + 2) * (kf + 2.0) * (kf + 1.0) * kf
                + 2.0 * f(k + 1) * (kf + 1.0) * kf * (kf - 1.0)
                + 6.0 * f(k + 2) * (kf + 2.0) * (kf + 1.0)
                + 4.0 * f(k + 1) * (kf + 1.0) * kf
                + f(k) * kf * (kf - 1.0)
                - 6.0 * f(k + 1) * (kf + 1.0)
                - 2.0 * f(k) * kf
                + 2.0 * f(k);
            assert!(res.abs() < 1e-12 * f(k).abs().max(1e-300), "k = {k}: {res}");
        }
    }

    #[test]
    fn third_moment_small_time() {
        let c = third_moment_coefficients(8);
        // E X^3 = 1 + 7t + O(t^2): a first jump doubles the value
        assert_eq!(c[0][3], 1.0);
        assert!((c[1][3] - 7.0).abs() < 1e-14);
        assert!((c[1][5] - 1.0).abs() < 1e-15);
        assert_eq!(c[0][0], 0.0);
    }

    #[test]
    fn generalized_polynomial_solutions() {
        let c = generalized_mean_coefficients(1.0, 1.0, 1.0, 1.0, 5);
        assert_eq!(&c[..3], &[1.0, 1.0, 0.0]);
        let c = generalized_mean_coefficients(8.0, 0.5, 1.0, 1.0, 5);
        assert!((c[2] - 1.0 / 9.0).abs() < 1e-15);
        assert_eq!(c[3], 0.0);
    }
}
