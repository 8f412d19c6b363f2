//! Third and fourth moments of the base process started from `x_1 = 1`.
//!
//! Notation: `a[j,k] = E X_n^j S_{n-1}^k`, `b[j,k] = E (sum_v X_v^j) S_n^k`,
//! `c2 = E (sum_k X_k^2)^2`.

use super::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct ThirdState<S> {
    pub n: usize,
    pub a03: S,
    pub a12: S,
    pub a21: S,
    pub a30: S,
    pub b21: S,
    pub b30: S,
}

impl<S: Scalar> ThirdState<S> {
    pub fn initial() -> Self {
        let (z, o) = (S::zero(), S::one());
        Self { n: 1, a03: z.clone(), a12: z.clone(), a21: z, a30: o.clone(), b21: o.clone(), b30: o }
    }

    /// `t_n = E X_n^3`.
    pub fn third(&self) -> &S {
        &self.a30
    }

    pub fn step(&self) -> Self {
        let n = S::from_count(self.n);
        let n2 = n.clone() * n.clone();
        let c = S::from_int;
        let a03 = self.a03.clone() + c(3) * self.a12.clone() + c(3) * self.a21.clone() + self.a30.clone();
        let a12 = c(2) * a03.clone() / n.clone();
        let a21 = c(2) * a03.clone() / n2.clone() + c(2) * self.b21.clone() / n.clone();
        let a30 = c(2) * self.b30.clone() / n.clone() + c(6) * self.b21.clone() / n2;
        let b21 = self.b21.clone() * (S::one() + c(2) / n) + a21.clone() + a30.clone();
        let b30 = self.b30.clone() + a30.clone();
        Self { n: self.n + 1, a03, a12, a21, a30, b21, b30 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FourthState<S> {
    pub n: usize,
    pub a04: S,
    pub a13: S,
    pub a22: S,
    pub a31: S,
    pub a40: S,
    pub b22: S,
    pub b31: S,
    pub b40: S,
    pub c2: S,
}

impl<S: Scalar> FourthState<S> {
    pub fn initial() -> Self {
        let (z, o) = (S::zero(), S::one());
        Self {
            n: 1,
            a04: z.clone(),
            a13: z.clone(),
            a22: z.clone(),
            a31: z,
            a40: o.clone(),
            b22: o.clone(),
            b31: o.clone(),
            b40: o.clone(),
            c2: o,
        }
    }

    /// `f_n = E X_n^4`.
    pub fn fourth(&self) -> &S {
        &self.a40
    }

    pub fn step(&self) -> Self {
        let n = S::from_count(self.n);
        let n2 = n.clone() * n.clone();
        let c = S::from_int;
        let a04 = self.a04.clone()
            + c(4) * self.a13.clone()
            + c(6) * self.a22.clone()
            + c(4) * self.a31.clone()
            + self.a40.clone();
        let a13 = c(2) * a04.clone() / n.clone();
        let a22 = c(2) * self.b22.clone() / n.clone() + c(2) * a04.clone() / n2.clone();
        let a31 = c(2) * self.b31.clone() / n.clone() + c(6) * self.b22.clone() / n2.clone();
        let a40 = c(2) * self.b40.clone() / n.clone()
            + c(8) * self.b31.clone() / n2.clone()
            + c(6) * self.c2.clone() / n2.clone();
        let b22 = self.b22.clone() * (S::one() + c(4) / n.clone() + c(2) / n2.clone())
            + c(2) * self.c2.clone() / n.clone()
            + a22.clone()
            + c(2) * a31.clone()
            + a40.clone();
        let b31 = self.b31.clone() * (S::one() + c(2) / n.clone()) + a31.clone() + a40.clone();
        let b40 = self.b40.clone() + a40.clone();
        let c2 = self.c2.clone() * (S::one() + c(4) / n) + c(4) * self.b22.clone() / n2 + a40.clone();
        Self { n: self.n + 1, a04, a13, a22, a31, a40, b22, b31, b40, c2 }
    }
}

/// `(n, t_n)` for `n = 1, 2, ..`.
pub fn third_moments<S: Scalar>() -> impl Iterator<Item = (usize, S)> {
    std::iter::successors(Some(ThirdState::<S>::initial()), |s| Some(s.step())).map(|s| (s.n, s.a30))
}

/// `(n, f_n)` for `n = 1, 2, ..`.
pub fn fourth_moments<S: Scalar>() -> impl Iterator<Item = (usize, S)> {
    std::iter::successors(Some(FourthState::<S>::initial()), |s| Some(s.step())).map(|s| (s.n, s.a40))
}

/// `E X_n^3` for the base process with `x_1 = 1`.
pub fn third_moment_exact(n: usize) -> f64 {
    third_moments::<f64>().nth(n.max(1) - 1).map(|(_, t)| t).unwrap_or(f64::NAN)
}

/// `E X_n^4` for the base process with `x_1 = 1`.
pub fn fourth_moment_exact(n: usize) -> f64 {
    fourth_moments::<f64>().nth(n.max(1) - 1).map(|(_, f)| f).unwrap_or(f64::NAN)
}
