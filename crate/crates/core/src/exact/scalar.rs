use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive};

/// Number type the moment recursions run over: `f64` for speed, `BigRational` as oracle.
pub trait Scalar: Clone + Num + Signed + PartialOrd + Debug {
    fn from_int(v: i64) -> Self;
    /// Exact conversion of a binary float (`f64` is the identity).
    fn from_binary(v: f64) -> Self;
    fn approx(&self) -> f64;

    fn from_count(v: usize) -> Self {
        Self::from_int(v as i64)
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }
}

impl Scalar for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_binary(v: f64) -> Self {
        v
    }

    fn approx(&self) -> f64 {
        *self
    }
}

impl Scalar for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_binary(v: f64) -> Self {
        BigRational::from_float(v).expect("finite value")
    }

    fn approx(&self) -> f64 {
        // numerator and denominator overflow f64 long before the ratio does
        match (self.numer().to_f64(), self.denom().to_f64()) {
            (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
            _ => {
                let shift = self.numer().bits().max(self.denom().bits()).saturating_sub(1000) as usize;
                let a = (self.numer() >> shift).to_f64().unwrap_or(0.0);
                let b = (self.denom() >> shift).to_f64().unwrap_or(0.0);
                a / b
            }
        }
    }
}

/// Sum of a slice.
pub(crate) fn total<S: Scalar>(xs: &[S]) -> S {
    xs.iter().cloned().fold(S::zero(), |a, b| a + b)
}

pub(crate) fn powi<S: Scalar>(x: &S, k: u32) -> S {
    (0..k).fold(S::one(), |acc, _| acc * x.clone())
}
