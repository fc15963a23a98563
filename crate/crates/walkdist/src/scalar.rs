//! Scalar abstraction so the same kernels run in floating point and in exact
//! rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use std::fmt::{Debug, Display};

/// Field scalar for graph weights, matrices, and expansion sums.
///
/// `f64` gives the fast approximate mode; [`BigRational`] gives the exact mode
/// used when inputs are rational and results must be compared exactly.
pub trait Scalar: Signed + PartialOrd + Clone + Debug + Display + 'static {
    /// The exact value p/q (for `f64`, the nearest double).
    fn from_ratio(p: i64, q: i64) -> Self;

    /// Nearest double, used for convergence diagnostics and display.
    fn to_f64(&self) -> f64;

    /// True if a pivot of this magnitude should be treated as zero, given the
    /// largest entry magnitude of the original matrix.
    fn negligible_pivot(&self, scale: &Self) -> bool;
}

impl Scalar for f64 {
    fn from_ratio(p: i64, q: i64) -> Self {
        p as f64 / q as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn negligible_pivot(&self, scale: &Self) -> bool {
        self.abs() < crate::DEFAULT_TOL * scale.abs().max(1.0)
    }
}

impl Scalar for BigRational {
    fn from_ratio(p: i64, q: i64) -> Self {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn negligible_pivot(&self, _scale: &Self) -> bool {
        self.is_zero()
    }
}

use num_traits::Zero;

/// Shorthand for `Scalar::from_ratio` with an integer value.
pub fn int<S: Scalar>(v: i64) -> S {
    S::from_ratio(v, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_round_trips() {
        assert_eq!(f64::from_ratio(1, 3), 1.0 / 3.0);
        let r = BigRational::from_ratio(461, 405);
        assert_eq!(r, BigRational::new(BigInt::from(461), BigInt::from(405)));
        assert!((Scalar::to_f64(&r) - 461.0 / 405.0).abs() < 1e-15);
    }

    #[test]
    fn rational_pivot_is_exact() {
        let zero = BigRational::from_ratio(0, 1);
        let tiny = BigRational::from_ratio(1, i64::MAX);
        let one = BigRational::from_ratio(1, 1);
        assert!(zero.negligible_pivot(&one));
        assert!(!tiny.negligible_pivot(&one));
    }
}
