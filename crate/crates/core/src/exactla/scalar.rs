use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_traits::{FromPrimitive, Num};

/// Coefficient field for every computation in the crate.
///
/// All structure constants that show up (binomials, factorials, cocycle
/// values) are rational, so any field of characteristic zero works. The
/// elimination routines test pivots against exact zero, which means only
/// exact types (`BigRational`, `Rational64` for small inputs) give
/// meaningful ranks and kernels. Floats satisfy the bounds but are not
/// supported for anything beyond experimentation.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Neg<Output = Self> + FromPrimitive + FromStr + Send + Sync + 'static
{
    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("integer fits the scalar type")
    }

    fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_int(numer) / Self::from_int(denom)
    }
}

impl<T> Scalar for T where
    T: Clone + Debug + Display + PartialEq + Num + Neg<Output = T> + FromPrimitive + FromStr + Send + Sync + 'static
{
}

/// `n!` computed in the scalar domain (no machine-integer overflow).
pub fn factorial<S: Scalar>(n: u64) -> S {
    (1..=n).fold(S::one(), |acc, k| acc * S::from_int(k as i64))
}

/// Falling factorial `x (x-1) ... (x-j+1)`; equals 1 for `j = 0`.
pub fn falling<S: Scalar>(x: i64, j: u64) -> S {
    (0..j).fold(S::one(), |acc, s| acc * S::from_int(x - s as i64))
}

/// Rising factorial `x (x+1) ... (x+j-1)`.
pub fn rising<S: Scalar>(x: i64, j: u64) -> S {
    (0..j).fold(S::one(), |acc, s| acc * S::from_int(x + s as i64))
}

/// Binomial coefficient `C(x, j)` for any integer `x`, via the falling factorial.
pub fn binomial<S: Scalar>(x: i64, j: u64) -> S {
    falling::<S>(x, j) / factorial::<S>(j)
}

/// Serializes a scalar as `"p/q"` (or `"p"` when the denominator is one).
pub fn scalar_to_string<S: Scalar>(value: &S) -> String {
    value.to_string()
}

pub fn parse_scalar<S: Scalar>(text: &str) -> Option<S> {
    text.trim().parse::<S>().ok()
}
