//! Scalar abstractions: exact rational coordinates and floating-point
//! evaluation types.
//!
//! All set-level arithmetic in this crate is exact and generic over a
//! rational scalar; the default alias [`crate::Q`] is an arbitrary-precision
//! rational so denominators can grow freely under repeated set operations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Float, FloatConst, FromPrimitive, Num, Signed, ToPrimitive};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

/// Exact rational scalar used for interval endpoints, weights and measures.
///
/// Implemented for `Ratio<i64>` (fast, can overflow under heavy composition)
/// and `Ratio<BigInt>` (the default: never overflows).
pub trait Coord:
    Num + Signed + Ord + Clone + Hash + fmt::Debug + fmt::Display + FromStr + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self;

    /// Construct `numer/denom` in reduced form. Panics if `denom == 0`.
    fn from_frac(numer: i64, denom: i64) -> Self;

    /// Numerator and denominator of the reduced form, as big integers.
    fn to_big_ratio(&self) -> Ratio<BigInt>;

    fn to_f64(&self) -> f64;

    /// Largest integer `<= self`.
    fn floor_int(&self) -> i64;

    /// Smallest integer `>= self`.
    fn ceil_int(&self) -> i64;

    fn min_of(a: Self, b: Self) -> Self {
        if a <= b {
            a
        } else {
            b
        }
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }
}

impl Coord for Ratio<i64> {
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(n)
    }

    fn from_frac(numer: i64, denom: i64) -> Self {
        Ratio::new(numer, denom)
    }

    fn to_big_ratio(&self) -> Ratio<BigInt> {
        Ratio::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }

    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }

    fn floor_int(&self) -> i64 {
        self.floor().to_integer()
    }

    fn ceil_int(&self) -> i64 {
        self.ceil().to_integer()
    }
}

impl Coord for Ratio<BigInt> {
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(BigInt::from(n))
    }

    fn from_frac(numer: i64, denom: i64) -> Self {
        Ratio::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn to_big_ratio(&self) -> Ratio<BigInt> {
        self.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn floor_int(&self) -> i64 {
        self.floor()
            .to_integer()
            .to_i64()
            .expect("floor out of i64 range")
    }

    fn ceil_int(&self) -> i64 {
        self.ceil()
            .to_integer()
            .to_i64()
            .expect("ceil out of i64 range")
    }
}

/// Floating-point scalar for transform evaluation.
pub trait Real: Float + FloatConst + FromPrimitive + fmt::Debug + fmt::Display + 'static {}

impl Real for f32 {}
impl Real for f64 {}

/// Exact conversion of an `f64` into a rational (every finite double is a
/// dyadic rational). Returns `None` for NaN/infinity.
pub fn f64_to_exact_ratio(x: f64) -> Option<Ratio<BigInt>> {
    if !x.is_finite() {
        return None;
    }
    Ratio::from_float(x)
}

/// Reduced fraction `p/q` from big-integer parts; `q` must be positive.
pub fn big_ratio<T: Coord>(value: &Ratio<BigInt>) -> Option<T> {
    // Round-trips through the string form so both Ratio<i64> and
    // Ratio<BigInt> can be targeted without a dedicated conversion trait.
    T::from_str(&value.to_string()).ok()
}

/// Greatest common divisor helper for plain machine integers.
pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn frac_construction_reduces() {
        let q: BigRational = Coord::from_frac(6, 4);
        assert_eq!(q.to_string(), "3/2");
        let r: Ratio<i64> = Coord::from_frac(-6, 4);
        assert_eq!(r.to_string(), "-3/2");
    }

    #[test]
    fn floor_ceil_round_toward_expected_sides() {
        let q: BigRational = Coord::from_frac(-7, 2);
        assert_eq!(q.floor_int(), -4);
        assert_eq!(q.ceil_int(), -3);
    }

    #[test]
    fn f64_to_ratio_is_exact_for_dyadics() {
        let r = f64_to_exact_ratio(2.5).unwrap();
        assert_eq!(r, BigRational::from_frac(5, 2));
        assert_eq!(f64_to_exact_ratio(f64::NAN), None);
    }
}
