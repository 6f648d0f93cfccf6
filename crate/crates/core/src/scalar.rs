//! The integer scalar abstraction every algorithm in the crate is generic over.
//!
//! Forms, maps and enumerations work for any type implementing [`Scalar`]:
//! machine integers (`i64`, `i128`) for speed, and [`num_bigint::BigInt`] when
//! intermediate products may overflow.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Exact signed integer arithmetic.
pub trait Scalar:
    Integer
    + Signed
    + Roots
    + Clone
    + Debug
    + Display
    + Hash
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: Integer
        + Signed
        + Roots
        + Clone
        + Debug
        + Display
        + Hash
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

#[inline]
pub fn int<T: Scalar>(v: i64) -> T {
    T::from_i64(v).expect("every scalar type holds an i64")
}

/// Converts between scalar types, failing when the value does not fit.
pub fn cast<S: Scalar, T: Scalar>(v: &S) -> Option<T> {
    match v.to_i128() {
        Some(x) => T::from_i128(x),
        None => None,
    }
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt<T: Scalar>(n: &T) -> T {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

/// Exact square root if `n` is a perfect square.
pub fn exact_sqrt<T: Scalar>(n: &T) -> Option<T> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if s.clone() * s.clone() == *n {
        Some(s)
    } else {
        None
    }
}

/// `round(n / d)` for `d > 0`, halves rounded up.
pub fn round_div<T: Scalar>(n: &T, d: &T) -> T {
    let two: T = int(2);
    (two.clone() * n.clone() + d.clone()).div_floor(&(two * d.clone()))
}

pub fn ceil_div<T: Scalar>(n: &T, d: &T) -> T {
    n.div_ceil(d)
}

/// p-adic valuation of a nonzero integer.
pub fn valuation<T: Scalar>(n: &T, p: &T) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let mut m = n.abs();
    let mut v = 0;
    while m.is_multiple_of(p) {
        m = m / p.clone();
        v += 1;
    }
    v
}

pub fn pow<T: Scalar>(base: &T, exp: u32) -> T {
    num_traits::pow(base.clone(), exp as usize)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn rounding() {
        assert_eq!(round_div(&7i64, &2), 4);
        assert_eq!(round_div(&-7i64, &2), -3);
        assert_eq!(round_div(&5i64, &3), 2);
        assert_eq!(round_div(&-5i64, &3), -2);
    }

    #[test]
    fn square_roots() {
        assert_eq!(exact_sqrt(&49i64), Some(7));
        assert_eq!(exact_sqrt(&50i64), None);
        assert_eq!(exact_sqrt(&-4i64), None);
        let big: BigInt = "100000000000000000000000000000000".parse().unwrap();
        assert_eq!(exact_sqrt(&big).unwrap().to_string(), "10000000000000000");
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&96i64, &2), 5);
        assert_eq!(valuation(&-75i64, &5), 2);
        assert_eq!(valuation(&7i64, &3), 0);
    }

    #[test]
    fn casting() {
        let b: BigInt = BigInt::from(-14);
        assert_eq!(cast::<BigInt, i64>(&b), Some(-14));
        let huge: BigInt = "1000000000000000000000000000000000000000000".parse().unwrap();
        assert_eq!(cast::<BigInt, i64>(&huge), None);
    }
}
