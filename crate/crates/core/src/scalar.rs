//! The integer scalar every exact structure in this crate is generic over.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed};

/// Signed exact integer usable as the base ring of [`Rational`](crate::rational::Rational),
/// [`Quad`](crate::quad_field::Quad) and [`Mat2`](crate::matrix::Mat2).
///
/// Fixed-width types (`i64`, `i128`) work as long as nothing overflows;
/// [`num_bigint::BigInt`] is the scalar behind the crate-root aliases.
pub trait Int:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + Send + Sync + 'static
{
}

impl<T> Int for T where
    T: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + Send + Sync + 'static
{
}

/// Small integer literal lifted into `T`.
#[inline]
pub fn lit<T: Int>(v: i64) -> T {
    T::from_i64(v).expect("small literal fits every Int scalar")
}

/// Euclidean gcd, always nonnegative.
///
/// Plain remainder steps collapse in one step when either side is small,
/// which is the common case when reducing closed-form coefficients.
pub fn gcd<T: Int>(a: &T, b: &T) -> T {
    let mut x = a.abs();
    let mut y = b.abs();
    while !y.is_zero() {
        let r = x.mod_floor(&y);
        x = y;
        y = r;
    }
    x
}

/// `floor(sqrt(n))` for `n >= 0` by Newton descent from `n`; `None` for negative input.
///
/// Generic and unhurried. The big-integer path used by the search code lives in
/// [`power_filter::isqrt`](crate::power_filter::isqrt).
pub fn floor_sqrt<T: Int>(n: &T) -> Option<T> {
    if n.is_negative() {
        return None;
    }
    if n < &lit(2) {
        return Some(n.clone());
    }
    let two: T = lit(2);
    let mut x = n.clone();
    loop {
        let y = (x.clone() + n.clone() / x.clone()) / two.clone();
        if y >= x {
            return Some(x);
        }
        x = y;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd(&12i64, &18), 6);
        assert_eq!(gcd(&-12i64, &18), 6);
        assert_eq!(gcd(&0i64, &-5), 5);
        assert_eq!(gcd(&0i64, &0), 0);
        let big: BigInt = BigInt::from(3u8).pow(200) * 4;
        assert_eq!(gcd(&big, &BigInt::from(2)), BigInt::from(2));
    }

    #[test]
    fn floor_sqrt_small() {
        for n in 0i64..2000 {
            let r = floor_sqrt(&n).unwrap();
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "n = {n}");
        }
        assert_eq!(floor_sqrt(&-1i64), None);
    }
}
