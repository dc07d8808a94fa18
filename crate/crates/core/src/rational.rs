//! Exact fractions over an [`Int`] scalar, always stored in lowest terms.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{gcd, Int};

/// `num / den` with `den > 0` and `gcd(|num|, den) = 1`.
///
/// Zero is stored as `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rational<T> {
    num: T,
    den: T,
}

impl<T: Int> Rational<T> {
    /// Builds a reduced fraction. Returns `None` when `den` is zero.
    pub fn new(num: T, den: T) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::reduce(num, den))
    }

    pub fn from_integer(num: T) -> Self {
        Rational { num, den: T::one() }
    }

    fn reduce(mut num: T, mut den: T) -> Self {
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if num.is_zero() {
            return Rational { num, den: T::one() };
        }
        if !den.is_one() {
            let g = gcd(&num, &den);
            if !g.is_one() {
                num = num / g.clone();
                den = den / g;
            }
        }
        Rational { num, den }
    }

    pub fn numer(&self) -> &T {
        &self.num
    }

    pub fn denom(&self) -> &T {
        &self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    /// The value as an integer, if the denominator is 1.
    pub fn to_integer(&self) -> Option<T> {
        self.is_integer().then(|| self.num.clone())
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.recip().map(|r| self.clone() * r)
    }
}

impl<T: Int> From<T> for Rational<T> {
    fn from(v: T) -> Self {
        Self::from_integer(v)
    }
}

impl<T: Int> Zero for Rational<T> {
    fn zero() -> Self {
        Self::from_integer(T::zero())
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<T: Int> One for Rational<T> {
    fn one() -> Self {
        Self::from_integer(T::one())
    }
}

impl<T: Int> Add for Rational<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            return Self::reduce(self.num + rhs.num, self.den);
        }
        let num = self.num * rhs.den.clone() + rhs.num * self.den.clone();
        Self::reduce(num, self.den * rhs.den)
    }
}

impl<T: Int> Sub for Rational<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Int> Neg for Rational<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Rational { num: -self.num, den: self.den }
    }
}

impl<T: Int> Mul for Rational<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_integer(self.num * rhs.num);
        }
        // Cross-cancel first so the products stay small.
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        if g1.is_zero() || g2.is_zero() {
            return Self::zero();
        }
        let num = (self.num / g1.clone()) * (rhs.num / g2.clone());
        let den = (self.den / g2) * (rhs.den / g1);
        Rational { num, den }
    }
}

impl<T: Int> Div for Rational<T> {
    type Output = Self;

    /// Panics on division by zero; use [`Rational::checked_div`] otherwise.
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs).expect("rational division by zero")
    }
}

impl<T: Int> fmt::Display for Rational<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational<i64> {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn reduces_and_normalizes_sign() {
        let q = r(6, -4);
        assert_eq!((*q.numer(), *q.denom()), (-3, 2));
        assert_eq!(r(0, -7), Rational::zero());
        assert_eq!(*r(0, -7).denom(), 1);
        assert!(Rational::new(1i64, 0).is_none());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(r(1, 2) + r(1, 3), r(5, 6));
        assert_eq!(r(1, 2) - r(1, 2), Rational::zero());
        assert_eq!(r(2, 3) * r(9, 4), r(3, 2));
        assert_eq!(r(2, 3) / r(4, 9), r(3, 2));
        assert!(r(1, 2).checked_div(&Rational::zero()).is_none());
        assert_eq!(r(-3, 4).to_string(), "-3/4");
        assert_eq!(r(8, 4).to_string(), "2");
    }

    #[test]
    fn big_coefficients() {
        let big = BigInt::from(3).pow(300);
        let half = Rational::new(BigInt::from(1), BigInt::from(2)).unwrap();
        let x = Rational::from_integer(big.clone() * 2) * half;
        assert_eq!(x.to_integer(), Some(big));
    }

    fn reduced(q: &Rational<i64>) -> bool {
        *q.denom() > 0 && gcd(q.numer(), q.denom()) == 1
    }

    proptest! {
        #[test]
        fn always_reduced(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let x = r(a, b);
            let y = r(c, d);
            prop_assert!(reduced(&(x.clone() + y.clone())));
            prop_assert!(reduced(&(x.clone() - y.clone())));
            prop_assert!(reduced(&(x.clone() * y.clone())));
            if c != 0 {
                prop_assert!(reduced(&(x.clone() / y.clone())));
                prop_assert_eq!((x.clone() / y.clone()) * y, x);
            }
        }
    }
}
