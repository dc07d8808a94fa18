//! Exact arithmetic in the quadratic field Q(√d).
//!
//! Elements carry their radicand. Binary operations between elements of
//! different fields are rejected: the `try_*` methods return
//! [`FieldError::RadicandMismatch`], the operator impls panic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::Rational;
use crate::scalar::{floor_sqrt, lit, Int};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("radicand mismatch: sqrt({left}) vs sqrt({right})")]
    RadicandMismatch { left: String, right: String },
    #[error("radicand {0} must be a nonsquare integer >= 2")]
    InvalidRadicand(String),
    #[error("division by zero in Q(sqrt({0}))")]
    DivisionByZero(String),
    #[error("value {0} has a nonzero irrational part")]
    NonzeroIrrationalPart(String),
    #[error("value {0} has a non-integral rational part")]
    NonIntegralRationalPart(String),
}

/// `a + b·√d` with rational `a`, `b` and nonsquare radicand `d >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad<T> {
    a: Rational<T>,
    b: Rational<T>,
    d: T,
}

/// Returns an error unless `d >= 2` and `d` is not a perfect square.
pub fn check_radicand<T: Int>(d: &T) -> Result<(), FieldError> {
    let bad = || FieldError::InvalidRadicand(d.to_string());
    if d < &lit(2) {
        return Err(bad());
    }
    let r = floor_sqrt(d).ok_or_else(bad)?;
    if &(r.clone() * r) == d {
        return Err(bad());
    }
    Ok(())
}

impl<T: Int> Quad<T> {
    pub fn new(a: Rational<T>, b: Rational<T>, d: T) -> Result<Self, FieldError> {
        check_radicand(&d)?;
        Ok(Quad { a, b, d })
    }

    /// Integer coefficients `a + b·√d`.
    pub fn from_ints(a: T, b: T, d: T) -> Result<Self, FieldError> {
        Self::new(a.into(), b.into(), d)
    }

    /// Same field as `self`, new coefficients.
    pub fn sibling(&self, a: Rational<T>, b: Rational<T>) -> Self {
        Quad { a, b, d: self.d.clone() }
    }

    pub fn rational_in(&self, a: Rational<T>) -> Self {
        self.sibling(a, Rational::zero())
    }

    pub fn zero_in(&self) -> Self {
        self.rational_in(Rational::zero())
    }

    pub fn one_in(&self) -> Self {
        self.rational_in(Rational::one())
    }

    /// `√d` itself.
    pub fn sqrt_in(&self) -> Self {
        self.sibling(Rational::zero(), Rational::one())
    }

    pub fn rational_part(&self) -> &Rational<T> {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational<T> {
        &self.b
    }

    pub fn radicand(&self) -> &T {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(FieldError::RadicandMismatch {
                left: self.d.to_string(),
                right: other.d.to_string(),
            })
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, FieldError> {
        self.same_field(rhs)?;
        Ok(self.sibling(self.a.clone() + rhs.a.clone(), self.b.clone() + rhs.b.clone()))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, FieldError> {
        self.try_add(&-rhs.clone())
    }

    /// `(a₁a₂ + d·b₁b₂) + (a₁b₂ + a₂b₁)√d`.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self, FieldError> {
        self.same_field(rhs)?;
        let d = Rational::from_integer(self.d.clone());
        let a = self.a.clone() * rhs.a.clone() + d * self.b.clone() * rhs.b.clone();
        let b = self.a.clone() * rhs.b.clone() + rhs.a.clone() * self.b.clone();
        Ok(self.sibling(a, b))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        self.same_field(rhs)?;
        self.try_mul(&rhs.inv()?)
    }

    /// Multiplies both coefficients by a rational scalar.
    pub fn scale(&self, k: &Rational<T>) -> Self {
        self.sibling(self.a.clone() * k.clone(), self.b.clone() * k.clone())
    }

    /// `a − b·√d`.
    pub fn conj(&self) -> Self {
        self.sibling(self.a.clone(), -self.b.clone())
    }

    /// `a² − d·b²`.
    pub fn norm(&self) -> Rational<T> {
        let d = Rational::from_integer(self.d.clone());
        self.a.clone() * self.a.clone() - d * self.b.clone() * self.b.clone()
    }

    /// `conj(u) / norm(u)`.
    pub fn inv(&self) -> Result<Self, FieldError> {
        // d nonsquare, so the norm vanishes only at zero.
        let n = self.norm();
        let r = n
            .recip()
            .ok_or_else(|| FieldError::DivisionByZero(self.d.to_string()))?;
        Ok(self.conj().scale(&r))
    }

    /// `selfⁿ` by binary exponentiation; negative `n` goes through [`Quad::inv`].
    pub fn pow(&self, n: i64) -> Result<Self, FieldError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        Ok(base.pow_u(n.unsigned_abs()))
    }

    pub fn pow_u(&self, mut n: u64) -> Self {
        let mut acc = self.one_in();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Collapses to an integer when the irrational part is zero and the
    /// rational part has denominator 1.
    pub fn as_integer(&self) -> Result<T, FieldError> {
        if !self.b.is_zero() {
            return Err(FieldError::NonzeroIrrationalPart(self.to_string()));
        }
        self.a
            .to_integer()
            .ok_or_else(|| FieldError::NonIntegralRationalPart(self.to_string()))
    }
}

impl<T: Int> Add for &Quad<T> {
    type Output = Quad<T>;

    fn add(self, rhs: Self) -> Quad<T> {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<T: Int> Sub for &Quad<T> {
    type Output = Quad<T>;

    fn sub(self, rhs: Self) -> Quad<T> {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<T: Int> Mul for &Quad<T> {
    type Output = Quad<T>;

    fn mul(self, rhs: Self) -> Quad<T> {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<T: Int> Add for Quad<T> {
    type Output = Quad<T>;

    fn add(self, rhs: Self) -> Quad<T> {
        &self + &rhs
    }
}

impl<T: Int> Sub for Quad<T> {
    type Output = Quad<T>;

    fn sub(self, rhs: Self) -> Quad<T> {
        &self - &rhs
    }
}

impl<T: Int> Mul for Quad<T> {
    type Output = Quad<T>;

    fn mul(self, rhs: Self) -> Quad<T> {
        &self * &rhs
    }
}

impl<T: Int> Neg for Quad<T> {
    type Output = Quad<T>;

    fn neg(self) -> Quad<T> {
        Quad { a: -self.a, b: -self.b, d: self.d }
    }
}

impl<T: Int> fmt::Display for Quad<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.a, -self.b.clone(), self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}
