//! 2×2 matrices over a ring: big integers for `A` and `Aⁿ`, Q(√d) elements for
//! the diagonalization `P`, `D`, `P⁻¹`.

use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::quad_field::{FieldError, Quad};
use crate::scalar::Int;

/// Row-major `[[e11, e12], [e21, e22]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2<T> {
    pub e11: T,
    pub e12: T,
    pub e21: T,
    pub e22: T,
}

impl<T> Mat2<T> {
    pub const fn new(e11: T, e12: T, e21: T, e22: T) -> Self {
        Mat2 { e11, e12, e21, e22 }
    }

    pub fn map<U>(self, mut f: impl FnMut(T) -> U) -> Mat2<U> {
        Mat2::new(f(self.e11), f(self.e12), f(self.e21), f(self.e22))
    }

    pub fn try_map<U, E>(self, mut f: impl FnMut(T) -> Result<U, E>) -> Result<Mat2<U>, E> {
        Ok(Mat2::new(f(self.e11)?, f(self.e12)?, f(self.e21)?, f(self.e22)?))
    }

    pub fn entries(&self) -> [&T; 4] {
        [&self.e11, &self.e12, &self.e21, &self.e22]
    }
}

impl<T> Mat2<T>
where
    T: Clone + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    pub fn mul(&self, rhs: &Self) -> Self {
        let m = |a: &T, b: &T, c: &T, d: &T| a.clone() * b.clone() + c.clone() * d.clone();
        Mat2::new(
            m(&self.e11, &rhs.e11, &self.e12, &rhs.e21),
            m(&self.e11, &rhs.e12, &self.e12, &rhs.e22),
            m(&self.e21, &rhs.e11, &self.e22, &rhs.e21),
            m(&self.e21, &rhs.e12, &self.e22, &rhs.e22),
        )
    }

    /// `self · (v0, v1)ᵀ`.
    pub fn apply(&self, v0: &T, v1: &T) -> (T, T) {
        (
            self.e11.clone() * v0.clone() + self.e12.clone() * v1.clone(),
            self.e21.clone() * v0.clone() + self.e22.clone() * v1.clone(),
        )
    }

    pub fn det(&self) -> T {
        self.e11.clone() * self.e22.clone() - self.e12.clone() * self.e21.clone()
    }

    pub fn trace(&self) -> T {
        self.e11.clone() + self.e22.clone()
    }

    /// `selfⁿ` by square-and-multiply starting from `identity`.
    pub fn pow_from(&self, identity: Self, mut n: u64) -> Self {
        let mut acc = identity;
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl<T: Zero + One> Mat2<T> {
    pub fn identity() -> Self {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }
}

impl<T> Mat2<T>
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    /// `selfⁿ`; `self⁰ = I`.
    pub fn pow(&self, n: u64) -> Self {
        self.pow_from(Self::identity(), n)
    }
}

impl<T: Int> Mat2<Quad<T>> {
    /// Identity in the field of `like`.
    pub fn identity_in(like: &Quad<T>) -> Self {
        Mat2::new(like.one_in(), like.zero_in(), like.zero_in(), like.one_in())
    }

    /// Inverse via the adjugate; fails on a singular matrix.
    pub fn inverse(&self) -> Result<Self, FieldError> {
        let det_inv = self.det().inv()?;
        let s = |x: &Quad<T>| x * &det_inv;
        Ok(Mat2::new(
            s(&self.e22),
            s(&-self.e12.clone()),
            s(&-self.e21.clone()),
            s(&self.e11),
        ))
    }

    /// Collapses every entry to an integer.
    pub fn to_integer(&self) -> Result<Mat2<T>, FieldError> {
        self.clone().try_map(|q| q.as_integer())
    }
}

impl<T: Int> Mat2<T> {
    /// Embeds an integer matrix into Q(√d).
    pub fn into_field(self, like: &Quad<T>) -> Mat2<Quad<T>> {
        self.map(|v| like.rational_in(v.into()))
    }
}
