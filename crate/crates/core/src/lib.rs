//! Exact solver for `x² = 2y⁴ − 1` and its generalization
//! `C·X^(2a) = D·Y^(2b) + E`.
//!
//! With `t = y²` the quartic becomes the negative Pell equation
//! `x² − 2t² = −1`. [`pell_core`] produces its solutions by recurrence, by
//! matrix power, by an exact closed form in Q(√2) and by a binomial sum, and
//! checks that all four agree. [`power_filter`] keeps the solutions whose `t`
//! is a perfect square. [`general_pell`] handles the generalized family via
//! generalized Pell conics, [`eqparse`] reads equations from text and [`cli`]
//! backs the command-line tool.
//!
//! The arithmetic core ([`rational`], [`quad_field`], [`matrix`],
//! [`pell_core`]) is generic over the integer scalar; the aliases below fix it
//! to [`BigInt`].

pub mod cli;
pub mod eqparse;
pub mod general_pell;
pub mod matrix;
pub mod pell_core;
pub mod power_filter;
pub mod quad_field;
pub mod rational;
pub mod scalar;

pub use num_bigint::BigInt;

pub use eqparse::{parse_equation, unparse, ParseError, ParseErrorKind};
pub use general_pell::{ConicForm, EquationSpec, PellClass, SolveOptions};
pub use pell_core::{Branch, PellPair};
pub use power_filter::QuarticSolution;
pub use scalar::Int;

/// Arbitrary-precision fraction.
pub type BigRational = rational::Rational<BigInt>;
/// Element of Q(√d) with arbitrary-precision coefficients.
pub type QuadElem = quad_field::Quad<BigInt>;
/// 2×2 big-integer matrix (`A`, `Aⁿ`).
pub type IntMat2 = matrix::Mat2<BigInt>;
/// 2×2 matrix over Q(√d) (`P`, `D`, `P⁻¹`).
pub type QuadMat2 = matrix::Mat2<QuadElem>;
