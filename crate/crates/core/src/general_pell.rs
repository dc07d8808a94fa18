//! `C·X^(2a) = D·Y^(2b) + E`, solved through the conic `P·U² − Q·V² = R`
//! with `U = X^a`, `V = Y^b`.
//!
//! Base solutions of the conic are found by a bounded scan over `V`, then
//! pushed along the orbit of the fundamental unit of `x² − PQ·y² = 1`. The
//! survivors whose components are exact `a`-th and `b`-th powers are
//! solutions of the original equation. The output is the set of solutions
//! found within the bounds, not a proof that no others exist.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::power_filter::{is_perfect_square, isqrt, maybe_square, nth_root};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PellError {
    #[error("coefficient {0} must be nonzero")]
    ZeroCoefficient(&'static str),
    #[error("exponent {0} must be >= 1")]
    ZeroExponent(&'static str),
    #[error("{0} must be a nonsquare integer >= 2")]
    BadDiscriminant(String),
    #[error("({u}, {v}) does not satisfy {conic}")]
    NotOnConic { u: String, v: String, conic: String },
    #[error("({p}, {q}) is not a unit: p^2 - {d}*q^2 != 1")]
    NotAUnit { p: String, q: String, d: String },
}

/// Parameters of `C·X^(2a) = D·Y^(2b) + E` with `C, D, E ≠ 0` and `a, b >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EquationSpec {
    c: BigInt,
    a: u32,
    d: BigInt,
    b: u32,
    e: BigInt,
}

impl EquationSpec {
    pub fn new(
        c: impl Into<BigInt>,
        a: u32,
        d: impl Into<BigInt>,
        b: u32,
        e: impl Into<BigInt>,
    ) -> Result<Self, PellError> {
        let (c, d, e) = (c.into(), d.into(), e.into());
        if c.is_zero() {
            return Err(PellError::ZeroCoefficient("C"));
        }
        if d.is_zero() {
            return Err(PellError::ZeroCoefficient("D"));
        }
        if e.is_zero() {
            return Err(PellError::ZeroCoefficient("E"));
        }
        if a == 0 {
            return Err(PellError::ZeroExponent("a"));
        }
        if b == 0 {
            return Err(PellError::ZeroExponent("b"));
        }
        Ok(EquationSpec { c, a, d, b, e })
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn e(&self) -> &BigInt {
        &self.e
    }

    /// `x² = 2y⁴ − 1`.
    pub fn is_title_quartic(&self) -> bool {
        self.c.is_one() && self.a == 1 && self.d == BigInt::from(2) && self.b == 2 && self.e == BigInt::from(-1)
    }

    /// Exact substitution check.
    pub fn holds(&self, x: &BigInt, y: &BigInt) -> bool {
        &self.c * x.pow(2 * self.a) == &self.d * y.pow(2 * self.b) + &self.e
    }
}

/// `P·U² − Q·V² = R`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConicForm {
    pub p: BigInt,
    pub q: BigInt,
    pub r: BigInt,
}

impl ConicForm {
    pub fn contains(&self, u: &BigInt, v: &BigInt) -> bool {
        &self.p * u * u - &self.q * v * v == self.r
    }

    /// `P·Q`, the discriminant whose unit drives the solution families.
    pub fn discriminant(&self) -> BigInt {
        &self.p * &self.q
    }
}

impl fmt::Display for ConicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*U^2 - {}*V^2 = {}", self.p, self.q, self.r)
    }
}

/// A base solution together with the unit that generates its family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellClass {
    pub base: (BigInt, BigInt),
    pub unit: (BigInt, BigInt),
}

impl PellClass {
    pub fn new(conic: &ConicForm, base: (BigInt, BigInt), unit: (BigInt, BigInt)) -> Result<Self, PellError> {
        check_family_inputs(conic, &base, &unit)?;
        Ok(PellClass { base, unit })
    }

    pub fn family(&self, conic: &ConicForm, count: u64) -> Vec<(BigInt, BigInt)> {
        family_unchecked(conic, &self.base, &self.unit, count)
    }
}

/// `U = X^a`, `V = Y^b` turns the spec into `C·U² − D·V² = E`.
pub fn reduce_spec(spec: &EquationSpec) -> ConicForm {
    ConicForm { p: spec.c.clone(), q: spec.d.clone(), r: spec.e.clone() }
}

fn check_discriminant(d: &BigInt) -> Result<BigInt, PellError> {
    let bad = || PellError::BadDiscriminant(d.to_string());
    if d < &BigInt::from(2) {
        return Err(bad());
    }
    let root = isqrt(d).map_err(|_| bad())?;
    if &(&root * &root) == d {
        return Err(bad());
    }
    Ok(root)
}

/// `√d = [a0; period…]` by the quadratic-surd recurrence
/// `m' = a·den − m`, `den' = (d − m'²)/den`, `a' = ⌊(a0 + m')/den'⌋`.
/// The period ends at the first term equal to `2·a0`.
pub fn cf_sqrt(d: &BigInt) -> Result<(BigInt, Vec<BigInt>), PellError> {
    let a0 = check_discriminant(d)?;
    let two_a0 = &a0 * 2;
    let mut m = BigInt::zero();
    let mut den = BigInt::one();
    let mut a = a0.clone();
    let mut period = Vec::new();
    loop {
        m = &a * &den - &m;
        den = (d - &m * &m) / &den;
        a = (&a0 + &m) / &den;
        period.push(a.clone());
        if a == two_a0 {
            return Ok((a0, period));
        }
    }
}

/// Smallest positive `(p, q)` with `p² − d·q² = 1`, read off the convergents
/// of [`cf_sqrt`].
pub fn fundamental_unit(d: &BigInt) -> Result<(BigInt, BigInt), PellError> {
    let (a0, period) = cf_sqrt(d)?;
    let (mut h_prev, mut h) = (BigInt::one(), a0.clone());
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    let mut terms = period.iter().cycle();
    loop {
        if &h * &h - d * &k * &k == BigInt::one() {
            return Ok((h, k));
        }
        let t = terms.next().expect("period is nonempty");
        let h_next = t * &h + &h_prev;
        let k_next = t * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// Every `(u, v)` with `0 <= v <= v_bound`, `u >= 0` on the conic, by solving
/// for `u²` at each `v`.
pub fn base_solutions(conic: &ConicForm, v_bound: u64) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    for v in 0..=v_bound {
        let v = BigInt::from(v);
        let num = &conic.r + &conic.q * &v * &v;
        let (u2, rem) = num.div_rem(&conic.p);
        if !rem.is_zero() || u2.is_negative() {
            continue;
        }
        // Residue rejection first; the exact root only runs on candidates.
        if !maybe_square(u2.magnitude()) {
            continue;
        }
        if let Some(u) = is_perfect_square(&u2) {
            out.push((u, v));
        }
    }
    out
}

fn check_family_inputs(
    conic: &ConicForm,
    base: &(BigInt, BigInt),
    unit: &(BigInt, BigInt),
) -> Result<(), PellError> {
    if !conic.contains(&base.0, &base.1) {
        return Err(PellError::NotOnConic {
            u: base.0.to_string(),
            v: base.1.to_string(),
            conic: conic.to_string(),
        });
    }
    let disc = conic.discriminant();
    let (p, q) = unit;
    if p * p - &disc * q * q != BigInt::one() {
        return Err(PellError::NotAUnit { p: p.to_string(), q: q.to_string(), d: disc.to_string() });
    }
    Ok(())
}

fn family_unchecked(
    conic: &ConicForm,
    base: &(BigInt, BigInt),
    unit: &(BigInt, BigInt),
    count: u64,
) -> Vec<(BigInt, BigInt)> {
    let (p, q) = unit;
    let qq = &conic.q * q;
    let pq = &conic.p * q;
    let mut out = Vec::with_capacity(count as usize + 1);
    let (mut u, mut v) = base.clone();
    out.push((u.clone(), v.clone()));
    for _ in 0..count {
        let nu = p * &u + &qq * &v;
        let nv = &pq * &u + p * &v;
        u = nu;
        v = nv;
        out.push((u.clone(), v.clone()));
    }
    out
}

/// Orbit of `base` under `(u, v) → (p·u + Q·q·v, P·q·u + p·v)`, which keeps
/// `P·u² − Q·v² = R` whenever `p² − PQ·q² = 1`. Returns `count + 1` pairs,
/// starting with `base`.
pub fn generate_family(
    conic: &ConicForm,
    base: &(BigInt, BigInt),
    unit: &(BigInt, BigInt),
    count: u64,
) -> Result<Vec<(BigInt, BigInt)>, PellError> {
    check_family_inputs(conic, base, unit)?;
    Ok(family_unchecked(conic, base, unit, count))
}

/// The unit used for family generation, or `None` for degenerate conics
/// (`PQ < 0` or `PQ` a perfect square) which only get the bounded scan.
pub fn family_unit(conic: &ConicForm) -> Option<(BigInt, BigInt)> {
    let disc = conic.discriminant();
    if !disc.is_positive() {
        return None;
    }
    if disc.is_one() || is_perfect_square(&disc).is_some() {
        return None;
    }
    fundamental_unit(&disc).ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Upper bound on `V = Y^b` for the base scan.
    pub v_bound: u64,
    /// Unit steps applied to each base solution.
    pub family_count: u64,
    /// Admit solutions with `X = 0` or `Y = 0`.
    pub allow_zero: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { v_bound: 1_000_000, family_count: 64, allow_zero: false }
    }
}

/// Solutions `(X, Y)`, `X, Y >= 0`, found within the bounds; sorted, deduplicated.
pub fn solve_general(spec: &EquationSpec, opts: &SolveOptions) -> Vec<(BigInt, BigInt)> {
    let conic = reduce_spec(spec);
    let bases = base_solutions(&conic, opts.v_bound);
    let candidates: Vec<(BigInt, BigInt)> = match family_unit(&conic) {
        Some(unit) => bases
            .par_iter()
            .flat_map_iter(|base| family_unchecked(&conic, base, &unit, opts.family_count))
            .collect(),
        None => bases,
    };

    let mut out: Vec<(BigInt, BigInt)> = candidates
        .iter()
        .filter_map(|(u, v)| {
            let x = nth_root(&u.abs(), spec.a).ok()??;
            let y = nth_root(&v.abs(), spec.b).ok()??;
            Some((x, y))
        })
        .filter(|(x, y)| opts.allow_zero || (x.is_positive() && y.is_positive()))
        .collect();
    out.sort();
    out.dedup();
    debug_assert!(out.iter().all(|(x, y)| spec.holds(x, y)));
    out
}
