//! Integer roots, perfect-power tests, and the square filter that turns Pell
//! solutions `(x, t)` into solutions `(x, y)` of `x² = 2y⁴ − 1` with `t = y²`.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::pell_core::{solution_at, step, Branch};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("root of negative value {0}")]
    Negative(String),
    #[error("root degree must be >= 1, got {0}")]
    BadDegree(u32),
}

/// Largest `r` with `r² <= m`, by Newton descent from a power of two above the root.
pub fn isqrt_unsigned(m: &BigUint) -> BigUint {
    if m.bits() <= 120 {
        return BigUint::from(isqrt_u128(m.to_u128().expect("fits in 120 bits")));
    }
    let mut x = BigUint::one() << m.bits().div_ceil(2);
    loop {
        let y = (&x + m / &x) >> 1u32;
        if y >= x {
            return x;
        }
        x = y;
    }
}

fn isqrt_u128(m: u128) -> u128 {
    // The float estimate is within a few units of the root; fix it up exactly.
    let mut r = (m as f64).sqrt() as u128;
    while r * r > m {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= m {
        r += 1;
    }
    r
}

/// Largest `r` with `r² <= m`. Fails for negative `m`.
pub fn isqrt(m: &BigInt) -> Result<BigInt, RootError> {
    match m.to_biguint() {
        Some(u) => Ok(BigInt::from(isqrt_unsigned(&u))),
        None => Err(RootError::Negative(m.to_string())),
    }
}

const fn square_residues<const N: usize>() -> [bool; N] {
    let mut table = [false; N];
    let mut i = 0;
    while i < N {
        table[(i * i) % N] = true;
        i += 1;
    }
    table
}

const SQ64: [bool; 64] = square_residues::<64>();
const SQ63: [bool; 63] = square_residues::<63>();
const SQ65: [bool; 65] = square_residues::<65>();

/// Cheap necessary condition for `m` being a square: residues mod 64, 63, 65.
pub fn maybe_square(m: &BigUint) -> bool {
    let low = m.iter_u64_digits().next().unwrap_or(0);
    if !SQ64[(low & 63) as usize] {
        return false;
    }
    let r63 = (m % 63u32).to_u32().unwrap_or(0) as usize;
    if !SQ63[r63] {
        return false;
    }
    let r65 = (m % 65u32).to_u32().unwrap_or(0) as usize;
    SQ65[r65]
}

/// The square root of `m` if `m` is a perfect square; `None` otherwise
/// (including every negative `m`).
pub fn is_perfect_square(m: &BigInt) -> Option<BigInt> {
    is_perfect_square_with(m, false)
}

/// [`is_perfect_square`] with the residue pre-filter switchable.
pub fn is_perfect_square_with(m: &BigInt, prefilter: bool) -> Option<BigInt> {
    let u = m.to_biguint()?;
    if prefilter && !maybe_square(&u) {
        return None;
    }
    let r = isqrt_unsigned(&u);
    (&r * &r == u).then(|| BigInt::from(r))
}

/// Largest `r` with `r^k <= m`, by Newton descent.
pub fn floor_nth_root(m: &BigUint, k: u32) -> Result<BigUint, RootError> {
    match k {
        0 => Err(RootError::BadDegree(k)),
        1 => Ok(m.clone()),
        2 => Ok(isqrt_unsigned(m)),
        _ => {
            if m.is_zero() {
                return Ok(BigUint::zero());
            }
            let k_big = BigUint::from(k);
            let mut x = BigUint::one() << m.bits().div_ceil(u64::from(k));
            loop {
                let y = (&x * (k - 1) + m / x.pow(k - 1)) / &k_big;
                if y >= x {
                    return Ok(x);
                }
                x = y;
            }
        }
    }
}

/// `r` with `r^k = m` exactly, if it exists.
pub fn nth_root(m: &BigInt, k: u32) -> Result<Option<BigInt>, RootError> {
    if k < 1 {
        return Err(RootError::BadDegree(k));
    }
    let u = m.to_biguint().ok_or_else(|| RootError::Negative(m.to_string()))?;
    let r = floor_nth_root(&u, k)?;
    Ok((r.pow(k) == u).then(|| BigInt::from_biguint(Sign::Plus, r)))
}

/// A positive solution of `x² = 2y⁴ − 1`, with the Pell index it came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuarticSolution {
    pub x: BigInt,
    pub y: BigInt,
    pub n: u64,
    pub eps: Branch,
}

impl QuarticSolution {
    pub fn verify(&self) -> bool {
        let y2 = &self.y * &self.y;
        &self.x * &self.x == BigInt::from(2) * &y2 * &y2 - 1
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Reject non-squares by residue tables before taking the root.
    pub prefilter: bool,
}

const CHUNK: u64 = 64;

/// Scans Pell indices `0..=max_n` on both branches and keeps the pairs whose
/// `|t|` is a perfect square. Identical `(x, y)` from different branches are
/// reported once, at the smallest `(n, ε)`.
pub fn search_quartic(max_n: u64) -> Vec<QuarticSolution> {
    search_quartic_with(max_n, SearchOptions::default())
}

pub fn search_quartic_with(max_n: u64, opts: SearchOptions) -> Vec<QuarticSolution> {
    let chunks: Vec<(u64, Branch)> = (0..=max_n / CHUNK)
        .flat_map(|c| Branch::BOTH.map(|eps| (c * CHUNK, eps)))
        .filter(|(start, _)| *start <= max_n)
        .collect();

    // Each chunk jumps to its start with a matrix power, then steps.
    let mut found: Vec<QuarticSolution> = chunks
        .into_par_iter()
        .flat_map_iter(|(start, eps)| {
            let end = (start + CHUNK - 1).min(max_n);
            let mut p = solution_at::<BigInt>(start, eps);
            let mut hits = Vec::new();
            loop {
                if let Some(y) = is_perfect_square_with(&p.t.abs(), opts.prefilter) {
                    hits.push(QuarticSolution { x: p.x.abs(), y, n: p.n, eps });
                }
                if p.n == end {
                    break;
                }
                p = step(&p);
            }
            hits
        })
        .collect();

    found.sort_by(|a, b| (a.n, a.eps).cmp(&(b.n, b.eps)));
    let mut seen = std::collections::HashSet::new();
    found.retain(|s| seen.insert((s.x.clone(), s.y.clone())));
    found
}
