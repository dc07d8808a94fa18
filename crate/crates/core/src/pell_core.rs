//! Solutions of the negative Pell equation `x² − 2t² = −1`, produced four
//! independent ways:
//!
//! 1. the linear recurrence `x' = 3x + 4t`, `t' = 2x + 3t` from the seed `(1, ε)`;
//! 2. the integer matrix power `Aⁿ·(1, ε)ᵀ` with `A = [[3, 4], [2, 3]]`;
//! 3. the closed form in Q(√2) built from `(3 + 2√2)ⁿ` and its conjugate;
//! 4. the binomial expansion of `t_n`.
//!
//! Any disagreement between them is a bug. [`agreement_suite`] runs the
//! cross-check, [`eigen_check`] verifies the diagonalization of `A` exactly.

use std::fmt;

use num_bigint::BigInt;

use crate::matrix::Mat2;
use crate::quad_field::{FieldError, Quad};
use crate::rational::Rational;
use crate::scalar::{lit, Int};

/// The sign `ε` of the seed `(1, ε)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Plus, Branch::Minus];

    pub fn sign(self) -> i64 {
        match self {
            Branch::Plus => 1,
            Branch::Minus => -1,
        }
    }

    pub fn from_sign(s: i64) -> Option<Self> {
        match s {
            1 => Some(Branch::Plus),
            -1 => Some(Branch::Minus),
            _ => None,
        }
    }

    fn value<T: Int>(self) -> T {
        lit(self.sign())
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sign())
    }
}

/// One solution `(x_n, t_n)` of `x² − 2t² = −1` with its provenance.
///
/// `t` stands for `y²` in the quartic; whether it actually is a square is
/// decided later by [`power_filter`](crate::power_filter).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PellPair<T = BigInt> {
    pub x: T,
    pub t: T,
    pub n: u64,
    pub eps: Branch,
}

impl<T: Int> PellPair<T> {
    /// `x² − 2t²`, which is `−1` for every genuine pair.
    pub fn norm(&self) -> T {
        self.x.clone() * self.x.clone() - lit::<T>(2) * self.t.clone() * self.t.clone()
    }

    pub fn satisfies_norm(&self) -> bool {
        self.norm() == lit(-1)
    }

    pub fn components(&self) -> (&T, &T) {
        (&self.x, &self.t)
    }
}

/// Coefficients of the step map `(x, t) → (xx·x + xt·t, tx·x + tt·t)`.
///
/// [`Recurrence::standard`] is the only map that produces Pell solutions;
/// other values exist so the verification suite can be fault-injected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence<T = BigInt> {
    pub xx: T,
    pub xt: T,
    pub tx: T,
    pub tt: T,
}

impl<T: Int> Recurrence<T> {
    pub fn standard() -> Self {
        Recurrence { xx: lit(3), xt: lit(4), tx: lit(2), tt: lit(3) }
    }

    pub fn matrix(&self) -> Mat2<T> {
        Mat2::new(self.xx.clone(), self.xt.clone(), self.tx.clone(), self.tt.clone())
    }

    pub fn step(&self, p: &PellPair<T>) -> PellPair<T> {
        let (x, t) = self.matrix().apply(&p.x, &p.t);
        PellPair { x, t, n: p.n + 1, eps: p.eps }
    }
}

impl<T: Int> Default for Recurrence<T> {
    fn default() -> Self {
        Self::standard()
    }
}

/// The multiplier matrix `A = [[3, 4], [2, 3]]`.
pub fn multiplier<T: Int>() -> Mat2<T> {
    Recurrence::standard().matrix()
}

/// `(x_0, t_0) = (1, ε)`.
pub fn seed<T: Int>(eps: Branch) -> PellPair<T> {
    PellPair { x: T::one(), t: eps.value(), n: 0, eps }
}

pub fn step<T: Int>(p: &PellPair<T>) -> PellPair<T> {
    Recurrence::standard().step(p)
}

/// Lazily iterates the recurrence from the seed; never ends.
#[derive(Clone, Debug)]
pub struct PellIter<T = BigInt> {
    next: PellPair<T>,
    rule: Recurrence<T>,
}

impl<T: Int> PellIter<T> {
    pub fn new(eps: Branch) -> Self {
        Self::with_rule(eps, Recurrence::standard())
    }

    pub fn with_rule(eps: Branch, rule: Recurrence<T>) -> Self {
        PellIter { next: seed(eps), rule }
    }
}

impl<T: Int> Iterator for PellIter<T> {
    type Item = PellPair<T>;

    fn next(&mut self) -> Option<PellPair<T>> {
        let following = self.rule.step(&self.next);
        Some(std::mem::replace(&mut self.next, following))
    }
}

/// Pairs for indices `0..=count` by the recurrence.
pub fn generate<T: Int>(eps: Branch, count: u64) -> Vec<PellPair<T>> {
    PellIter::new(eps).take(count as usize + 1).collect()
}

/// `mⁿ` by binary exponentiation; `m⁰ = I`.
pub fn mat_pow<T: Int>(m: &Mat2<T>, n: u64) -> Mat2<T> {
    m.pow(n)
}

/// `Aⁿ·(1, ε)ᵀ` in `O(log n)` matrix products.
pub fn solution_at<T: Int>(n: u64, eps: Branch) -> PellPair<T> {
    let an = mat_pow(&multiplier::<T>(), n);
    let (x, t) = an.apply(&T::one(), &eps.value());
    PellPair { x, t, n, eps }
}

fn sqrt2<T: Int>() -> Quad<T> {
    Quad::from_ints(T::zero(), T::one(), lit(2)).expect("2 is a valid radicand")
}

fn frac<T: Int>(num: i64, den: i64) -> Rational<T> {
    Rational::new(lit(num), lit(den)).expect("nonzero denominator")
}

/// `(3 + 2√2)ⁿ` and `(3 − 2√2)ⁿ`, the eigenvalue powers.
fn eigen_powers<T: Int>(n: u64) -> (Quad<T>, Quad<T>) {
    let unit = Quad::from_ints(lit(3), lit(2), lit(2)).expect("2 is a valid radicand");
    let a = unit.pow_u(n);
    let b = unit.conj().pow_u(n);
    (a, b)
}

/// `Aⁿ = [[(a+b)/2, (√2/2)(a−b)], [(√2/4)(a−b), (a+b)/2]]` with
/// `a = (3+2√2)ⁿ`, `b = (3−2√2)ⁿ`, evaluated exactly in Q(√2).
///
/// Fails if any entry does not collapse to an integer, which would be a bug.
pub fn closed_form_matrix<T: Int>(n: u64) -> Result<Mat2<Quad<T>>, FieldError> {
    let (a, b) = eigen_powers::<T>(n);
    let r2 = sqrt2::<T>();
    let sum = &a + &b;
    let diff = &a - &b;
    let diag = sum.scale(&frac(1, 2));
    let m = Mat2::new(
        diag.clone(),
        (&r2 * &diff).scale(&frac(1, 2)),
        (&r2 * &diff).scale(&frac(1, 4)),
        diag,
    );
    m.to_integer()?;
    Ok(m)
}

/// `P = [[2, 2], [√2, −√2]]`, whose columns are eigenvectors of `A`.
pub fn eigenvectors<T: Int>() -> Mat2<Quad<T>> {
    let r2 = sqrt2::<T>();
    let two = r2.rational_in(lit::<T>(2).into());
    Mat2::new(two.clone(), two, r2.clone(), -r2)
}

/// `D = diag(3 + 2√2, 3 − 2√2)`.
pub fn eigenvalues<T: Int>() -> Mat2<Quad<T>> {
    let (l1, l2) = eigen_powers::<T>(1);
    let zero = l1.zero_in();
    Mat2::new(l1, zero.clone(), zero, l2)
}

/// `P·Dⁿ·P⁻¹`, the diagonalization route to `Aⁿ`.
pub fn diagonalized_power<T: Int>(n: u64) -> Result<Mat2<Quad<T>>, FieldError> {
    let p = eigenvectors::<T>();
    let (a, b) = eigen_powers::<T>(n);
    let zero = a.zero_in();
    let dn = Mat2::new(a, zero.clone(), zero, b);
    Ok(p.mul(&dn).mul(&p.inverse()?))
}

/// `(x_n, t_n)` from the closed form
/// `x_n = (1+ε√2)/2·a + (1−ε√2)/2·b`, `t_n = (2ε+√2)/4·a + (2ε−√2)/4·b`.
pub fn closed_form<T: Int>(n: u64, eps: Branch) -> Result<PellPair<T>, FieldError> {
    let (a, b) = eigen_powers::<T>(n);
    let e: Rational<T> = eps.value::<T>().into();
    let r2 = sqrt2::<T>();
    let coeff = |rat: Rational<T>, irr: Rational<T>| r2.sibling(rat, irr);

    let x = &(&coeff(frac(1, 2), e.clone() * frac(1, 2)) * &a)
        + &(&coeff(frac(1, 2), -(e.clone() * frac(1, 2))) * &b);
    let t = &(&coeff(e.clone() * frac(1, 2), frac(1, 4)) * &a)
        + &(&coeff(e * frac(1, 2), frac(-1, 4)) * &b);

    Ok(PellPair { x: x.as_integer()?, t: t.as_integer()?, n, eps })
}

/// `t_n` from the binomial expansion
/// `ε·Σ C(n,2k)·3^(n−2k)·2^(3k) + Σ C(n,2k+1)·3^(n−2k−1)·2^(3k+1)`.
pub fn binomial_t<T: Int>(n: u64, eps: Branch) -> T {
    let three: T = lit(3);
    let mut even = T::zero();
    let mut odd = T::zero();
    let mut binom = T::one();
    let mut pow3 = num_traits::pow(three.clone(), n as usize);
    // (2√2)^j = two_part·√2^(j mod 2): 1, 2, 8, 16, 64, ...
    let mut two_part = T::one();
    for j in 0..=n {
        let term = binom.clone() * pow3.clone() * two_part.clone();
        if j % 2 == 0 {
            even = even + term;
            two_part = two_part * lit(2);
        } else {
            odd = odd + term;
            two_part = two_part * lit(4);
        }
        if j < n {
            binom = binom * T::from_u64(n - j).expect("index fits") / T::from_u64(j + 1).expect("index fits");
            pow3 = pow3 / three.clone();
        }
    }
    eps.value::<T>() * even + odd
}

/// One line of an [`EigenReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EigenReport {
    pub checks: Vec<CheckEntry>,
}

impl EigenReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckEntry { name: name.into(), passed, detail: detail.into() });
    }
}

/// Verifies the diagonalization of `A` exactly in Q(√2):
/// each diagonal entry of `D` is a root of `det(A − λI) = λ² − 6λ + 1`,
/// `P` is invertible, `P⁻¹·A·P = D`, and `A·v = λ·v` for each column of `P`.
pub fn eigen_check() -> EigenReport {
    let mut report = EigenReport::default();
    let a = multiplier::<BigInt>().into_field(&sqrt2());
    let p = eigenvectors::<BigInt>();
    let d = eigenvalues::<BigInt>();
    let id = Mat2::identity_in(&d.e11);

    for (label, lambda) in [("lambda1", &d.e11), ("lambda2", &d.e22)] {
        let shifted = Mat2::new(
            &a.e11 - lambda,
            a.e12.clone(),
            a.e21.clone(),
            &a.e22 - lambda,
        );
        let det = shifted.det();
        let six = lambda.rational_in(BigInt::from(6).into());
        let poly = &(&(lambda * lambda) - &(&six * lambda)) + &lambda.one_in();
        report.push(
            format!("characteristic root {label}"),
            det.is_zero() && poly.is_zero(),
            format!("lambda = {lambda}; det(A - lambda*I) = {det}; lambda^2 - 6*lambda + 1 = {poly}"),
        );
    }

    let det_p = p.det();
    let p_inv = match p.inverse() {
        Ok(inv) => {
            let ok = p.mul(&inv) == id && inv.mul(&p) == id;
            report.push("P invertible", ok, format!("det(P) = {det_p}"));
            Some(inv)
        }
        Err(e) => {
            report.push("P invertible", false, format!("det(P) = {det_p}: {e}"));
            None
        }
    };

    match p_inv {
        Some(inv) => {
            let conj = inv.mul(&a).mul(&p);
            report.push(
                "P^-1*A*P = D",
                conj == d,
                format!(
                    "[[{}, {}], [{}, {}]]",
                    conj.e11, conj.e12, conj.e21, conj.e22
                ),
            );
        }
        None => report.push("P^-1*A*P = D", false, "P is singular"),
    }

    for (label, v0, v1, lambda) in [
        ("A*v1 = lambda1*v1", &p.e11, &p.e21, &d.e11),
        ("A*v2 = lambda2*v2", &p.e12, &p.e22, &d.e22),
    ] {
        let (w0, w1) = a.apply(v0, v1);
        let ok = w0 == lambda * v0 && w1 == lambda * v1;
        report.push(label, ok, format!("A*v = ({w0}, {w1})"));
    }

    report
}

/// Which generation paths disagreed first, and where.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementFailure {
    pub n: u64,
    pub eps: Branch,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgreementReport {
    pub max_n: u64,
    pub indices_checked: u64,
    pub first_failure: Option<AgreementFailure>,
}

impl AgreementReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// For `n = 0..=max_n` and both branches, compares the recurrence `rule`
/// against the matrix power, the closed form and the binomial sum, and checks
/// `x² − 2t² = −1`. Stops at the first failing index.
pub fn agreement_suite(max_n: u64, rule: &Recurrence<BigInt>) -> AgreementReport {
    let mut checked = 0;
    // Failures are ordered by index first, then branch.
    let mut iters: Vec<_> = Branch::BOTH
        .iter()
        .map(|&eps| PellIter::with_rule(eps, rule.clone()))
        .collect();
    for n in 0..=max_n {
        for (iter, &eps) in iters.iter_mut().zip(Branch::BOTH.iter()) {
            let rec = iter.next().expect("infinite iterator");
            checked += 1;
            if let Some(reason) = disagreement(&rec, n, eps) {
                return AgreementReport {
                    max_n,
                    indices_checked: checked,
                    first_failure: Some(AgreementFailure { n, eps, reason }),
                };
            }
        }
    }
    AgreementReport { max_n, indices_checked: checked, first_failure: None }
}

fn disagreement(rec: &PellPair<BigInt>, n: u64, eps: Branch) -> Option<String> {
    let mat = solution_at::<BigInt>(n, eps);
    if rec != &mat {
        return Some(format!(
            "recurrence ({}, {}) != matrix power ({}, {})",
            rec.x, rec.t, mat.x, mat.t
        ));
    }
    match closed_form::<BigInt>(n, eps) {
        Ok(cf) if cf == mat => {}
        Ok(cf) => {
            return Some(format!(
                "closed form ({}, {}) != matrix power ({}, {})",
                cf.x, cf.t, mat.x, mat.t
            ))
        }
        Err(e) => return Some(format!("closed form failed to collapse: {e}")),
    }
    let bt = binomial_t::<BigInt>(n, eps);
    if bt != mat.t {
        return Some(format!("binomial sum {bt} != t {}", mat.t));
    }
    if !mat.satisfies_norm() {
        return Some(format!("x^2 - 2t^2 = {} (expected -1)", mat.norm()));
    }
    None
}
