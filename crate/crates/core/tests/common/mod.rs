//! Shared oracles and corpora for the integration tests. Nothing here calls
//! into the code paths it is used to check.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// `(text, C, a, D, b, E)` that must parse.
pub const ACCEPT: &[(&str, i64, u32, i64, u32, i64)] = &[
    ("x^2 = 2y^4 - 1", 1, 1, 2, 2, -1),
    ("3x^6 = 5y^2 + 7", 3, 3, 5, 1, 7),
    ("3*x^6=5*y^2+7", 3, 3, 5, 1, 7),
    ("x^2 = 2*y^4 - 1", 1, 1, 2, 2, -1),
    ("x^2=5y^4+1", 1, 1, 5, 2, 1),
    ("x^4 = 2y^2 - 1", 1, 2, 2, 1, -1),
    ("  x ^ 2   =  2 y ^ 4  -  1  ", 1, 1, 2, 2, -1),
    ("u^2 = 7v^2 + 1", 1, 1, 7, 1, 1),
    ("X^2 = 2Y^4 - 1", 1, 1, 2, 2, -1),
    ("alpha^2 = 3beta^2 - 2", 1, 1, 3, 1, -2),
    ("x1^2 = 2x2^2 + 1", 1, 1, 2, 1, 1),
    ("-x^2 = 2y^2 - 3", -1, 1, 2, 1, -3),
    ("-3x^2 = -5y^2 + 7", -3, 1, -5, 1, 7),
    ("x^2 = -y^2 + 25", 1, 1, -1, 1, 25),
    ("-2*x^2 = -y^4 + 1", -2, 1, -1, 2, 1),
    ("x^10 = 2y^8 - 1", 1, 5, 2, 4, -1),
    ("12*x^2 = 13*y^2 + 1000000007", 12, 1, 13, 1, 1_000_000_007),
    ("x^2 = 1y^2 + 1", 1, 1, 1, 1, 1),
    ("007x^2 = 002y^2 + 09", 7, 1, 2, 1, 9),
    ("x^002 = 2y^4 - 1", 1, 1, 2, 2, -1),
    ("_x^2 = 2_y^2 - 1", 1, 1, 2, 1, -1),
    ("x^2=2y^4-1", 1, 1, 2, 2, -1),
    ("x^2 = 991y^2 + 1", 1, 1, 991, 1, 1),
];

/// `(text, error code, position)` that must be rejected.
pub const REJECT: &[(&str, &str, usize)] = &[
    ("x^3 = 2y^4 - 1", "odd_exponent", 2),
    ("x^2 = 2y^5 - 1", "odd_exponent", 9),
    ("x^2 = 2y^4 @ 1", "illegal_character", 11),
    ("x^2 = 2y^4", "missing_constant", 10),
    ("x^2 = 2y^4 - 0", "zero_constant", 13),
    ("0x^2 = 2y^4 - 1", "zero_coefficient", 0),
    ("x^2 = 0*y^4 - 1", "zero_coefficient", 6),
    ("x^2 = 2x^4 - 1", "repeated_variable", 7),
    ("x^2 = 2y^4 - 1 + 3", "trailing_tokens", 15),
    ("x^2 = 2y^4 - 1 x", "trailing_tokens", 15),
    ("2y^4 - 1 = x^2", "unexpected_token", 5),
    ("x^0 = 2y^4 - 1", "exponent_too_small", 2),
    ("x = 2y^4 - 1", "unexpected_token", 2),
    ("x^2 = 2y^4 - ", "unexpected_token", 13),
    ("", "unexpected_token", 0),
    ("x^2 2y^4 - 1", "unexpected_token", 4),
    ("x^2 = 2y^4 * 1", "trailing_tokens", 11),
    ("x^2 = y^4 -- 1", "unexpected_token", 11),
    ("x^2 + 1 = 2y^4", "unexpected_token", 4),
    ("x^2 = 2y^99999999999 - 1", "odd_exponent", 9),
    ("x^2 = 2y^9999999998 - 1", "exponent_too_large", 9),
    ("x^2 = 2y^4 − 1", "illegal_character", 11),
];

/// Every `(X, Y)` with `0 <= Y <= y_max` and `X >= 0` satisfying
/// `C·X^(2a) = D·Y^(2b) + E`, by direct scan and num-integer roots.
pub fn brute_force(c: i64, a: u32, d: i64, b: u32, e: i64, y_max: u64) -> Vec<(BigInt, BigInt)> {
    let (c, d, e) = (BigInt::from(c), BigInt::from(d), BigInt::from(e));
    let mut out = Vec::new();
    for y in 0..=y_max {
        let y = BigInt::from(y);
        let rhs = &d * y.pow(2 * b) + &e;
        if !(&rhs % &c).is_zero() {
            continue;
        }
        let q = rhs / &c;
        if q.is_negative() {
            continue;
        }
        let x = q.nth_root(2 * a);
        if x.pow(2 * a) == q {
            out.push((x, y));
        }
    }
    out.sort();
    out
}

/// Plain `(3, 4; 2, 3)` iteration, written out with no shared helpers.
pub fn naive_pell(eps: i64, n: u64) -> (BigInt, BigInt) {
    let mut x = BigInt::from(1);
    let mut t = BigInt::from(eps);
    for _ in 0..n {
        let nx = 3 * &x + 4 * &t;
        let nt = 2 * &x + 3 * &t;
        x = nx;
        t = nt;
    }
    (x, t)
}
