//! Closed forms for the size of the family `S1` of `(d+2(i-2))`-subsets
//! meeting every block in at most `d+i-2` points.
//!
//! `n = |S1|` is `b F(v-k) / prod_{l=2..4} (v-k+c-2i+l)` where `F` has a
//! direct form (two binomial sums) and a closed form `C(x, i-2)(p x^2 + q x + r)`.
//! Both are provided so they can be checked against each other; `G` is the
//! companion polynomial that vanishes at `0..i-1`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{invalid, Result};
use crate::exact_arith::{binomial, rat, ExactInt, ExactRational};

fn falling3(x: i64, c: i64, i: i64) -> BigInt {
    BigInt::from(x + c - 2 * i + 4) * (x + c - 2 * i + 3) * (x + c - 2 * i + 2)
}

fn top3(d: i64, i: i64) -> BigInt {
    BigInt::from(d + 2 * i - 1) * (d + 2 * i - 2) * (d + 2 * i - 3)
}

/// `F(x)` term by term for a non-negative integer `x`.
pub fn f_direct(x: i64, k: i64, d: i64, i: i64) -> ExactRational {
    let c = k - d;
    let upper: ExactInt = (0..i).map(|j| binomial(k, d + 2 * i - 1 - j) * binomial(x, j)).sum();
    let lower: ExactInt = (0..=(i - 3))
        .map(|j| binomial(k, d + 2 * i - 4 - j) * binomial(x, j))
        .sum();
    rat(top3(d, i) * upper - falling3(x, c, i) * lower)
}

/// `(p, q, r)` of the closed form of `F`. Needs `i >= 2`.
pub fn f_coefficients(k: i64, d: i64, i: i64) -> (ExactRational, ExactRational, ExactRational) {
    let base = binomial(k, d + i - 1);
    let (k, d, i) = (k as i128, d as i128, i as i128);
    let p = -(i - 2);
    let q_brace = d * d * d
        - (k - 6 * i + 7) * d * d
        - ((5 * i - 6) * k - (i - 1) * (9 * i - 11)) * d
        - (i - 1) * (4 * i - 5) * k
        + (i - 1) * (2 * i * i - 2 * i - 1);
    let r_brace = (2 * i - 3) * d * d * d - (3 * i - 4) * (k - 3 * i + 4) * d * d
        + ((i - 1) * k * k - (9 * i * i - 23 * i + 15) * k + (i - 1) * (12 * i * i - 33 * i + 23)) * d
        + (i - 1) * (i - 1) * k * k
        - (i - 1) * (6 * i * i - 16 * i + 11) * k
        + 2 * (2 * i - 3) * (i - 1) * (i - 1) * (i - 1);
    let base = rat(base);
    let inv = ExactRational::new(1.into(), BigInt::from(i - 1));
    (
        &base * rat(BigInt::from(p)),
        -(&base * &inv * rat(BigInt::from(q_brace))),
        &base * &inv * rat(BigInt::from(r_brace)),
    )
}

/// `C(x, i-2) (p x^2 + q x + r)`.
pub fn f_closed(x: i64, k: i64, d: i64, i: i64) -> ExactRational {
    let (p, q, r) = f_coefficients(k, d, i);
    let xr = rat(x);
    rat(binomial(x, i - 2)) * ((p * &xr + q) * &xr + r)
}

/// Companion polynomial `G(x)`; zero for every integer `0 <= x <= i-1`.
pub fn g_companion(x: i64, k: i64, d: i64, i: i64) -> ExactRational {
    let c = k - d;
    let upper: ExactInt = (0..i).map(|j| binomial(k, d + 2 * i - 1 - j) * binomial(x, j)).sum();
    let lower: ExactInt = (0..i).map(|j| binomial(k, d + 2 * i - 4 - j) * binomial(x, j)).sum();
    rat(top3(d, i) * upper - falling3(x, c, i) * lower)
}

/// `F - G` expressed through two binomials of `c + d`.
pub fn f_minus_g(x: i64, k: i64, d: i64, i: i64) -> ExactRational {
    let c = k - d;
    rat(falling3(x, c, i)
        * (binomial(c + d, d + i - 2) * binomial(x, i - 2) + binomial(c + d, d + i - 3) * binomial(x, i - 1)))
}

/// `|S1| = b F(v-k) / prod_{l=2..4}(v-k+c-2i+l)`.
pub fn s1_size_formula(v: i64, k: i64, d: i64, i: i64, b: i64) -> Result<ExactRational> {
    if i < 2 {
        return invalid(format!("S1 needs i >= 2, got {i}"));
    }
    let c = k - d;
    let den = falling3(v - k, c, i);
    if den.is_zero() {
        return invalid("denominator prod (v-k+c-2i+l) vanishes");
    }
    Ok(rat(b) * f_direct(v - k, k, d, i) / rat(den))
}

/// `|S1|` by inclusion: all `(d+2i-4)`-subsets minus those meeting some block
/// in at least `d+i-1` points.
pub fn s1_size_by_exclusion(v: i64, k: i64, d: i64, i: i64, b: i64) -> Result<ExactInt> {
    if i < 2 {
        return invalid(format!("S1 needs i >= 2, got {i}"));
    }
    let excluded: ExactInt = (0..=(i - 3))
        .map(|j| binomial(k, d + 2 * i - 4 - j) * binomial(v - k, j))
        .sum();
    Ok(binomial(v, d + 2 * i - 4) - BigInt::from(b) * excluded)
}
