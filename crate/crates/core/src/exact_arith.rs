//! Exact integer and rational arithmetic.
//!
//! Every verdict in this crate is decided with arbitrary-precision integers
//! and canonical rationals. Quantities that are roots of quadratics (the
//! `gamma` bounds, the perfect-code endpoints, the radical endpoints on
//! `k - d`) are never expanded into radicals: they are stored as a
//! [`QuadraticRootBound`] and compared against rationals with
//! [`compare_root`], which only evaluates the polynomial and checks which side
//! of the vertex the point lies on.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// Arbitrary-precision signed integer.
pub type ExactInt = BigInt;

/// Rational in lowest terms with a positive denominator.
///
/// `num_rational::Ratio::new` reduces on construction, so equality is
/// structural.
pub type ExactRational = BigRational;

/// Integer as a rational.
pub fn rat(n: impl Into<BigInt>) -> ExactRational {
    BigRational::from_integer(n.into())
}

/// `num / den` reduced. Panics if `den` is zero.
pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> ExactRational {
    BigRational::new(num.into(), den.into())
}

/// Renders a rational as `n` or `n/d`.
pub fn format_rational(q: &ExactRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Binomial coefficient `C(n, k)`, zero whenever `k < 0`, `k > n`, or `n < 0`.
pub fn binomial(n: i64, k: i64) -> ExactInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// Left side of the summation identity:
/// `sum_{l=0..j} C(m, s-l) * C(j, l)`, summed term by term.
pub fn lemma51_lhs(m: i64, s: i64, j: i64) -> Result<ExactInt> {
    check_lemma51_args(m, s, j)?;
    Ok((0..=j).map(|l| binomial(m, s - l) * binomial(j, l)).sum())
}

/// Right side of the summation identity:
/// `C(m+j, j) * C(m, s-j) / C(s, j)`.
pub fn lemma51_rhs(m: i64, s: i64, j: i64) -> Result<ExactRational> {
    check_lemma51_args(m, s, j)?;
    let den = binomial(s, j);
    debug_assert!(!den.is_zero());
    Ok(BigRational::new(binomial(m + j, j) * binomial(m, s - j), den))
}

fn check_lemma51_args(m: i64, s: i64, j: i64) -> Result<()> {
    if m <= 0 {
        return invalid(format!("m must be positive, got {m}"));
    }
    if !(s >= j && j > 0) {
        return invalid(format!("need s >= j > 0, got s={s}, j={j}"));
    }
    Ok(())
}

/// Which root of a quadratic with two real roots (counted with multiplicity).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RootSelector {
    Smaller,
    Larger,
}

/// One real root of `a x^2 + b x + c` with `a > 0` and a non-negative
/// discriminant, kept symbolically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticRootBound {
    a: ExactRational,
    b: ExactRational,
    c: ExactRational,
    selector: RootSelector,
}

impl QuadraticRootBound {
    pub fn new(a: ExactRational, b: ExactRational, c: ExactRational, selector: RootSelector) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::NonPositiveLeadingCoefficient);
        }
        let q = Self { a, b, c, selector };
        if q.discriminant().is_negative() {
            return Err(Error::NegativeDiscriminant);
        }
        Ok(q)
    }

    /// Like [`QuadraticRootBound::new`] but with integer coefficients.
    pub fn from_ints(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        selector: RootSelector,
    ) -> Result<Self> {
        Self::new(rat(a), rat(b), rat(c), selector)
    }

    pub fn a(&self) -> &ExactRational {
        &self.a
    }

    pub fn b(&self) -> &ExactRational {
        &self.b
    }

    pub fn c(&self) -> &ExactRational {
        &self.c
    }

    pub fn selector(&self) -> RootSelector {
        self.selector
    }

    pub fn discriminant(&self) -> ExactRational {
        &self.b * &self.b - rat(4) * &self.a * &self.c
    }

    /// Value of the quadratic at `x`.
    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        (&self.a * x + &self.b) * x + &self.c
    }

    /// Multiplies all coefficients by the least common denominator so they
    /// become integers. The roots are unchanged.
    fn integer_coefficients(&self) -> (BigInt, BigInt, BigInt) {
        let l = self.a.denom().lcm(self.b.denom()).lcm(self.c.denom());
        let scale = |q: &ExactRational| q.numer() * (&l / q.denom());
        (scale(&self.a), scale(&self.b), scale(&self.c))
    }

    /// Integer `n` closest to the root, ties rounded away from zero.
    pub fn round(&self) -> BigInt {
        let half = ratio(1, 2);
        let mut n = self.estimate();
        loop {
            let up = rat(n.clone()) + &half;
            if compare_root(&up, self) != Ordering::Greater {
                n += 1;
                continue;
            }
            let down = rat(n.clone()) - &half;
            if compare_root(&down, self) == Ordering::Greater {
                n -= 1;
                continue;
            }
            break;
        }
        // n - 1/2 <= root < n + 1/2; a tie on the negative side goes down.
        let down = rat(n.clone()) - &half;
        let root_negative = compare_root(&rat(0), self) == Ordering::Greater;
        if root_negative && compare_root(&down, self) == Ordering::Equal {
            n -= 1;
        }
        n
    }

    /// Largest integer not exceeding the root.
    pub fn floor(&self) -> BigInt {
        let mut n = self.estimate();
        loop {
            if compare_root(&rat(n.clone()), self) == Ordering::Greater {
                n -= 1;
            } else if compare_root(&rat(&n + 1), self) != Ordering::Greater {
                n += 1;
            } else {
                return n;
            }
        }
    }

    /// Smallest integer not below the root.
    pub fn ceil(&self) -> BigInt {
        let f = self.floor();
        if compare_root(&rat(f.clone()), self) == Ordering::Equal {
            f
        } else {
            f + 1
        }
    }

    /// Integer near the root from a floored integer square root; the exact
    /// routines above correct it by a few steps at most.
    fn estimate(&self) -> BigInt {
        let (a, b, c) = self.integer_coefficients();
        let disc = &b * &b - BigInt::from(4) * &a * &c;
        let s = disc.sqrt();
        let num = match self.selector {
            RootSelector::Smaller => -&b - s,
            RootSelector::Larger => -&b + s,
        };
        num.div_floor(&(BigInt::from(2) * a))
    }

    /// The same root after substituting `x = y / scale`, i.e. the root
    /// multiplied by `scale > 0`.
    fn scaled(&self, scale: &BigInt) -> Self {
        let s = rat(scale.clone());
        Self {
            a: self.a.clone(),
            b: &self.b * &s,
            c: &self.c * &s * &s,
            selector: self.selector,
        }
    }
}

impl fmt::Display for QuadraticRootBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let which = match self.selector {
            RootSelector::Smaller => "smaller",
            RootSelector::Larger => "larger",
        };
        write!(
            f,
            "{which} root of ({})x^2 + ({})x + ({})",
            format_rational(&self.a),
            format_rational(&self.b),
            format_rational(&self.c)
        )
    }
}

/// Orders `x` against the selected root using rational arithmetic only.
///
/// With `r1 <= r2` the roots and `a > 0`, the quadratic is non-negative
/// exactly outside `(r1, r2)`, and the vertex `-b/(2a)` separates the two
/// outer rays. So `x <= r1` iff `q(x) >= 0` and `2ax <= -b`, and `x >= r2` iff
/// `q(x) >= 0` and `2ax >= -b`.
pub fn compare_root(x: &ExactRational, q: &QuadraticRootBound) -> Ordering {
    let value = q.eval(x);
    let vertex_side = (rat(2) * &q.a * x).cmp(&-q.b.clone());
    let outside = !value.is_negative();
    match q.selector {
        RootSelector::Smaller => {
            if outside && vertex_side != Ordering::Greater {
                if value.is_zero() {
                    Ordering::Equal
                } else {
                    Ordering::Less
                }
            } else {
                Ordering::Greater
            }
        }
        RootSelector::Larger => {
            if outside && vertex_side != Ordering::Less {
                if value.is_zero() {
                    Ordering::Equal
                } else {
                    Ordering::Greater
                }
            } else {
                Ordering::Less
            }
        }
    }
}

/// Decimal rendering of the root rounded to `places` digits after the point
/// (ties away from zero). For display only.
pub fn approximate_root(q: &QuadraticRootBound, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let n = q.scaled(&scale).round();
    format_fixed(&n, places)
}

/// Formats `n / 10^places` with exactly `places` fractional digits.
pub fn format_fixed(n: &BigInt, places: u32) -> String {
    let digits = n.abs().to_string();
    let places = places as usize;
    let padded = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let sign = if n.is_negative() { "-" } else { "" };
    if places == 0 {
        format!("{sign}{padded}")
    } else {
        let (int, frac) = padded.split_at(padded.len() - places);
        format!("{sign}{int}.{frac}")
    }
}

/// Decimal rendering of a rational, rounded half away from zero.
pub fn approximate_rational(x: &ExactRational, places: u32) -> String {
    let scale = rat(BigInt::from(10u32).pow(places));
    let scaled = x * scale;
    let n = scaled.round();
    format_fixed(n.numer(), places)
}
