//! The quadratics `g` and `h` that bound `v - k`, the window on `v`, and the
//! block-count bound.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::exact_arith::{binomial, format_rational, rat, ratio, ExactInt, ExactRational};

/// Integer coefficients `(x^2, x, 1)` of `g(x, d, c, i)`.
pub fn g_coefficients(d: i64, c: i64, i: i64) -> (BigInt, BigInt, BigInt) {
    let (d, c, i) = (d as i128, c as i128, i as i128);
    let a = (i - 1) * (i - 2);
    let b = -(i - 1) * (2 * (c - i + 1) * d + 2 * c * (i - 1) - 3 * i + 4);
    let c0 = (c - i + 1) * (c - i + 2) * d * d
        + (c - i + 1) * ((2 * i - 3) * c + 3 * i - 4) * d
        + (i - 1) * (i - 2) * c * c
        + (i - 1) * (3 * i - 4) * c
        - 2 * (i - 1) * (i - 1) * (2 * i - 3);
    (a.into(), b.into(), c0.into())
}

/// Integer coefficients `(x^2, x, 1)` of `h(x, d, c, i)`.
pub fn h_coefficients(d: i64, c: i64, i: i64) -> (BigInt, BigInt, BigInt) {
    let (d, c, i) = (d as i128, c as i128, i as i128);
    let a = i * (i + 1);
    let b = -i * (2 * (c - i) * d + 2 * i * c + 3 * i + 1);
    let c0 = (c - i) * (c - i - 1) * d * d + (c - i) * ((2 * i + 1) * c - 3 * i - 1) * d + i * (i + 1) * c * c
        - i * (3 * i + 1) * c
        + 2 * i * i * (2 * i + 1);
    (a.into(), b.into(), c0.into())
}

fn eval(coeffs: (BigInt, BigInt, BigInt), x: &ExactRational) -> ExactRational {
    let (a, b, c) = coeffs;
    (rat(a) * x + rat(b)) * x + rat(c)
}

/// The quadratic whose non-negativity at `x = v - k` is necessary for a
/// β(i) design that is not also β(i-1).
pub fn g_poly(x: &ExactRational, d: i64, c: i64, i: i64) -> ExactRational {
    eval(g_coefficients(d, c, i), x)
}

/// The quadratic whose non-negativity at `x = v - k` is necessary for a
/// β(i) design that is not also β(i+1).
pub fn h_poly(x: &ExactRational, d: i64, c: i64, i: i64) -> ExactRational {
    eval(h_coefficients(d, c, i), x)
}

/// Lower end of the window on `v - k`: `d(c-i)/i + c`.
pub fn x1(d: i64, c: i64, i: i64) -> ExactRational {
    ratio(d * (c - i), i) + rat(c)
}

/// Upper end of the window on `v - k`: `d(c-i+1)/(i-1) + c`. Needs `i >= 2`.
pub fn x2(d: i64, c: i64, i: i64) -> ExactRational {
    ratio(d * (c - i + 1), i - 1) + rat(c)
}

/// The block-count bound at level `i`: `C(v, d+2i-1)` divided by the number
/// of `(d+2i-1)`-subsets a single block meets in at least `d+i` points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop0Result {
    pub numerator: ExactInt,
    pub per_block_sum: ExactInt,
    pub b_max: ExactRational,
    pub divisible: bool,
}

impl Serialize for Prop0Result {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Prop0Result", 4)?;
        st.serialize_field("numerator", &self.numerator.to_string())?;
        st.serialize_field("per_block_sum", &self.per_block_sum.to_string())?;
        st.serialize_field("b_max", &format_rational(&self.b_max))?;
        st.serialize_field("divisible", &self.divisible)?;
        st.end()
    }
}

/// Sum `sum_{j=0..i-1} C(k, d+2i-1-j) C(v-k, j)`.
pub fn per_block_sum(v: i64, k: i64, d: i64, i: i64) -> ExactInt {
    (0..i)
        .map(|j| binomial(k, d + 2 * i - 1 - j) * binomial(v - k, j))
        .sum()
}

pub fn prop0_bound(v: i64, k: i64, d: i64, i: i64) -> Result<Prop0Result> {
    if !(0 <= d && d < k && k < v) {
        return invalid(format!("need 0 <= d < k < v, got v={v}, k={k}, d={d}"));
    }
    if i < 1 || d + 2 * i - 1 > v {
        return invalid(format!("level i={i} outside 1..=(v-d+1)/2"));
    }
    let numerator = binomial(v, d + 2 * i - 1);
    let per_block_sum = per_block_sum(v, k, d, i);
    // positive whenever i <= k - d
    if per_block_sum.is_zero() {
        return invalid(format!("no block meets a {}-subset in {} points", d + 2 * i - 1, d + i));
    }
    let b_max = ExactRational::new(numerator.clone(), per_block_sum.clone());
    let divisible = b_max.denom().is_one();
    Ok(Prop0Result {
        numerator,
        per_block_sum,
        b_max,
        divisible,
    })
}

/// Bounds `lower <= v <= upper` at level `i`; `upper` is `None` (no bound)
/// when `i = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub lower: ExactRational,
    pub upper: Option<ExactRational>,
}

impl Window {
    pub fn contains(&self, v: i64) -> bool {
        let v = rat(v);
        v >= self.lower && self.upper.as_ref().is_none_or(|u| &v <= u)
    }

    /// `v` at the lower end, which happens iff the design is also β(i+1).
    pub fn at_lower(&self, v: i64) -> bool {
        rat(v) == self.lower
    }

    /// `v` at the upper end, which happens iff the design is also β(i-1).
    pub fn at_upper(&self, v: i64) -> bool {
        self.upper.as_ref().is_some_and(|u| &rat(v) == u)
    }

    pub fn describe(&self) -> String {
        let hi = self.upper.as_ref().map(format_rational).unwrap_or_else(|| "inf".into());
        format!("[{}, {}]", format_rational(&self.lower), hi)
    }
}

pub fn window_16(k: i64, d: i64, i: i64) -> Result<Window> {
    let c = k - d;
    if !(1 <= i && i <= c) {
        return invalid(format!("level i={i} outside 1..=k-d={c}"));
    }
    Ok(window_unchecked(k, d, i))
}

pub(crate) fn window_unchecked(k: i64, d: i64, i: i64) -> Window {
    let c = k - d;
    let lower = ratio((d + 2 * i) * c, i);
    let upper = (i >= 2).then(|| ratio((d + 2 * (i - 1)) * c, i - 1));
    Window { lower, upper }
}
