//! The `gamma` bounds on `v - k` and the intervals on `c = k - d` in terms
//! of `i`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use serde::Serialize;

use super::polys::{g_coefficients, h_coefficients, window_unchecked};
use crate::exact_arith::{
    approximate_root, compare_root, format_rational, rat, ExactRational, QuadraticRootBound, RootSelector,
};

/// Outcome of one of the `gamma` bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaCheck {
    /// All hypotheses hold, so the bound constrains the parameters.
    pub applicable: bool,
    /// `v - k` is on the permitted side of the root. Meaningless unless
    /// `applicable`.
    pub passed: bool,
    pub gamma: Option<QuadraticRootBound>,
    /// `v - k` equals the root exactly.
    pub equality: bool,
    pub note: String,
}

impl GammaCheck {
    fn not_applicable(note: impl Into<String>) -> Self {
        Self {
            applicable: false,
            passed: false,
            gamma: None,
            equality: false,
            note: note.into(),
        }
    }

    /// Decimal rendering of the root, 4 places.
    pub fn annotation(&self) -> Option<String> {
        self.gamma.as_ref().map(|g| approximate_root(g, 4))
    }
}

/// Upper bound `v - k <= gamma1`, with `gamma1` the smaller root of
/// `g(x, d, c, i)`.
///
/// Hypotheses: `i >= 3`, `i <= c`, `v >= 2k`, and `v` strictly below the
/// upper end of the window (so the design is not β(i-1)).
pub fn theorem1_check(v: i64, k: i64, d: i64, i: i64) -> GammaCheck {
    let c = k - d;
    if i < 3 {
        return GammaCheck::not_applicable("needs i >= 3");
    }
    if i > c {
        return GammaCheck::not_applicable("needs i <= k - d");
    }
    if v < 2 * k {
        return GammaCheck::not_applicable("needs v >= 2k");
    }
    let window = window_unchecked(k, d, i);
    let upper = window.upper.expect("i >= 2 has a finite upper bound");
    if rat(v) >= upper {
        return GammaCheck::not_applicable(format!(
            "v is not below the upper window bound {}",
            format_rational(&upper)
        ));
    }
    let (a, b, c0) = g_coefficients(d, c, i);
    let Ok(gamma) = QuadraticRootBound::from_ints(a, b, c0, RootSelector::Smaller) else {
        return GammaCheck::not_applicable("g has no real root");
    };
    let ord = compare_root(&rat(v - k), &gamma);
    GammaCheck {
        applicable: true,
        passed: ord != Ordering::Greater,
        equality: ord == Ordering::Equal,
        note: format!("v-k = {} vs gamma1 ~ {}", v - k, approximate_root(&gamma, 4)),
        gamma: Some(gamma),
    }
}

/// Lower bound `v - k >= gamma2`, with `gamma2` the larger root of
/// `h(x, d, c, i)`.
///
/// Hypotheses: `v <= 2k`, `c >= i + 1`, and `v` strictly above the lower end
/// of the window (so the design is not β(i+1)).
pub fn theorem2_check(v: i64, k: i64, d: i64, i: i64) -> GammaCheck {
    let c = k - d;
    if i < 1 {
        return GammaCheck::not_applicable("needs i >= 1");
    }
    if c < i + 1 {
        return GammaCheck::not_applicable("needs k - d >= i + 1");
    }
    if v > 2 * k {
        return GammaCheck::not_applicable("needs v <= 2k");
    }
    let window = window_unchecked(k, d, i);
    if rat(v) <= window.lower {
        return GammaCheck::not_applicable(format!(
            "v is not above the lower window bound {}",
            format_rational(&window.lower)
        ));
    }
    let (a, b, c0) = h_coefficients(d, c, i);
    let Ok(gamma) = QuadraticRootBound::from_ints(a, b, c0, RootSelector::Larger) else {
        return GammaCheck::not_applicable("h has no real root");
    };
    let ord = compare_root(&rat(v - k), &gamma);
    GammaCheck {
        applicable: true,
        passed: ord != Ordering::Less,
        equality: ord == Ordering::Equal,
        note: format!("v-k = {} vs gamma2 ~ {}", v - k, approximate_root(&gamma, 4)),
        gamma: Some(gamma),
    }
}

/// Which interval on `c = k - d` is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CRangeMode {
    /// `v >= 2k`, not β(i-1); `i >= 3`.
    T4NotBetaPrev,
    /// `v >= 2k`, also β(i-1) with `d > 0`; `i >= 9`.
    T4BetaPrev,
    /// `v <= 2k`, `c >= i+2`, not β(i+1); `i >= 18`.
    T5NotBetaNext,
    /// As above with `c >= 3`; `i >= 15`.
    T5CGe3,
    /// `v <= 2k`, `c >= i+2`, also β(i+1) with `d > 0`; `i >= 17`.
    T5BetaNext,
}

impl CRangeMode {
    pub const ALL: [CRangeMode; 5] = [
        CRangeMode::T4NotBetaPrev,
        CRangeMode::T4BetaPrev,
        CRangeMode::T5NotBetaNext,
        CRangeMode::T5CGe3,
        CRangeMode::T5BetaNext,
    ];

    pub fn min_i(self) -> i64 {
        match self {
            CRangeMode::T4NotBetaPrev => 3,
            CRangeMode::T4BetaPrev => 9,
            CRangeMode::T5NotBetaNext => 18,
            CRangeMode::T5CGe3 => 15,
            CRangeMode::T5BetaNext => 17,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CRangeMode::T4NotBetaPrev => "t4-not-beta-prev",
            CRangeMode::T4BetaPrev => "t4-beta-prev",
            CRangeMode::T5NotBetaNext => "t5-not-beta-next",
            CRangeMode::T5CGe3 => "t5-c-ge-3",
            CRangeMode::T5BetaNext => "t5-beta-next",
        }
    }
}

impl std::str::FromStr for CRangeMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CRangeMode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown mode {s:?}"))
    }
}

/// One end of an interval on `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    Closed(ExactRational),
    /// Strict bound at a quadratic irrational.
    OpenRoot(QuadraticRootBound),
}

impl Endpoint {
    fn describe(&self, lower: bool) -> String {
        match (self, lower) {
            (Endpoint::Closed(x), true) => format!("[{}", format_rational(x)),
            (Endpoint::Closed(x), false) => format!("{}]", format_rational(x)),
            (Endpoint::OpenRoot(q), true) => format!("({}", approximate_root(q, 4)),
            (Endpoint::OpenRoot(q), false) => format!("{})", approximate_root(q, 4)),
        }
    }
}

/// An interval on `c`, exact, with the integer-endpoint form that holds above
/// a threshold on `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CRange {
    pub mode: CRangeMode,
    pub i: i64,
    pub lower: Endpoint,
    pub upper: Endpoint,
    pub simplified: Option<(i64, i64)>,
}

impl CRange {
    pub fn contains(&self, c: i64) -> bool {
        let x = rat(c);
        let lower_ok = match &self.lower {
            Endpoint::Closed(l) => &x >= l,
            Endpoint::OpenRoot(q) => compare_root(&x, q) == Ordering::Greater,
        };
        let upper_ok = match &self.upper {
            Endpoint::Closed(u) => &x <= u,
            Endpoint::OpenRoot(q) => compare_root(&x, q) == Ordering::Less,
        };
        lower_ok && upper_ok
    }

    pub fn describe(&self) -> String {
        let mut s = format!("{}, {}", self.lower.describe(true), self.upper.describe(false));
        if let Some((lo, hi)) = self.simplified {
            s.push_str(&format!(" within [{lo}, {hi}]"));
        }
        s
    }
}

/// Larger root of `(i-2)c^2 - (3i^2-2i)c + 2i^2(i-1)`, i.e.
/// `i(3i-2+sqrt(i^2+12i-12)) / (2(i-2))`. Needs `i >= 3`.
pub fn t4_radical(i: i64) -> QuadraticRootBound {
    let i = BigInt::from(i);
    QuadraticRootBound::from_ints(
        &i - 2,
        -(BigInt::from(3) * &i * &i - BigInt::from(2) * &i),
        BigInt::from(2) * &i * &i * (&i - 1),
        RootSelector::Larger,
    )
    .expect("positive leading coefficient and discriminant for i >= 3")
}

/// Larger root of `(i+1)c^2 - (3i-1)(i-1)c + 2i(i-1)^2`, i.e.
/// `(i-1)(3i-1+sqrt(i^2-14i+1)) / (2(i+1))`. Needs `i >= 14`.
pub fn t5_radical(i: i64) -> QuadraticRootBound {
    let i = BigInt::from(i);
    QuadraticRootBound::from_ints(
        &i + 1,
        -((BigInt::from(3) * &i - 1u32) * (&i - 1u32)),
        BigInt::from(2) * &i * (&i - 1) * (&i - 1),
        RootSelector::Larger,
    )
    .expect("positive leading coefficient and discriminant for i >= 14")
}

/// The interval on `c` for `mode`, or `None` when `i` is below the mode's
/// threshold.
pub fn theorem45_c_range(i: i64, mode: CRangeMode) -> Option<CRange> {
    if i < mode.min_i() {
        return None;
    }
    let closed = |x: i64| Endpoint::Closed(rat(x));
    let (lower, upper, simplified) = match mode {
        CRangeMode::T4NotBetaPrev => (
            closed(2 * (i - 1)),
            Endpoint::OpenRoot(t4_radical(i)),
            (i >= 8).then_some((2 * (i - 1), 2 * i + 6)),
        ),
        CRangeMode::T4BetaPrev => (
            closed(2 * (i - 1)),
            Endpoint::OpenRoot(t4_radical(i - 1)),
            Some((2 * (i - 1), 2 * i + 4)),
        ),
        CRangeMode::T5NotBetaNext => (
            Endpoint::OpenRoot(t5_radical(i)),
            closed(2 * i),
            Some((2 * i - 8, 2 * i)),
        ),
        CRangeMode::T5CGe3 => (
            Endpoint::OpenRoot(t5_radical(i)),
            closed(2 * i),
            (i >= 16).then_some((2 * i - 8, 2 * i)),
        ),
        CRangeMode::T5BetaNext => (
            Endpoint::OpenRoot(t5_radical(i + 1)),
            closed(2 * i),
            Some((2 * i - 6, 2 * i)),
        ),
    };
    Some(CRange {
        mode,
        i,
        lower,
        upper,
        simplified,
    })
}
