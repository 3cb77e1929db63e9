//! Exact bounds and brute-force verification for β(i) designs.
//!
//! A design on `v` points with blocks of size `k`, any two meeting in at most
//! `d` points, has at most
//! `C(v, d+2i-1) / sum_{j<i} C(k, d+2i-1-j) C(v-k, j)` blocks for each level
//! `i`; a β(i) design meets this with equality. Steiner systems are the
//! β(1) designs, and perfect `e`-codes in the Johnson scheme are the β(e+1)
//! designs with `k - d = 2e + 1`.
//!
//! The crate has two halves:
//!
//! * [`bounds`] works from parameters alone: the block-count bound, the
//!   window on `v`, the quadratic bounds on `v - k`, intervals on `k - d`,
//!   perfect-code bounds and the combined [`bounds::feasibility_report`].
//! * [`beta_verifier`] and [`design_model`] work on explicit block sets, with
//!   [`constructions`] supplying the Witt design S(5,8,24) and smaller
//!   fixtures.
//!
//! Every verdict is computed in exact integer or rational arithmetic
//! ([`exact_arith`]); square roots appear only as [`exact_arith::QuadraticRootBound`]
//! values compared against rationals without rounding.
//!
//! ```
//! use betadesign::bounds::{feasibility_report, RuleId};
//!
//! let r = feasibility_report(20, 10, 4, 3).unwrap();
//! assert!(!r.is_feasible());
//! assert!(r.overall.failing_rules().contains(&RuleId::Theorem1));
//! ```

pub mod beta_verifier;
pub mod bounds;
pub mod constructions;
pub mod design_model;
pub mod error;
pub mod exact_arith;
pub mod subsets;

pub use design_model::{Design, DesignParameters};
pub use error::{Error, Result};

/// Guide chapters, compiled and run as doctests.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/designs.md")]
    mod designs {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/perfect-codes.md")]
    mod perfect_codes {}
}
