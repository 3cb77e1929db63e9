//! Bounds on `v` for perfect `e`-codes in the Johnson scheme `J(v, k)`.
//!
//! A perfect `e`-code is the block set of a β(e+1) design with
//! `c = k - d = 2e + 1`. For `e >= 2` the admissible `v` lie between the larger
//! root `k + gamma2` and the smaller root `k + gamma1` of the two quadratics,
//! which this module writes directly in `v`:
//!
//! ```text
//! lower = (4(e+1)k + 7e + 6) / (2(e+2)) + sqrt(A2) / (2(e+1)(e+2))
//! upper = (4ek - 7e - 1) / (2(e-1))     - sqrt(A1) / (2e(e-1))
//! A1 = e { 2(e+1)(2k-e-3)^2 - (e+2)(e-1)^2 }
//! A2 = (e+1) { 2e(2k-e+2)^2 - (e-1)(e+2)^2 }
//! ```
//!
//! The older bound `v <= (k-1)(2e+1)/e` is kept alongside for comparison.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{invalid, Result};
use crate::exact_arith::{
    approximate_root, compare_root, rat, ratio, ExactInt, ExactRational, QuadraticRootBound, RootSelector,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectCodeBounds {
    pub e: i64,
    pub k: i64,
    /// Equivalent design level `i = e + 1`.
    pub i: i64,
    /// Equivalent `d = k - 2e - 1`.
    pub d: i64,
    pub c: i64,
    pub roos_upper: ExactRational,
    pub thm3_lower: QuadraticRootBound,
    pub thm3_upper: QuadraticRootBound,
    pub a1: ExactInt,
    pub a2: ExactInt,
    /// Integers `v` with `lower <= v <= upper`; `None` when there are none.
    pub admissible_v: Option<(i64, i64)>,
    /// `k = 2e + 2`, the smallest block size with `d >= 1`.
    pub d_minimal: bool,
}

impl PerfectCodeBounds {
    pub fn admits(&self, v: i64) -> bool {
        let x = rat(v);
        compare_root(&x, &self.thm3_lower) != Ordering::Less && compare_root(&x, &self.thm3_upper) != Ordering::Greater
    }

    pub fn lower_annotation(&self) -> String {
        approximate_root(&self.thm3_lower, 4)
    }

    pub fn upper_annotation(&self) -> String {
        approximate_root(&self.thm3_upper, 4)
    }
}

/// `mid -/+ sqrt(disc) / den` as the smaller/larger root of
/// `x^2 - 2 mid x + mid^2 - disc/den^2`.
fn offset_root(mid: ExactRational, disc: &ExactInt, den: &ExactInt, selector: RootSelector) -> QuadraticRootBound {
    let spread = ExactRational::new(disc.clone(), den * den);
    QuadraticRootBound::new(rat(1), -(rat(2) * &mid), &mid * &mid - spread, selector)
        .expect("A1, A2 are non-negative in range")
}

pub fn perfect_code_bounds(e: i64, k: i64) -> Result<PerfectCodeBounds> {
    if e < 2 {
        return invalid(format!("needs e >= 2, got {e}"));
    }
    if k < 2 * e + 2 {
        return invalid(format!("needs k >= 2e + 2 = {}, got {k}", 2 * e + 2));
    }
    let big = |x: i64| BigInt::from(x);
    let a1 = big(e) * (big(2 * (e + 1)) * big(2 * k - e - 3).pow(2) - big(e + 2) * big(e - 1).pow(2));
    let a2 = big(e + 1) * (big(2 * e) * big(2 * k - e + 2).pow(2) - big(e - 1) * big(e + 2).pow(2));

    let upper_mid = ratio(4 * e * k - 7 * e - 1, 2 * (e - 1));
    let lower_mid = ratio(4 * (e + 1) * k + 7 * e + 6, 2 * (e + 2));
    let thm3_upper = offset_root(upper_mid, &a1, &big(2 * e * (e - 1)), RootSelector::Smaller);
    let thm3_lower = offset_root(lower_mid, &a2, &big(2 * (e + 1) * (e + 2)), RootSelector::Larger);

    let roos_upper = ratio((k - 1) * (2 * e + 1), e);
    let lo = thm3_lower.ceil();
    let hi = thm3_upper.floor().min(roos_upper.floor().to_integer());
    let admissible_v = (lo <= hi).then(|| (lo.to_i64().expect("small bound"), hi.to_i64().expect("small bound")));

    Ok(PerfectCodeBounds {
        e,
        k,
        i: e + 1,
        d: k - 2 * e - 1,
        c: 2 * e + 1,
        roos_upper,
        thm3_lower,
        thm3_upper,
        a1,
        a2,
        admissible_v,
        d_minimal: k == 2 * e + 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::polys::{g_poly, h_poly};

    #[test]
    fn two_codes_in_j_v_8() {
        let p = perfect_code_bounds(2, 8).unwrap();
        assert_eq!((p.i, p.d, p.c), (3, 3, 5));
        assert_eq!(p.a1, BigInt::from(1444));
        assert_eq!(p.a1.sqrt().pow(2), p.a1);
        assert_eq!(p.a2, BigInt::from(3024));
        assert_eq!(compare_root(&rat(15), &p.thm3_upper), Ordering::Equal);
        assert_eq!(p.upper_annotation(), "15.0000");
        assert_eq!(approximate_root(&p.thm3_lower, 2), "16.79");
        assert_eq!(compare_root(&rat(16), &p.thm3_lower), Ordering::Less);
        assert_eq!(p.roos_upper, ratio(35, 2));
        assert_eq!(p.admissible_v, None);
        assert!(!(10..40).any(|v| p.admits(v)));
        // independent: g is negative at v - k = 8, 9
        assert_eq!(g_poly(&rat(8), 3, 5, 3), rat(-36));
        assert_eq!(g_poly(&rat(9), 3, 5, 3), rat(-68));
    }

    #[test]
    fn minimal_d_flagged() {
        let p = perfect_code_bounds(2, 6).unwrap();
        assert!(p.d_minimal);
        assert_eq!(p.d, 1);
        assert!(!perfect_code_bounds(2, 8).unwrap().d_minimal);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(perfect_code_bounds(1, 10).is_err());
        assert!(perfect_code_bounds(2, 5).is_err());
    }

    #[test]
    fn improves_on_roos_everywhere() {
        for e in 2..=20 {
            for k in (2 * e + 2)..=100 {
                let p = perfect_code_bounds(e, k).unwrap();
                assert_ne!(
                    compare_root(&p.roos_upper, &p.thm3_upper),
                    Ordering::Less,
                    "e={e} k={k}"
                );
                assert!(p.a1 >= BigInt::from(0) && p.a2 >= BigInt::from(0));
            }
        }
    }

    /// Each integer v in the window is admitted exactly when g and h put
    /// `v - k` on the permitted sides of their roots.
    #[test]
    fn agrees_with_gamma_polynomials() {
        use crate::bounds::polys::{g_coefficients, h_coefficients, window_unchecked};
        for e in 2..=20i64 {
            for k in (2 * e + 2)..=100 {
                let p = perfect_code_bounds(e, k).unwrap();
                let (d, c, i) = (p.d, p.c, p.i);
                let (ga, gb, gc) = g_coefficients(d, c, i);
                let (ha, hb, hc) = h_coefficients(d, c, i);
                let w = window_unchecked(k, d, i);
                let lo = w.lower.ceil().to_integer().to_i64().unwrap();
                let hi = w.upper.clone().unwrap().floor().to_integer().to_i64().unwrap();
                for v in lo..=hi {
                    let x = rat(v - k);
                    let gv = g_poly(&x, d, c, i);
                    let hv = h_poly(&x, d, c, i);
                    let g_side = rat(2) * rat(ga.clone()) * &x <= -rat(gb.clone());
                    let h_side = rat(2) * rat(ha.clone()) * &x >= -rat(hb.clone());
                    let by_g_h = gv >= rat(0) && g_side && hv >= rat(0) && h_side;
                    assert_eq!(p.admits(v), by_g_h, "e={e} k={k} v={v}");
                    let _ = (&gc, &hc);
                }
            }
        }
    }
}
