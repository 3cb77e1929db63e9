//! Every necessary condition for a β(i) design with given `(v, k, d)`,
//! evaluated in a fixed order and collected into one report.

use std::fmt;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use super::perfect_code::perfect_code_bounds;
use super::polys::{prop0_bound, window_unchecked, Prop0Result, Window};
use super::theorems::{theorem1_check, theorem2_check, theorem45_c_range, CRangeMode, GammaCheck};
use crate::error::{invalid, Result};
use crate::exact_arith::format_rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RuleId {
    #[serde(rename = "range")]
    Range,
    #[serde(rename = "remark-d0")]
    RemarkD0,
    #[serde(rename = "remark-dk1")]
    RemarkDk1,
    #[serde(rename = "window-1.6")]
    Window,
    #[serde(rename = "divisibility-1.1")]
    Divisibility,
    #[serde(rename = "theorem1")]
    Theorem1,
    #[serde(rename = "theorem2")]
    Theorem2,
    #[serde(rename = "theorem3")]
    Theorem3,
    #[serde(rename = "theorem4")]
    Theorem4,
    #[serde(rename = "theorem5")]
    Theorem5,
    #[serde(rename = "mod4-endpoint")]
    Mod4Endpoint,
}

impl RuleId {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::Range => "range",
            RuleId::RemarkD0 => "remark-d0",
            RuleId::RemarkDk1 => "remark-dk1",
            RuleId::Window => "window-1.6",
            RuleId::Divisibility => "divisibility-1.1",
            RuleId::Theorem1 => "theorem1",
            RuleId::Theorem2 => "theorem2",
            RuleId::Theorem3 => "theorem3",
            RuleId::Theorem4 => "theorem4",
            RuleId::Theorem5 => "theorem5",
            RuleId::Mod4Endpoint => "mod4-endpoint",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub rule: RuleId,
    pub applicable: bool,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(rule: RuleId, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            rule,
            applicable: true,
            passed,
            detail: detail.into(),
        }
    }

    fn skip(rule: RuleId, detail: impl Into<String>) -> Self {
        Self {
            rule,
            applicable: false,
            passed: false,
            detail: detail.into(),
        }
    }

    pub fn failed(&self) -> bool {
        self.applicable && !self.passed
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Overall {
    Feasible,
    /// Every failing applicable rule, in evaluation order.
    Infeasible(Vec<RuleId>),
    /// `d + 2i - 1 > v`: the level is undefined for these parameters.
    NotApplicable,
}

impl Overall {
    pub fn verdict(&self) -> &'static str {
        match self {
            Overall::Feasible => "feasible",
            Overall::Infeasible(_) => "infeasible",
            Overall::NotApplicable => "not-applicable",
        }
    }

    pub fn failing_rules(&self) -> &[RuleId] {
        match self {
            Overall::Infeasible(r) => r,
            _ => &[],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub v: i64,
    pub k: i64,
    pub d: i64,
    pub i: i64,
    pub checks: Vec<Check>,
    pub overall: Overall,
    pub prop0: Option<Prop0Result>,
    pub window: Option<Window>,
    pub gamma1: Option<GammaCheck>,
    pub gamma2: Option<GammaCheck>,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.overall == Overall::Feasible
    }

    pub fn check(&self, rule: RuleId) -> Option<&Check> {
        self.checks.iter().find(|c| c.rule == rule)
    }

    /// Decimal renderings of the applicable gamma roots, e.g. `gamma1=9.6176`.
    pub fn gamma_annotation(&self) -> String {
        let mut parts = Vec::new();
        for (name, g) in [("gamma1", &self.gamma1), ("gamma2", &self.gamma2)] {
            if let Some(g) = g.as_ref().filter(|g| g.applicable) {
                parts.push(format!("{name}={}", g.annotation().unwrap_or_default()));
            }
        }
        parts.join(";")
    }

    fn refresh_overall(&mut self) {
        if self.overall == Overall::NotApplicable {
            return;
        }
        let failing: Vec<RuleId> = self.checks.iter().filter(|c| c.failed()).map(|c| c.rule).collect();
        self.overall = if failing.is_empty() {
            Overall::Feasible
        } else {
            Overall::Infeasible(failing)
        };
    }

    pub fn to_json_value(&self) -> Value {
        let gamma = |g: &Option<GammaCheck>| match g {
            Some(g) if g.applicable => json!({
                "passed": g.passed,
                "equality": g.equality,
                "root": g.gamma.as_ref().map(|q| q.to_string()),
                "approx": g.annotation(),
            }),
            _ => Value::Null,
        };
        json!({
            "parameters": {"v": self.v, "k": self.k, "d": self.d, "i": self.i},
            "overall": {
                "verdict": self.overall.verdict(),
                "failing_rules": self.overall.failing_rules(),
            },
            "checks": self.checks,
            "prop0": self.prop0,
            "window": self.window.as_ref().map(|w| json!({
                "lower": format_rational(&w.lower),
                "upper": w.upper.as_ref().map(format_rational),
            })),
            "gamma1": gamma(&self.gamma1),
            "gamma2": gamma(&self.gamma2),
        })
    }
}

impl Serialize for FeasibilityReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

fn gamma_check(rule: RuleId, g: &GammaCheck) -> Check {
    if g.applicable {
        Check::new(rule, g.passed, g.note.clone())
    } else {
        Check::skip(rule, g.note.clone())
    }
}

fn c_range_check(rule: RuleId, c: i64, i: i64, modes: &[CRangeMode]) -> Check {
    let ranges: Vec<_> = modes.iter().filter_map(|&m| theorem45_c_range(i, m)).collect();
    if ranges.is_empty() {
        return Check::skip(rule, "no mode threshold met");
    }
    let passed = ranges.iter().all(|r| r.contains(c));
    let detail = ranges
        .iter()
        .map(|r| format!("{}: c={c} in {}", r.mode.as_str(), r.describe()))
        .collect::<Vec<_>>()
        .join("; ");
    Check::new(rule, passed, detail)
}

/// Runs, in order: range, the `d = 0` and `d = k-1` remarks, the window on
/// `v`, divisibility of the block-count bound, the two gamma bounds, the
/// intervals on `c`, and the mod-4 endpoint rule.
pub fn feasibility_report(v: i64, k: i64, d: i64, i: i64) -> Result<FeasibilityReport> {
    if !(0 <= d && d < k && k < v) {
        return invalid(format!("need 0 <= d < k < v, got v={v}, k={k}, d={d}"));
    }
    if i < 1 {
        return invalid(format!("level must be >= 1, got {i}"));
    }
    let c = k - d;
    let rules = [
        RuleId::Range,
        RuleId::RemarkD0,
        RuleId::RemarkDk1,
        RuleId::Window,
        RuleId::Divisibility,
        RuleId::Theorem1,
        RuleId::Theorem2,
        RuleId::Theorem4,
        RuleId::Theorem5,
        RuleId::Mod4Endpoint,
    ];
    if d + 2 * i - 1 > v {
        let detail = format!("d+2i-1 = {} exceeds v = {v}", d + 2 * i - 1);
        return Ok(FeasibilityReport {
            v,
            k,
            d,
            i,
            checks: rules.iter().map(|&r| Check::skip(r, detail.clone())).collect(),
            overall: Overall::NotApplicable,
            prop0: None,
            window: None,
            gamma1: None,
            gamma2: None,
        });
    }

    let mut checks = Vec::with_capacity(rules.len());
    let in_range = i <= c;
    checks.push(Check::new(RuleId::Range, in_range, format!("1 <= i={i} <= k-d={c}")));

    checks.push(if d == 0 && i >= 2 {
        Check::new(RuleId::RemarkD0, v == 2 * k, format!("d=0, i>=2 forces v=2k={}", 2 * k))
    } else {
        Check::skip(RuleId::RemarkD0, "needs d=0 and i>=2")
    });

    checks.push(if d == k - 1 {
        Check::new(RuleId::RemarkDk1, i == 1, "d=k-1 forces i=1")
    } else {
        Check::skip(RuleId::RemarkDk1, "needs d=k-1")
    });

    let window = in_range.then(|| window_unchecked(k, d, i));
    checks.push(match &window {
        Some(w) => Check::new(RuleId::Window, w.contains(v), format!("v={v} in {}", w.describe())),
        None => Check::skip(RuleId::Window, "needs i <= k-d"),
    });

    let prop0 = prop0_bound(v, k, d, i).ok();
    checks.push(match &prop0 {
        Some(p) => Check::new(
            RuleId::Divisibility,
            p.divisible,
            format!(
                "b_max = {}/{} = {}",
                p.numerator,
                p.per_block_sum,
                format_rational(&p.b_max)
            ),
        ),
        None => Check::skip(RuleId::Divisibility, "needs i <= k-d"),
    });

    let gamma1 = theorem1_check(v, k, d, i);
    checks.push(gamma_check(RuleId::Theorem1, &gamma1));
    let gamma2 = theorem2_check(v, k, d, i);
    checks.push(gamma_check(RuleId::Theorem2, &gamma2));

    let at_lower = window.as_ref().is_some_and(|w| w.at_lower(v));
    let at_upper = window.as_ref().is_some_and(|w| w.at_upper(v));

    checks.push(if !in_range {
        Check::skip(RuleId::Theorem4, "needs i <= k-d")
    } else if v < 2 * k {
        Check::skip(RuleId::Theorem4, "needs v >= 2k")
    } else if at_upper {
        let modes: &[CRangeMode] = if d > 0 { &[CRangeMode::T4BetaPrev] } else { &[] };
        c_range_check(RuleId::Theorem4, c, i, modes)
    } else {
        c_range_check(RuleId::Theorem4, c, i, &[CRangeMode::T4NotBetaPrev])
    });

    checks.push(if !in_range {
        Check::skip(RuleId::Theorem5, "needs i <= k-d")
    } else if v > 2 * k {
        Check::skip(RuleId::Theorem5, "needs v <= 2k")
    } else if c < i + 2 {
        Check::skip(RuleId::Theorem5, "needs k-d >= i+2")
    } else if at_lower {
        let modes: &[CRangeMode] = if d > 0 { &[CRangeMode::T5BetaNext] } else { &[] };
        c_range_check(RuleId::Theorem5, c, i, modes)
    } else {
        let mut modes = vec![CRangeMode::T5NotBetaNext];
        if c >= 3 {
            modes.push(CRangeMode::T5CGe3);
        }
        c_range_check(RuleId::Theorem5, c, i, &modes)
    });

    checks.push(if d == 0 {
        Check::skip(RuleId::Mod4Endpoint, "needs d > 0")
    } else if at_lower || at_upper {
        // lower end: also β(i+1); upper end: also β(i-1)
        let j = if at_lower { i } else { i - 1 };
        let bad = (at_lower && i % 4 == 2) || (at_upper && (i - 1) % 4 == 2);
        Check::new(
            RuleId::Mod4Endpoint,
            !bad,
            format!("v at a window end: β({j}) and β({}) together", j + 1),
        )
    } else {
        Check::skip(RuleId::Mod4Endpoint, "v at neither window end")
    });

    let mut report = FeasibilityReport {
        v,
        k,
        d,
        i,
        checks,
        overall: Overall::Feasible,
        prop0,
        window,
        gamma1: Some(gamma1),
        gamma2: Some(gamma2),
    };
    report.refresh_overall();
    Ok(report)
}

/// The report for a perfect `e`-code in `J(v, k)`, viewed as a β(e+1) design
/// with `d = k - 2e - 1`, plus the `theorem3` check on `v`.
pub fn perfect_code_report(e: i64, k: i64, v: i64) -> Result<FeasibilityReport> {
    if e < 1 {
        return invalid(format!("needs e >= 1, got {e}"));
    }
    let d = k - 2 * e - 1;
    let mut report = feasibility_report(v, k, d, e + 1)?;
    let check = match perfect_code_bounds(e, k) {
        _ if report.overall == Overall::NotApplicable => Check::skip(RuleId::Theorem3, "level undefined"),
        Ok(p) => Check::new(
            RuleId::Theorem3,
            p.admits(v),
            format!("v={v} in [{}, {}]", p.lower_annotation(), p.upper_annotation()),
        ),
        Err(_) => Check::skip(RuleId::Theorem3, "needs e >= 2 and k >= 2e+2"),
    };
    let at = report
        .checks
        .iter()
        .position(|c| c.rule == RuleId::Theorem2)
        .map_or(report.checks.len(), |p| p + 1);
    report.checks.insert(at, check);
    report.refresh_overall();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_parameters_feasible_at_levels_one_and_two() {
        let feasible: Vec<i64> = (1..=4)
            .filter(|&i| feasibility_report(24, 8, 4, i).unwrap().is_feasible())
            .collect();
        assert_eq!(feasible, vec![1, 2]);
        let r = feasibility_report(24, 8, 4, 2).unwrap();
        assert!(r.checks.iter().all(|c| !c.failed()));
        assert!(r.check(RuleId::Mod4Endpoint).unwrap().applicable);
    }

    #[test]
    fn theorem1_kills_20_10_4_3() {
        let r = feasibility_report(20, 10, 4, 3).unwrap();
        let rules = r.overall.failing_rules();
        assert!(rules.contains(&RuleId::Theorem1), "{rules:?}");
        assert!(r.check(RuleId::Window).unwrap().passed);
        assert_eq!(r.gamma_annotation(), "gamma1=9.6176");
    }

    #[test]
    fn divisibility_kills_11_4_1_1() {
        let r = feasibility_report(11, 4, 1, 1).unwrap();
        assert_eq!(r.overall, Overall::Infeasible(vec![RuleId::Divisibility]));
    }

    #[test]
    fn complement_parameters_feasible() {
        for i in [3, 4] {
            assert!(feasibility_report(24, 16, 12, i).unwrap().is_feasible(), "i={i}");
        }
    }

    #[test]
    fn pair_design_feasible_everywhere() {
        for k in 2..=8 {
            for i in 1..=k {
                let r = feasibility_report(2 * k, k, 0, i).unwrap();
                assert!(r.is_feasible(), "k={k} i={i}: {:?}", r.overall);
            }
        }
        assert!(!feasibility_report(9, 4, 0, 2).unwrap().is_feasible());
    }

    #[test]
    fn trivial_designs() {
        let r = feasibility_report(5, 3, 2, 1).unwrap();
        assert!(r.is_feasible());
        let r = feasibility_report(5, 3, 2, 2).unwrap();
        let rules = r.overall.failing_rules();
        assert!(rules.contains(&RuleId::Range) && rules.contains(&RuleId::RemarkDk1));
    }

    #[test]
    fn undefined_level_and_bad_order() {
        let r = feasibility_report(10, 8, 0, 6).unwrap();
        assert_eq!(r.overall, Overall::NotApplicable);
        assert!(r.checks.iter().all(|c| !c.applicable));
        assert!(feasibility_report(8, 9, 1, 1).is_err());
        assert!(feasibility_report(10, 4, 1, 0).is_err());
    }

    #[test]
    fn mod4_rule_rejects_beta2_beta3() {
        // k-d = 6, i = 2: lower end (d+4)*6/2 = 3d+12; both β(2) and β(3)
        let (k, d) = (10, 4);
        let r = feasibility_report(3 * d + 12, k, d, 2).unwrap();
        assert!(r.overall.failing_rules().contains(&RuleId::Mod4Endpoint));
        // the same v is the upper end at i = 3
        let r = feasibility_report(3 * d + 12, k, d, 3).unwrap();
        assert!(r.overall.failing_rules().contains(&RuleId::Mod4Endpoint));
    }

    #[test]
    fn perfect_code_report_adds_theorem3() {
        for v in 16..=30 {
            let r = perfect_code_report(2, 8, v).unwrap();
            let t3 = r.check(RuleId::Theorem3).unwrap();
            assert!(t3.applicable && !t3.passed, "v={v}");
            assert!(!r.is_feasible());
        }
        let r = perfect_code_report(1, 5, 10).unwrap();
        assert!(!r.check(RuleId::Theorem3).unwrap().applicable);
        let pos = |r: &FeasibilityReport, id| r.checks.iter().position(|c| c.rule == id).unwrap();
        assert_eq!(pos(&r, RuleId::Theorem3), pos(&r, RuleId::Theorem2) + 1);
    }

    #[test]
    fn json_shape() {
        let r = feasibility_report(20, 10, 4, 3).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["overall"]["verdict"], "infeasible");
        assert_eq!(v["checks"][0]["rule"], "range");
        assert_eq!(v["prop0"]["b_max"], "8398/293");
    }
}
