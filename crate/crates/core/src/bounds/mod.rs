//! Parameter-only bounds: nothing here looks at an explicit block set.

pub mod counting;
pub mod perfect_code;
pub mod polys;
pub mod report;
pub mod theorems;

pub use counting::{f_closed, f_coefficients, f_direct, g_companion, s1_size_by_exclusion, s1_size_formula};
pub use perfect_code::{perfect_code_bounds, PerfectCodeBounds};
pub use polys::{g_poly, h_poly, prop0_bound, window_16, x1, x2, Prop0Result, Window};
pub use report::{feasibility_report, perfect_code_report, Check, FeasibilityReport, Overall, RuleId};
pub use theorems::{theorem1_check, theorem2_check, theorem45_c_range, CRange, CRangeMode, Endpoint, GammaCheck};
