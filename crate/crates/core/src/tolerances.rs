//! Fixed numerical constants shared by the evaluators, the harness and the
//! test suites. Certification runs are only reproducible if every step size
//! and threshold comes from here.

/// Largest admissible deformation parameter. Term counts grow like 1/(1-q).
pub const Q_MAX: f64 = 1.0 - 1e-12;

pub const DEFAULT_REL_TOL: f64 = 1e-15;
pub const DEFAULT_ABS_TOL: f64 = 1e-300;
pub const DEFAULT_MAX_TERMS: u64 = 1_000_000;

/// Log-space slack for certifying an inequality: `SLACK * max(1, |ln ratio|)`.
pub const SLACK: f64 = 1e-9;

/// Slack for the nondecreasing-slope check of the geometric-convexity lemma.
pub const SLOPE_SLACK: f64 = 1e-10;

/// Minimum margin demanded at interior spot checks of strict inequalities.
pub const STRICT_MARGIN: f64 = 1e-12;

/// Pairs closer than this are excluded from strict-inequality sampling.
pub const DEGENERATE_SPACING: f64 = 1e-9;

/// Central-difference step for q-function derivative checks.
pub const FD_STEP_Q: f64 = 1e-5;
/// Relative tolerance of q-function derivative checks.
pub const FD_TOL_Q: f64 = 1e-6;
/// Central-difference step for classical derivative checks.
pub const FD_STEP_CLASSICAL: f64 = 1e-4;
/// Relative tolerance of classical derivative checks.
pub const FD_TOL_CLASSICAL: f64 = 1e-4;

/// Bisection stops once the bracket is this narrow.
pub const ROOT_BRACKET_WIDTH: f64 = 1e-12;
/// Largest accepted |psi_q(root)|.
pub const ROOT_RESIDUAL: f64 = 1e-10;
pub const ROOT_SEARCH_MIN: f64 = 1e-8;
pub const ROOT_SEARCH_MAX: f64 = 1e8;
/// `alpha` may undershoot the computed root by this much before it is rejected.
pub const ALPHA_ROOT_TOL: f64 = 1e-9;

/// Terminal relative gap allowed between q-functions and their classical limits.
pub const LIMIT_TERMINAL_REL: f64 = 5e-2;
/// Allowed gap between gamma_q at the last q of a limit sequence and gamma.
pub const LIMIT_EULER_ABS: f64 = 1e-2;
/// Largest q a limit sequence may contain.
pub const LIMIT_Q_MAX: f64 = 0.9995;

/// Failure records kept per certificate; totals stay exact.
pub const MAX_FAILURE_RECORDS: usize = 100;
/// Rejection-sampling attempts allowed per point.
pub const MAX_REJECTIONS: u32 = 1000;
