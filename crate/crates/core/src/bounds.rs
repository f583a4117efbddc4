//! Double inequalities for ratios of (q-)Gamma values.
//!
//! Each operation returns a [`BoundPair`]: lower bound, ratio and upper bound
//! at one point. Everything is computed as a logarithm; the linear values are
//! exponentiated copies kept for presentation.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::classical::{ln_gamma_ratio_classical, psi_classical, ClassicalConfig};
use crate::error::{Error, Result};
use crate::qcore::{q_bracket, q_bracket_derivative, EvalConfig, QParam};
use crate::qspecial::{ln_gamma_q, psi_q, psi_q_root, PsiRoot};
use crate::tolerances::{ALPHA_ROOT_TOL, SLACK};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InequalityId {
    ThmMain,
    CorHalfShift,
    ThmAlpha,
    ThmMvt,
    CorMuLambda,
    CorOneHalf,
    RemarkRearranged,
    KeckicVasic,
    ZhangXuSitu,
}

impl InequalityId {
    pub const ALL: [InequalityId; 9] = [
        InequalityId::ThmMain,
        InequalityId::CorHalfShift,
        InequalityId::ThmAlpha,
        InequalityId::ThmMvt,
        InequalityId::CorMuLambda,
        InequalityId::CorOneHalf,
        InequalityId::RemarkRearranged,
        InequalityId::KeckicVasic,
        InequalityId::ZhangXuSitu,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InequalityId::ThmMain => "thm_main",
            InequalityId::CorHalfShift => "cor_half_shift",
            InequalityId::ThmAlpha => "thm_alpha",
            InequalityId::ThmMvt => "thm_mvt",
            InequalityId::CorMuLambda => "cor_mu_lambda",
            InequalityId::CorOneHalf => "cor_one_half",
            InequalityId::RemarkRearranged => "remark_rearranged",
            InequalityId::KeckicVasic => "keckic_vasic",
            InequalityId::ZhangXuSitu => "zhang_xu_situ",
        }
    }

    /// Whether the inequality is stated with strict signs.
    pub fn is_strict(self) -> bool {
        matches!(
            self,
            InequalityId::ThmMvt
                | InequalityId::CorMuLambda
                | InequalityId::CorOneHalf
                | InequalityId::RemarkRearranged
        )
    }

    /// Classical inequalities ignore `q`.
    pub fn is_classical(self) -> bool {
        matches!(self, InequalityId::KeckicVasic | InequalityId::ZhangXuSitu)
    }

    /// Default sampling region. For `cor_mu_lambda`, `y` carries μ and `aux`
    /// carries λ; for `thm_alpha`, `aux` is the offset of α above the root.
    pub fn default_domain(self) -> DomainSpec {
        let q = Some(Interval::new(0.05, 0.95));
        let wide = Interval::new(0.05, 30.0);
        match self {
            InequalityId::ThmMain => DomainSpec {
                x_range: Interval::new(1.0, 30.0),
                y_range: Some(Interval::new(1.0, 30.0)),
                q_range: q,
                aux_range: None,
                constraint: Constraint::None,
                min_gap: 0.0,
            },
            InequalityId::CorHalfShift | InequalityId::CorOneHalf | InequalityId::RemarkRearranged => {
                DomainSpec::single(wide, q)
            }
            InequalityId::ThmAlpha => DomainSpec {
                x_range: Interval::new(0.05, 20.0),
                y_range: Some(Interval::new(0.05, 20.0)),
                q_range: q,
                aux_range: Some(Interval::new(0.0, 10.0)),
                constraint: Constraint::AlphaAtLeastRoot,
                min_gap: 0.0,
            },
            InequalityId::ThmMvt => DomainSpec {
                x_range: wide,
                y_range: Some(wide),
                q_range: q,
                aux_range: None,
                constraint: Constraint::XGreaterThanY,
                min_gap: 1e-6,
            },
            InequalityId::CorMuLambda => DomainSpec {
                x_range: wide,
                y_range: Some(Interval::new(0.01, 10.0)),
                q_range: q,
                aux_range: Some(Interval::new(0.01, 10.0)),
                constraint: Constraint::MuGreaterThanLambda,
                min_gap: 1e-6,
            },
            InequalityId::KeckicVasic => DomainSpec {
                x_range: Interval::new(1.0 + 1e-6, 30.0),
                y_range: Some(Interval::new(1.0 + 1e-6, 30.0)),
                q_range: None,
                aux_range: None,
                constraint: Constraint::XGreaterThanY,
                min_gap: 0.0,
            },
            InequalityId::ZhangXuSitu => DomainSpec {
                x_range: wide,
                y_range: Some(wide),
                q_range: None,
                aux_range: None,
                constraint: Constraint::None,
                min_gap: 0.0,
            },
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InequalityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::domain(format!("unknown inequality id '{s}'")))
    }
}

/// Lower bound, ratio and upper bound of one inequality at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundPair {
    pub inequality_id: InequalityId,
    pub lower: f64,
    pub ratio: f64,
    pub upper: f64,
    /// `ratio - lower`.
    pub lower_margin: f64,
    /// `upper - ratio`.
    pub upper_margin: f64,
    pub strict: bool,
    pub ln_lower: f64,
    pub ln_ratio: f64,
    pub ln_upper: f64,
}

impl BoundPair {
    pub fn from_logs(id: InequalityId, ln_lower: f64, ln_ratio: f64, ln_upper: f64) -> Self {
        let (lower, ratio, upper) = (ln_lower.exp(), ln_ratio.exp(), ln_upper.exp());
        Self {
            inequality_id: id,
            lower,
            ratio,
            upper,
            lower_margin: ratio - lower,
            upper_margin: upper - ratio,
            strict: id.is_strict(),
            ln_lower,
            ln_ratio,
            ln_upper,
        }
    }

    /// Divides all three components by `exp(ln_factor)`.
    pub fn scaled_down(self, id: InequalityId, ln_factor: f64) -> Self {
        Self::from_logs(
            id,
            self.ln_lower - ln_factor,
            self.ln_ratio - ln_factor,
            self.ln_upper - ln_factor,
        )
    }

    /// Multiplies the upper bound by `factor`. Only used to corrupt bounds
    /// when self-testing the harness.
    pub fn with_upper_scaled(self, factor: f64) -> Self {
        Self::from_logs(
            self.inequality_id,
            self.ln_lower,
            self.ln_ratio,
            self.ln_upper + factor.ln(),
        )
    }

    pub fn log_lower_margin(&self) -> f64 {
        self.ln_ratio - self.ln_lower
    }

    pub fn log_upper_margin(&self) -> f64 {
        self.ln_upper - self.ln_ratio
    }

    /// Log-space slack `SLACK * max(1, |ln ratio|)`.
    pub fn slack(&self) -> f64 {
        SLACK * self.ln_ratio.abs().max(1.0)
    }

    /// `ln lower - slack <= ln ratio <= ln upper + slack`.
    pub fn is_satisfied(&self) -> bool {
        let s = self.slack();
        self.log_lower_margin() >= -s && self.log_upper_margin() >= -s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, v: f64) -> bool {
        v >= self.lo && v <= self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    None,
    /// `x > y + min_gap`.
    XGreaterThanY,
    /// `μ > λ + min_gap` with μ in `y` and λ in `aux`.
    MuGreaterThanLambda,
    /// `aux` is drawn as an offset and added to the root of ψ_q.
    AlphaAtLeastRoot,
}

/// A sampling region for one inequality or convexity check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec {
    pub x_range: Interval,
    pub y_range: Option<Interval>,
    pub q_range: Option<Interval>,
    pub aux_range: Option<Interval>,
    pub constraint: Constraint,
    pub min_gap: f64,
}

impl DomainSpec {
    fn single(x_range: Interval, q_range: Option<Interval>) -> Self {
        Self {
            x_range,
            y_range: None,
            q_range,
            aux_range: None,
            constraint: Constraint::None,
            min_gap: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ranges = [Some(self.x_range), self.y_range, self.q_range, self.aux_range];
        for r in ranges.iter().flatten() {
            if !(r.lo.is_finite() && r.hi.is_finite() && r.lo <= r.hi) {
                return Err(Error::domain(format!("empty or non-finite range [{}, {}]", r.lo, r.hi)));
            }
        }
        if let Some(q) = self.q_range {
            if !(q.lo > 0.0 && q.hi < 1.0) {
                return Err(Error::domain(format!("q range [{}, {}] not inside (0, 1)", q.lo, q.hi)));
            }
        }
        let needs = match self.constraint {
            Constraint::None => None,
            Constraint::XGreaterThanY => self.y_range.is_none().then_some("y_range"),
            Constraint::MuGreaterThanLambda => {
                (self.y_range.is_none() || self.aux_range.is_none()).then_some("y_range and aux_range")
            }
            Constraint::AlphaAtLeastRoot => {
                (self.q_range.is_none() || self.aux_range.is_none()).then_some("q_range and aux_range")
            }
        };
        match needs {
            Some(what) => Err(Error::domain(format!("constraint {:?} needs {what}", self.constraint))),
            None => Ok(()),
        }
    }
}

/// A point of a sampling region. Unused coordinates are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: Option<f64>,
    pub q: Option<f64>,
    pub aux: Option<f64>,
}

impl Point {
    pub fn new(x: f64, y: Option<f64>, q: Option<f64>, aux: Option<f64>) -> Self {
        Self { x, y, q, aux }
    }

    pub(crate) fn need_y(&self, what: &str) -> Result<f64> {
        self.y.ok_or_else(|| Error::domain(format!("{what} needs y")))
    }

    pub(crate) fn need_q(&self, what: &str) -> Result<QParam> {
        QParam::new(self.q.ok_or_else(|| Error::domain(format!("{what} needs q")))?)
    }

    pub(crate) fn need_aux(&self, what: &str) -> Result<f64> {
        self.aux.ok_or_else(|| Error::domain(format!("{what} needs aux")))
    }
}

/// Roots of ψ_q keyed by the bits of `q`, each computed at most once.
#[derive(Debug)]
pub struct RootCache {
    cfg: EvalConfig,
    roots: Mutex<HashMap<u64, Arc<OnceLock<Result<PsiRoot>>>>>,
}

impl RootCache {
    pub fn new(cfg: EvalConfig) -> Self {
        Self {
            cfg,
            roots: Mutex::new(HashMap::new()),
        }
    }

    pub fn get(&self, q: QParam) -> Result<PsiRoot> {
        let cell = {
            let mut map = self.roots.lock().unwrap_or_else(|e| e.into_inner());
            Arc::clone(map.entry(q.key()).or_default())
        };
        cell.get_or_init(|| psi_q_root(q, &self.cfg)).clone()
    }
}

/// Configuration shared by every bound evaluation of a certification run.
#[derive(Debug)]
pub struct BoundsContext {
    pub eval: EvalConfig,
    pub classical: ClassicalConfig,
    pub roots: RootCache,
}

impl BoundsContext {
    pub fn new(eval: EvalConfig, classical: ClassicalConfig) -> Self {
        Self {
            eval,
            classical,
            roots: RootCache::new(eval),
        }
    }
}

impl Default for BoundsContext {
    fn default() -> Self {
        Self::new(EvalConfig::default(), ClassicalConfig::default())
    }
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(msg()))
    }
}

fn positive(v: f64, name: &str) -> Result<()> {
    require(v > 0.0 && v.is_finite(), || format!("{name} must be > 0, got {v}"))
}

/// `ln(Γ_q(x) / Γ_q(y))`.
pub fn ln_ratio_gamma_q(x: f64, y: f64, q: QParam, cfg: &EvalConfig) -> Result<f64> {
    if x == y {
        positive(x, "x")?;
        return Ok(0.0);
    }
    Ok(ln_gamma_q(x, q, cfg)?.value - ln_gamma_q(y, q, cfg)?.value)
}

/// `Γ_q(x) / Γ_q(y)`, computed in log space.
pub fn ratio_gamma_q(x: f64, y: f64, q: QParam, cfg: &EvalConfig) -> Result<f64> {
    Ok(ln_ratio_gamma_q(x, y, q, cfg)?.exp())
}

fn thm_main_core(id: InequalityId, x: f64, y: f64, q: QParam, cfg: &EvalConfig) -> Result<BoundPair> {
    positive(x, "x")?;
    positive(y, "y")?;
    // x (ln f)'(x) for f(x) = exp([x]_q) Γ_q(x)
    let slope = |t: f64| -> Result<f64> { Ok(t * (q_bracket_derivative(t, q) + psi_q(t, q, cfg)?.value)) };
    let ln_xy = (x / y).ln();
    let shift = (q.pow(x) - q.pow(y)) / q.one_minus_q();
    let ln_lower = slope(y)? * ln_xy + shift;
    let ln_upper = slope(x)? * ln_xy + shift;
    Ok(BoundPair::from_logs(
        id,
        ln_lower,
        ln_ratio_gamma_q(x, y, q, cfg)?,
        ln_upper,
    ))
}

/// Main theorem, for `x, y >= 1`.
pub fn thm_main_bounds(x: f64, y: f64, q: QParam, cfg: &EvalConfig) -> Result<BoundPair> {
    require(x >= 1.0 && y >= 1.0, || {
        format!("thm_main requires x >= 1 and y >= 1, got x = {x}, y = {y}")
    })?;
    thm_main_core(InequalityId::ThmMain, x, y, q, cfg)
}

/// The main theorem evaluated outside its stated domain (any `x, y > 0`).
pub fn thm_main_bounds_unchecked(x: f64, y: f64, q: QParam, cfg: &EvalConfig) -> Result<BoundPair> {
    thm_main_core(InequalityId::ThmMain, x, y, q, cfg)
}

/// The main theorem at `(x + 1, x + 1/2)`.
pub fn cor_half_shift_bounds(x: f64, q: QParam, cfg: &EvalConfig) -> Result<BoundPair> {
    positive(x, "x")?;
    thm_main_core(InequalityId::CorHalfShift, x + 1.0, x + 0.5, q, cfg)
}

fn thm_alpha_core(x: f64, y: f64, alpha: f64, q: QParam, cfg: &EvalConfig) -> Result<BoundPair> {
    positive(x, "x")?;
    positive(y, "y")?;
    require(alpha.is_finite() && x + alpha > 0.0 && y + alpha > 0.0, || {
        format!("thm_alpha needs x + alpha > 0 and y + alpha > 0, got alpha = {alpha}")
    })?;
    // x (ln g)'(x) for g(x) = e^x Γ_q(x + α) / (x + α)
    let slope = |t: f64| -> Result<f64> {
        let s = t + alpha;
        Ok(t * ((s - 1.0) / s + psi_q(s, q, cfg)?.value))
    };
    let ln_xy = (x / y).ln();
    let base = (y - x) + ((x + alpha) / (y + alpha)).ln();
    let ln_lower = base + slope(y)? * ln_xy;
    let ln_upper = base + slope(x)? * ln_xy;
    let ln_ratio = ln_ratio_gamma_q(x + alpha, y + alpha, q, cfg)?;
    Ok(BoundPair::from_logs(
        InequalityId::ThmAlpha,
        ln_lower,
        ln_ratio,
        ln_upper,
    ))
}

/// Shifted theorem for `x, y > 0` and `alpha` at or above the positive root
/// of ψ_q.
pub fn thm_alpha_bounds(
    x: f64,
    y: f64,
    alpha: f64,
    q: QParam,
    cfg: &EvalConfig,
    roots: &RootCache,
) -> Result<BoundPair> {
    let root = roots.get(q)?.root;
    if !(alpha >= root - ALPHA_ROOT_TOL) {
        return Err(Error::AlphaBelowRoot { alpha, root });
    }
    thm_alpha_core(x, y, alpha, q, cfg)
}

/// [`thm_alpha_bounds`] without the hypothesis check on `alpha`.
pub fn thm_alpha_bounds_unchecked(x: f64, y: f64, alpha: f64, q: QParam, cfg: &EvalConfig) -> Result<BoundPair> {
    thm_alpha_core(x, y, alpha, q, cfg)
}

fn thm_mvt_core(id: InequalityId, x: f64, y: f64, q: QParam, cfg: &EvalConfig) -> Result<BoundPair> {
    positive(x, "x")?;
    positive(y, "y")?;
    let d = x - y;
    let ln_lower = d * psi_q(y, q, cfg)?.value;
    let ln_upper = d * psi_q(x, q, cfg)?.value;
    Ok(BoundPair::from_logs(
        id,
        ln_lower,
        ln_ratio_gamma_q(x, y, q, cfg)?,
        ln_upper,
    ))
}

/// Mean-value bounds, for `x > y > 0`.
pub fn thm_mvt_bounds(x: f64, y: f64, q: QParam, cfg: &EvalConfig) -> Result<BoundPair> {
    require(x > y && y > 0.0, || {
        format!("thm_mvt requires x > y > 0, got x = {x}, y = {y}")
    })?;
    thm_mvt_core(InequalityId::ThmMvt, x, y, q, cfg)
}

/// Mean-value bounds at `(x + mu, x + lambda)`, for `mu > lambda > 0`.
pub fn cor_mu_lambda_bounds(x: f64, mu: f64, lambda: f64, q: QParam, cfg: &EvalConfig) -> Result<BoundPair> {
    positive(x, "x")?;
    require(mu > lambda && lambda > 0.0, || {
        format!("cor_mu_lambda requires mu > lambda > 0, got mu = {mu}, lambda = {lambda}")
    })?;
    thm_mvt_core(InequalityId::CorMuLambda, x + mu, x + lambda, q, cfg)
}

/// Mean-value bounds at `(x + 1, x + 1/2)`.
pub fn cor_one_half_bounds(x: f64, q: QParam, cfg: &EvalConfig) -> Result<BoundPair> {
    positive(x, "x")?;
    thm_mvt_core(InequalityId::CorOneHalf, x + 1.0, x + 0.5, q, cfg)
}

/// Bounds for `Γ_q(x) / Γ_q(x + 1/2)`: the `cor_one_half` triple divided by
/// `[x]_q`.
pub fn remark_rearranged_bounds(x: f64, q: QParam, cfg: &EvalConfig) -> Result<BoundPair> {
    let half = cor_one_half_bounds(x, q, cfg)?;
    Ok(half.scaled_down(InequalityId::RemarkRearranged, q_bracket(x, q).ln()))
}

fn keckic_vasic_core(x: f64, y: f64, cfg: &ClassicalConfig) -> Result<BoundPair> {
    positive(x, "x")?;
    positive(y, "y")?;
    let (lx, ly) = (x.ln(), y.ln());
    let ln_lower = (x - 1.0) * lx - (y - 1.0) * ly + y - x;
    let ln_upper = (x - 0.5) * lx - (y - 0.5) * ly + y - x;
    let ln_ratio = ln_gamma_ratio_classical(x, y, cfg)?.value;
    Ok(BoundPair::from_logs(
        InequalityId::KeckicVasic,
        ln_lower,
        ln_ratio,
        ln_upper,
    ))
}

/// Classical bounds for `Γ(x) / Γ(y)` with `x >= y > 1`.
pub fn keckic_vasic_bounds(x: f64, y: f64, cfg: &ClassicalConfig) -> Result<BoundPair> {
    require(x >= y && y > 1.0, || {
        format!("keckic_vasic requires x >= y > 1, got x = {x}, y = {y}")
    })?;
    keckic_vasic_core(x, y, cfg)
}

/// Classical bounds for `Γ(x) / Γ(y)` with `x, y > 0`.
pub fn zhang_xu_situ_bounds(x: f64, y: f64, cfg: &ClassicalConfig) -> Result<BoundPair> {
    positive(x, "x")?;
    positive(y, "y")?;
    let (lx, ly) = (x.ln(), y.ln());
    let base = x * lx - y * ly + y - x;
    let ln_xy = (x / y).ln();
    let ln_lower = base + y * (psi_classical(y)?.value - ly) * ln_xy;
    let ln_upper = base + x * (psi_classical(x)?.value - lx) * ln_xy;
    let ln_ratio = ln_gamma_ratio_classical(x, y, cfg)?.value;
    Ok(BoundPair::from_logs(
        InequalityId::ZhangXuSitu,
        ln_lower,
        ln_ratio,
        ln_upper,
    ))
}

/// Evaluates inequality `id` at `point`. With `force`, the hypotheses of the
/// inequality (e.g. `x, y >= 1`, `alpha >= root`) are not enforced; arguments
/// must still lie where the functions are defined.
pub fn evaluate(id: InequalityId, point: &Point, ctx: &BoundsContext, force: bool) -> Result<BoundPair> {
    let name = id.as_str();
    let cfg = &ctx.eval;
    let x = point.x;
    match id {
        InequalityId::ThmMain => {
            let (y, q) = (point.need_y(name)?, point.need_q(name)?);
            if force {
                thm_main_bounds_unchecked(x, y, q, cfg)
            } else {
                thm_main_bounds(x, y, q, cfg)
            }
        }
        InequalityId::CorHalfShift => cor_half_shift_bounds(x, point.need_q(name)?, cfg),
        InequalityId::ThmAlpha => {
            let (y, q, alpha) = (point.need_y(name)?, point.need_q(name)?, point.need_aux(name)?);
            if force {
                thm_alpha_bounds_unchecked(x, y, alpha, q, cfg)
            } else {
                thm_alpha_bounds(x, y, alpha, q, cfg, &ctx.roots)
            }
        }
        InequalityId::ThmMvt => {
            let (y, q) = (point.need_y(name)?, point.need_q(name)?);
            if force {
                thm_mvt_core(id, x, y, q, cfg)
            } else {
                thm_mvt_bounds(x, y, q, cfg)
            }
        }
        InequalityId::CorMuLambda => {
            let (mu, q, lambda) = (point.need_y(name)?, point.need_q(name)?, point.need_aux(name)?);
            if force {
                positive(x, "x")?;
                thm_mvt_core(id, x + mu, x + lambda, q, cfg)
            } else {
                cor_mu_lambda_bounds(x, mu, lambda, q, cfg)
            }
        }
        InequalityId::CorOneHalf => cor_one_half_bounds(x, point.need_q(name)?, cfg),
        InequalityId::RemarkRearranged => remark_rearranged_bounds(x, point.need_q(name)?, cfg),
        InequalityId::KeckicVasic => {
            let y = point.need_y(name)?;
            if force {
                keckic_vasic_core(x, y, &ctx.classical)
            } else {
                keckic_vasic_bounds(x, y, &ctx.classical)
            }
        }
        InequalityId::ZhangXuSitu => zhang_xu_situ_bounds(x, point.need_y(name)?, &ctx.classical),
    }
}
