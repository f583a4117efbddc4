//! Seeded sampling and numerical certification of the bound families, the
//! geometric-convexity lemmas and the `q -> 1` limits.
//!
//! Points are drawn sequentially from a ChaCha stream so a `(seed, count,
//! spec)` triple always gives the same batch. Evaluation runs on the rayon
//! pool; results are collected in sample order before they are reduced, so
//! reports do not depend on scheduling.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{evaluate, BoundsContext, Constraint, DomainSpec, InequalityId, Interval, Point};
use crate::classical::{euler_gamma_classical, gamma_classical, psi_classical};
use crate::error::{Error, Result};
use crate::qcore::{q_bracket, q_bracket_derivative, QParam};
use crate::qspecial::{euler_gamma_q, gamma_q, ln_gamma_q, psi_q};
use crate::tolerances::{
    ALPHA_ROOT_TOL, LIMIT_EULER_ABS, LIMIT_Q_MAX, LIMIT_TERMINAL_REL, MAX_FAILURE_RECORDS, MAX_REJECTIONS, SLACK,
    SLOPE_SLACK,
};

/// Points drawn from a [`DomainSpec`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub seed: u64,
    pub count: usize,
    pub points: Vec<Point>,
}

fn uniform(rng: &mut ChaCha8Rng, r: Interval) -> f64 {
    // (lo, hi]: keeps an open lower end such as x in (0, 50] off zero.
    let u: f64 = rng.random();
    (r.hi - u * (r.hi - r.lo)).clamp(r.lo, r.hi)
}

/// Uniform in `ln(1 - q)` when the range covers more than a decade of `1 - q`.
fn draw_q(rng: &mut ChaCha8Rng, r: Interval) -> f64 {
    let (t_lo, t_hi) = (1.0 - r.hi, 1.0 - r.lo);
    if t_hi / t_lo > 10.0 {
        let lt = uniform(rng, Interval::new(t_lo.ln(), t_hi.ln()));
        (1.0 - lt.exp()).clamp(r.lo, r.hi)
    } else {
        uniform(rng, r)
    }
}

fn satisfies(spec: &DomainSpec, p: &Point) -> bool {
    match spec.constraint {
        Constraint::None | Constraint::AlphaAtLeastRoot => true,
        Constraint::XGreaterThanY => p.y.is_some_and(|y| p.x > y + spec.min_gap),
        Constraint::MuGreaterThanLambda => matches!((p.y, p.aux), (Some(mu), Some(l)) if mu > l + spec.min_gap),
    }
}

/// Draws `count` points from `spec`. Coordinates are drawn in the order x,
/// y, q, aux; a point violating the constraint is redrawn whole, at most
/// [`MAX_REJECTIONS`] times. Under [`Constraint::AlphaAtLeastRoot`] the
/// drawn `aux` is an offset and the root of ψ_q is added to it.
pub fn sample(spec: &DomainSpec, seed: u64, count: usize, ctx: &BoundsContext) -> Result<SampleBatch> {
    if count == 0 {
        return Err(Error::InvalidConfig("sample count must be at least 1".into()));
    }
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        let mut attempts = 0;
        let p = loop {
            let p = Point {
                x: uniform(&mut rng, spec.x_range),
                y: spec.y_range.map(|r| uniform(&mut rng, r)),
                q: spec.q_range.map(|r| draw_q(&mut rng, r)),
                aux: spec.aux_range.map(|r| uniform(&mut rng, r)),
            };
            if satisfies(spec, &p) {
                break p;
            }
            attempts += 1;
            if attempts >= MAX_REJECTIONS {
                return Err(Error::RejectionOverflow {
                    attempts,
                    reason: format!("constraint {:?} not met", spec.constraint),
                });
            }
        };
        points.push(p);
    }
    if spec.constraint == Constraint::AlphaAtLeastRoot {
        points = points
            .into_par_iter()
            .map(|mut p| {
                let q = QParam::new(p.q.expect("validated q_range"))?;
                p.aux = Some(ctx.roots.get(q)?.root + p.aux.expect("validated aux_range"));
                Ok(p)
            })
            .collect::<Result<_>>()?;
    }
    Ok(SampleBatch { seed, count, points })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    Violation,
    Error,
}

/// One failing sample. For inequality checks `lower`, `ratio`, `upper` are
/// the linear bound values; the other checks document their own mapping.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub point: Point,
    pub lower: Option<f64>,
    pub ratio: Option<f64>,
    pub upper: Option<f64>,
    pub kind: FailureKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

/// Outcome of certifying one check over a batch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    /// Inequality id or check name.
    pub label: String,
    pub n_samples: u64,
    pub n_pass: u64,
    /// Smallest log-space lower margin; `None` if nothing was evaluated.
    pub worst_lower_margin: Option<f64>,
    pub worst_upper_margin: Option<f64>,
    /// The first [`MAX_FAILURE_RECORDS`] failures in sample order.
    pub failures: Vec<Failure>,
    /// Failures caused by the numerical machinery (non-convergence etc.).
    pub n_numerical_errors: u64,
    pub wall_time_s: f64,
}

impl CertificateReport {
    pub fn all_passed(&self) -> bool {
        self.n_pass == self.n_samples
    }

    pub fn n_failures(&self) -> u64 {
        self.n_samples - self.n_pass
    }

    /// At least half the samples failed inside the numerical machinery.
    pub fn numerically_broken(&self) -> bool {
        self.n_samples > 0 && 2 * self.n_numerical_errors >= self.n_samples
    }
}

/// Result of checking one sample, before reduction.
enum Outcome {
    Checked {
        point: Point,
        lower: Option<f64>,
        ratio: f64,
        upper: Option<f64>,
        lower_margin: Option<f64>,
        upper_margin: Option<f64>,
        ok: bool,
        detail: Option<String>,
    },
    Failed {
        point: Point,
        error: Error,
    },
}

fn fold_min(acc: Option<f64>, v: Option<f64>) -> Option<f64> {
    match (acc, v) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

fn aggregate(label: &str, outcomes: Vec<Outcome>, started: Option<Instant>) -> CertificateReport {
    let mut r = CertificateReport {
        label: label.to_string(),
        n_samples: outcomes.len() as u64,
        n_pass: 0,
        worst_lower_margin: None,
        worst_upper_margin: None,
        failures: Vec::new(),
        n_numerical_errors: 0,
        wall_time_s: 0.0,
    };
    for o in outcomes {
        let failure = match o {
            Outcome::Checked {
                point,
                lower,
                ratio,
                upper,
                lower_margin,
                upper_margin,
                ok,
                detail,
            } => {
                r.worst_lower_margin = fold_min(r.worst_lower_margin, lower_margin);
                r.worst_upper_margin = fold_min(r.worst_upper_margin, upper_margin);
                if ok {
                    r.n_pass += 1;
                    continue;
                }
                Failure {
                    point,
                    lower,
                    ratio: Some(ratio),
                    upper,
                    kind: FailureKind::Violation,
                    detail,
                }
            }
            Outcome::Failed { point, error } => {
                if error.is_numerical() {
                    r.n_numerical_errors += 1;
                }
                Failure {
                    point,
                    lower: None,
                    ratio: None,
                    upper: None,
                    kind: FailureKind::Error,
                    detail: Some(error.to_string()),
                }
            }
        };
        if r.failures.len() < MAX_FAILURE_RECORDS {
            r.failures.push(failure);
        }
    }
    r.wall_time_s = started.map_or(0.0, |t| t.elapsed().as_secs_f64());
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Skip the hypotheses of each inequality (exploratory runs).
    pub force: bool,
    /// Halve every upper bound. Exists to prove the harness can fail.
    pub corrupt_upper: bool,
    /// With `false`, `wall_time_s` is reported as 0 for byte-stable output.
    pub record_timing: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            force: false,
            corrupt_upper: false,
            record_timing: true,
        }
    }
}

fn clock(opts: &CertifyOptions) -> Option<Instant> {
    opts.record_timing.then(Instant::now)
}

/// Evaluates inequality `id` at every point of `batch`.
pub fn certify(id: InequalityId, batch: &SampleBatch, ctx: &BoundsContext, opts: &CertifyOptions) -> CertificateReport {
    certify_labeled(id.as_str(), id, batch, ctx, opts)
}

fn certify_labeled(
    label: &str,
    id: InequalityId,
    batch: &SampleBatch,
    ctx: &BoundsContext,
    opts: &CertifyOptions,
) -> CertificateReport {
    let started = clock(opts);
    let outcomes = batch
        .points
        .par_iter()
        .map(|&point| match evaluate(id, &point, ctx, opts.force) {
            Ok(bp) => {
                let bp = if opts.corrupt_upper {
                    bp.with_upper_scaled(0.5)
                } else {
                    bp
                };
                Outcome::Checked {
                    point,
                    lower: Some(bp.lower),
                    ratio: bp.ratio,
                    upper: Some(bp.upper),
                    lower_margin: Some(bp.log_lower_margin()),
                    upper_margin: Some(bp.log_upper_margin()),
                    ok: bp.is_satisfied(),
                    detail: None,
                }
            }
            Err(error) => Outcome::Failed { point, error },
        })
        .collect();
    aggregate(label, outcomes, started)
}

/// The two functions whose geometric convexity drives the main theorems:
/// `f(x) = exp([x]_q) Γ_q(x)` on `x >= 1` and
/// `g(x) = e^x Γ_q(x + α) / (x + α)` on `x > 0` with α at least the root of ψ_q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvexFn {
    F,
    G,
}

impl ConvexFn {
    fn check_domain(self, x: f64, alpha: Option<f64>, q: QParam, ctx: &BoundsContext) -> Result<()> {
        match self {
            ConvexFn::F if !(x >= 1.0) => Err(Error::domain(format!("f needs x >= 1, got {x}"))),
            ConvexFn::F => Ok(()),
            ConvexFn::G => {
                if !(x > 0.0) {
                    return Err(Error::domain(format!("g needs x > 0, got {x}")));
                }
                let alpha = alpha.ok_or_else(|| Error::domain("g needs alpha"))?;
                let root = ctx.roots.get(q)?.root;
                if alpha < root - ALPHA_ROOT_TOL {
                    return Err(Error::AlphaBelowRoot { alpha, root });
                }
                Ok(())
            }
        }
    }

    /// `ln f(x)` or `ln g(x)`.
    pub fn ln_value(self, x: f64, alpha: Option<f64>, q: QParam, ctx: &BoundsContext) -> Result<f64> {
        self.check_domain(x, alpha, q, ctx)?;
        match self {
            ConvexFn::F => Ok(q_bracket(x, q) + ln_gamma_q(x, q, &ctx.eval)?.value),
            ConvexFn::G => {
                let s = x + alpha.expect("checked");
                Ok(x + ln_gamma_q(s, q, &ctx.eval)?.value - s.ln())
            }
        }
    }

    /// `x (ln h)'(x)` from the closed-form derivative.
    pub fn log_slope(self, x: f64, alpha: Option<f64>, q: QParam, ctx: &BoundsContext) -> Result<f64> {
        self.check_domain(x, alpha, q, ctx)?;
        match self {
            ConvexFn::F => Ok(x * (q_bracket_derivative(x, q) + psi_q(x, q, &ctx.eval)?.value)),
            ConvexFn::G => {
                let s = x + alpha.expect("checked");
                Ok(x * (1.0 + psi_q(s, q, &ctx.eval)?.value - 1.0 / s))
            }
        }
    }

    /// Sampling region of the convexity check: pairs `(x, y)` with `q` and,
    /// for `g`, an offset of α above the root.
    pub fn default_domain(self) -> DomainSpec {
        let q_range = Some(Interval::new(0.05, 0.95));
        match self {
            ConvexFn::F => DomainSpec {
                x_range: Interval::new(1.0, 20.0),
                y_range: Some(Interval::new(1.0, 20.0)),
                q_range,
                aux_range: None,
                constraint: Constraint::None,
                min_gap: 0.0,
            },
            ConvexFn::G => DomainSpec {
                x_range: Interval::new(0.0, 20.0),
                y_range: Some(Interval::new(0.0, 20.0)),
                q_range,
                aux_range: Some(Interval::new(0.0, 10.0)),
                constraint: Constraint::AlphaAtLeastRoot,
                min_gap: 0.0,
            },
        }
    }
}

/// Checks `ln h(√(x y)) <= (ln h(x) + ln h(y)) / 2 + slack` at every point
/// of `batch`, with `y`, `q` and (for `g`) `aux = α` taken from the point.
///
/// Failure records carry `ratio = ln h(√(x y))` and `upper` = the mean of
/// the logarithms; only the upper margin is reported.
pub fn check_geometric_convexity(
    func: ConvexFn,
    batch: &SampleBatch,
    ctx: &BoundsContext,
    opts: &CertifyOptions,
) -> CertificateReport {
    let started = clock(opts);
    let outcomes = batch
        .points
        .par_iter()
        .map(|&point| {
            let eval = || -> Result<(f64, f64)> {
                let y = point.need_y("convexity check")?;
                let q = point.need_q("convexity check")?;
                let h = |t: f64| func.ln_value(t, point.aux, q, ctx);
                let mid = h((point.x * y).sqrt())?;
                let mean = 0.5 * (h(point.x)? + h(y)?);
                Ok((mid, mean))
            };
            match eval() {
                Ok((mid, mean)) => {
                    let margin = mean - mid;
                    Outcome::Checked {
                        point,
                        lower: None,
                        ratio: mid,
                        upper: Some(mean),
                        lower_margin: None,
                        upper_margin: Some(margin),
                        ok: margin >= -SLACK * mid.abs().max(1.0),
                        detail: None,
                    }
                }
                Err(error) => Outcome::Failed { point, error },
            }
        })
        .collect();
    aggregate(convexity_label(func), outcomes, started)
}

fn convexity_label(func: ConvexFn) -> &'static str {
    match func {
        ConvexFn::F => "convexity_f",
        ConvexFn::G => "convexity_g",
    }
}

fn slope_label(func: ConvexFn) -> &'static str {
    match func {
        ConvexFn::F => "lemma_slope_f",
        ConvexFn::G => "lemma_slope_g",
    }
}

/// Checks that `x (ln h)'(x)` is nondecreasing along `grid`, comparing each
/// pair of neighbours with slack `SLOPE_SLACK * max(1, |slope|)`.
///
/// Each neighbour pair is one sample: the point holds `x = x_i`,
/// `y = x_{i+1}`; failure records carry the two slopes as `lower` and
/// `ratio`. A single-point grid has no pairs and passes trivially.
pub fn check_lemma_monotone_slope(
    func: ConvexFn,
    grid: &[f64],
    q: QParam,
    alpha: Option<f64>,
    ctx: &BoundsContext,
    opts: &CertifyOptions,
) -> Result<CertificateReport> {
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::domain("slope grid must be strictly increasing"));
    }
    Ok(slope_report(
        slope_label(func),
        func,
        &[(q, alpha, grid.to_vec())] as &[SlopeCase],
        ctx,
        opts,
    ))
}

/// A q value, the optional α and the grid of one slope check.
type SlopeCase = (QParam, Option<f64>, Vec<f64>);

fn slope_report(
    label: &str,
    func: ConvexFn,
    cases: &[SlopeCase],
    ctx: &BoundsContext,
    opts: &CertifyOptions,
) -> CertificateReport {
    let started = clock(opts);
    let mut outcomes = Vec::new();
    for (q, alpha, grid) in cases {
        let slopes: Vec<Result<f64>> = grid.par_iter().map(|&x| func.log_slope(x, *alpha, *q, ctx)).collect();
        for i in 1..grid.len() {
            let point = Point::new(grid[i - 1], Some(grid[i]), Some(q.get()), *alpha);
            outcomes.push(match (&slopes[i - 1], &slopes[i]) {
                (Ok(a), Ok(b)) => {
                    let margin = b - a;
                    Outcome::Checked {
                        point,
                        lower: Some(*a),
                        ratio: *b,
                        upper: None,
                        lower_margin: Some(margin),
                        upper_margin: None,
                        ok: margin >= -SLOPE_SLACK * a.abs().max(1.0),
                        detail: None,
                    }
                }
                (Err(e), _) | (_, Err(e)) => Outcome::Failed {
                    point,
                    error: e.clone(),
                },
            });
        }
    }
    aggregate(label, outcomes, started)
}

/// Differences that reach this level relative to the limit count as converged.
const LIMIT_FLOOR: f64 = 1e-12;

fn limit_outcome(point: Point, what: &str, diffs: &[f64], reference: f64, tol: f64, relative: bool) -> Outcome {
    let scale = reference.abs().max(1.0);
    let decreasing = diffs
        .windows(2)
        .all(|w| w[1] < w[0] || w[0].max(w[1]) <= LIMIT_FLOOR * scale);
    let last = *diffs.last().expect("nonempty q sequence");
    let terminal = if relative { last / reference.abs() } else { last };
    let ok = decreasing && terminal <= tol;
    let detail = (!ok).then(|| {
        if decreasing {
            format!("{what}: terminal difference {terminal:e} above {tol:e}")
        } else {
            format!("{what}: differences not strictly decreasing: {diffs:?}")
        }
    });
    Outcome::Checked {
        point,
        lower: None,
        ratio: terminal,
        upper: Some(tol),
        lower_margin: None,
        upper_margin: Some(tol - terminal),
        ok,
        detail,
    }
}

/// Checks `Γ_q -> Γ`, `ψ_q -> ψ` at every `x` of `x_grid` and `γ_q -> γ`
/// along `q_sequence`: differences must decrease strictly and end within
/// the terminal tolerances.
///
/// One sample per (function, x) plus one for γ. The point holds `x` and the
/// last `q`; `ratio` is the terminal (relative) difference and `upper` its
/// tolerance.
pub fn check_limits(
    q_sequence: &[f64],
    x_grid: &[f64],
    ctx: &BoundsContext,
    opts: &CertifyOptions,
) -> Result<CertificateReport> {
    if q_sequence.is_empty() || q_sequence.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::domain("q sequence must be nonempty and strictly increasing"));
    }
    let q_last = *q_sequence.last().expect("nonempty");
    if q_last > LIMIT_Q_MAX {
        return Err(Error::domain(format!("q sequence may not exceed {LIMIT_Q_MAX}")));
    }
    let qs = q_sequence.iter().map(|&q| QParam::new(q)).collect::<Result<Vec<_>>>()?;
    let started = clock(opts);
    let cfg = &ctx.eval;

    let per_x: Vec<[Outcome; 2]> = x_grid
        .par_iter()
        .map(|&x| {
            let point = Point::new(x, None, Some(q_last), None);
            let gamma = || -> Result<Outcome> {
                let exact = gamma_classical(x, &ctx.classical)?.value;
                let diffs = qs
                    .iter()
                    .map(|&q| Ok((gamma_q(x, q, cfg)?.value - exact).abs()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(limit_outcome(point, "gamma", &diffs, exact, LIMIT_TERMINAL_REL, true))
            };
            let psi = || -> Result<Outcome> {
                let exact = psi_classical(x)?.value;
                let diffs = qs
                    .iter()
                    .map(|&q| Ok((psi_q(x, q, cfg)?.value - exact).abs()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(limit_outcome(point, "psi", &diffs, exact, LIMIT_TERMINAL_REL, true))
            };
            let settle = |r: Result<Outcome>| r.unwrap_or_else(|error| Outcome::Failed { point, error });
            [settle(gamma()), settle(psi())]
        })
        .collect();

    let euler_point = Point::new(1.0, None, Some(q_last), None);
    let euler = (|| -> Result<Outcome> {
        let exact = euler_gamma_classical();
        let diffs = qs
            .iter()
            .map(|&q| Ok((euler_gamma_q(q, cfg)?.value - exact).abs()))
            .collect::<Result<Vec<_>>>()?;
        Ok(limit_outcome(
            euler_point,
            "euler",
            &diffs,
            exact,
            LIMIT_EULER_ABS,
            false,
        ))
    })()
    .unwrap_or_else(|error| Outcome::Failed {
        point: euler_point,
        error,
    });

    let mut outcomes: Vec<Outcome> = per_x.into_iter().flatten().collect();
    outcomes.push(euler);
    Ok(aggregate("limits", outcomes, started))
}

/// Everything the default certification suite runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckId {
    Inequality(InequalityId),
    Convexity(ConvexFn),
    LemmaSlope(ConvexFn),
    Limits,
}

impl CheckId {
    pub const ALL: [CheckId; 14] = [
        CheckId::Inequality(InequalityId::ThmMain),
        CheckId::Inequality(InequalityId::CorHalfShift),
        CheckId::Inequality(InequalityId::ThmAlpha),
        CheckId::Inequality(InequalityId::ThmMvt),
        CheckId::Inequality(InequalityId::CorMuLambda),
        CheckId::Inequality(InequalityId::CorOneHalf),
        CheckId::Inequality(InequalityId::RemarkRearranged),
        CheckId::Inequality(InequalityId::KeckicVasic),
        CheckId::Inequality(InequalityId::ZhangXuSitu),
        CheckId::Convexity(ConvexFn::F),
        CheckId::Convexity(ConvexFn::G),
        CheckId::LemmaSlope(ConvexFn::F),
        CheckId::LemmaSlope(ConvexFn::G),
        CheckId::Limits,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Inequality(id) => id.as_str(),
            CheckId::Convexity(f) => convexity_label(f),
            CheckId::LemmaSlope(f) => slope_label(f),
            CheckId::Limits => "limits",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::domain(format!("unknown check '{s}'")))
    }
}

/// q values of the lemma-slope suite.
pub const SLOPE_Q_VALUES: usize = 20;

fn slope_q(i: usize) -> f64 {
    0.05 + 0.9 * i as f64 / (SLOPE_Q_VALUES - 1) as f64
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Default lemma-slope cases: [`SLOPE_Q_VALUES`] q values, each with a grid
/// of about `pairs / SLOPE_Q_VALUES` neighbour pairs; `f` on `[1, 20]`, `g`
/// on `(0, 10]` with α at the root of ψ_q.
fn slope_cases(func: ConvexFn, pairs: usize, ctx: &BoundsContext) -> Result<Vec<SlopeCase>> {
    let per_q = pairs.div_ceil(SLOPE_Q_VALUES).max(1);
    (0..SLOPE_Q_VALUES)
        .map(|i| {
            let q = QParam::new(slope_q(i))?;
            Ok(match func {
                ConvexFn::F => (q, None, linspace(1.0, 20.0, per_q + 1)),
                ConvexFn::G => {
                    let alpha = ctx.roots.get(q)?.root;
                    let h = 10.0 / (per_q + 1) as f64;
                    (q, Some(alpha), linspace(h, 10.0, per_q + 1))
                }
            })
        })
        .collect()
}

/// q sequence and x grid of the default limit check.
pub const LIMIT_Q_SEQUENCE: [f64; 3] = [0.9, 0.99, 0.999];
pub const LIMIT_X_GRID: [f64; 4] = [0.5, 1.5, 2.5, 4.0];

/// Runs one registered check with its default domain. `samples` is the
/// batch size for sampled checks and the total number of neighbour pairs
/// for the slope checks; the limit check has a fixed size.
pub fn run_check(
    check: CheckId,
    samples: usize,
    seed: u64,
    ctx: &BoundsContext,
    opts: &CertifyOptions,
) -> Result<CertificateReport> {
    match check {
        CheckId::Inequality(id) => {
            let batch = sample(&id.default_domain(), seed, samples, ctx)?;
            Ok(certify(id, &batch, ctx, opts))
        }
        CheckId::Convexity(func) => {
            let batch = sample(&func.default_domain(), seed, samples, ctx)?;
            Ok(check_geometric_convexity(func, &batch, ctx, opts))
        }
        CheckId::LemmaSlope(func) => {
            if samples == 0 {
                return Err(Error::InvalidConfig("sample count must be at least 1".into()));
            }
            let cases = slope_cases(func, samples, ctx)?;
            Ok(slope_report(slope_label(func), func, &cases, ctx, opts))
        }
        CheckId::Limits => check_limits(&LIMIT_Q_SEQUENCE, &LIMIT_X_GRID, ctx, opts),
    }
}

/// Runs every registered check in registry order.
pub fn run_suite(
    samples: usize,
    seed: u64,
    ctx: &BoundsContext,
    opts: &CertifyOptions,
) -> Result<Vec<CertificateReport>> {
    CheckId::ALL
        .into_iter()
        .map(|c| run_check(c, samples, seed, ctx, opts))
        .collect()
}

/// Region of the exploratory run of the main theorem below its hypothesis
/// `x, y >= 1`.
pub fn thm_main_explore_domain() -> DomainSpec {
    DomainSpec {
        x_range: Interval::new(0.0, 2.0),
        y_range: Some(Interval::new(0.0, 2.0)),
        q_range: Some(Interval::new(0.05, 0.95)),
        aux_range: None,
        constraint: Constraint::None,
        min_gap: 0.0,
    }
}

/// Certifies the main theorem on [`thm_main_explore_domain`] with its
/// hypotheses switched off. Violations here are findings, not failures of
/// the library.
pub fn explore_thm_main(
    samples: usize,
    seed: u64,
    ctx: &BoundsContext,
    opts: &CertifyOptions,
) -> Result<CertificateReport> {
    let batch = sample(&thm_main_explore_domain(), seed, samples, ctx)?;
    let opts = CertifyOptions { force: true, ..*opts };
    Ok(certify_labeled(
        "thm_main_explore",
        InequalityId::ThmMain,
        &batch,
        ctx,
        &opts,
    ))
}
