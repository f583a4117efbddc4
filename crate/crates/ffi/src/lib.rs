//! C ABI for `qgamma`.
//!
//! Every fallible entry point returns a [`QgStatus`] and writes its result
//! through an out pointer. Evaluation state lives in an opaque
//! [`QgContext`], which also keeps the message of the last error raised
//! through it. Certification results come back as an opaque [`QgReport`]
//! that can be rendered to JSON. The header is generated into
//! `include/qgamma.h` by the build script.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qgamma::bounds::{evaluate, BoundsContext, InequalityId, Point};
use qgamma::classical::ClassicalConfig;
use qgamma::propcheck::{run_check, run_suite, CertificateReport, CertifyOptions, CheckId};
use qgamma::qspecial::{euler_gamma_q, gamma_q, ln_gamma_q, psi_q, psi_q_m, psi_q_root};
use qgamma::report::render_json;
use qgamma::{Error, EvalConfig, Evaluation, QParam};

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QgStatus {
    Ok = 0,
    /// A null pointer or a string that is not valid UTF-8.
    InvalidArgument = 1,
    InvalidQ = 2,
    Domain = 3,
    InvalidConfig = 4,
    NonConvergence = 5,
    Overflow = 6,
    BracketFailure = 7,
    AlphaBelowRoot = 8,
    RejectionOverflow = 9,
    /// The library panicked; the context is still usable.
    Internal = 10,
}

impl From<&Error> for QgStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidQ(_) => QgStatus::InvalidQ,
            Error::Domain(_) => QgStatus::Domain,
            Error::InvalidConfig(_) => QgStatus::InvalidConfig,
            Error::NonConvergence { .. } => QgStatus::NonConvergence,
            Error::Overflow(_) => QgStatus::Overflow,
            Error::BracketFailure { .. } => QgStatus::BracketFailure,
            Error::AlphaBelowRoot { .. } => QgStatus::AlphaBelowRoot,
            Error::RejectionOverflow { .. } => QgStatus::RejectionOverflow,
        }
    }
}

/// Opaque evaluation context.
pub struct QgContext {
    inner: BoundsContext,
    last_error: CString,
}

/// Opaque list of certificate reports.
pub struct QgReport {
    reports: Vec<CertificateReport>,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct QgEvaluation {
    pub value: f64,
    pub error_estimate: f64,
    pub terms_used: u64,
}

impl From<Evaluation> for QgEvaluation {
    fn from(e: Evaluation) -> Self {
        Self {
            value: e.value,
            error_estimate: e.error_estimate,
            terms_used: e.terms_used,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct QgRoot {
    pub root: f64,
    pub bracket_low: f64,
    pub bracket_high: f64,
    pub residual: f64,
}

/// A point of an inequality. Coordinates the inequality does not use are
/// NaN. `y` holds μ and `aux` holds λ for `cor_mu_lambda`; `aux` holds α
/// for `thm_alpha`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QgPoint {
    pub x: f64,
    pub y: f64,
    pub q: f64,
    pub aux: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct QgBoundPair {
    pub lower: f64,
    pub ratio: f64,
    pub upper: f64,
    pub lower_margin: f64,
    pub upper_margin: f64,
    pub log_lower_margin: f64,
    pub log_upper_margin: f64,
    pub strict: bool,
    pub satisfied: bool,
}

enum Fail {
    Status(QgStatus, String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn bad_arg(msg: &str) -> Fail {
    Fail::Status(QgStatus::InvalidArgument, msg.to_string())
}

fn set_error(ctx: Option<&mut QgContext>, msg: String) {
    if let Some(ctx) = ctx {
        ctx.last_error = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    }
}

/// Runs `f` against the context, storing any error message and mapping
/// panics to [`QgStatus::Internal`].
///
/// # Safety
/// `ctx` must be null or a live pointer from [`qg_context_new`].
unsafe fn with_ctx<F>(ctx: *mut QgContext, f: F) -> QgStatus
where
    F: FnOnce(&QgContext) -> Result<(), Fail>,
{
    let Some(ctx) = ctx.as_mut() else {
        return QgStatus::InvalidArgument;
    };
    let outcome = catch_unwind(AssertUnwindSafe(|| f(ctx)));
    let (status, msg) = match outcome {
        Ok(Ok(())) => {
            ctx.last_error = CString::default();
            return QgStatus::Ok;
        }
        Ok(Err(Fail::Status(s, m))) => (s, m),
        Ok(Err(Fail::Lib(e))) => (QgStatus::from(&e), e.to_string()),
        Err(_) => (QgStatus::Internal, "internal panic".to_string()),
    };
    set_error(Some(ctx), msg);
    status
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(bad_arg("null output pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(bad_arg(&format!("null {what}")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| bad_arg(&format!("{what} is not valid UTF-8")))
}

/// Creates a context. `max_terms = 0` keeps the default series term cap.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn qg_context_new(max_terms: u64, out: *mut *mut QgContext) -> QgStatus {
    if out.is_null() {
        return QgStatus::InvalidArgument;
    }
    out.write(ptr::null_mut());
    let cfg = if max_terms == 0 {
        Ok(EvalConfig::default())
    } else {
        EvalConfig::default().with_max_terms(max_terms)
    };
    match cfg {
        Ok(cfg) => {
            let ctx = QgContext {
                inner: BoundsContext::new(cfg, ClassicalConfig::default()),
                last_error: CString::default(),
            };
            out.write(Box::into_raw(Box::new(ctx)));
            QgStatus::Ok
        }
        Err(e) => QgStatus::from(&e),
    }
}

/// Destroys a context. Null is ignored.
///
/// # Safety
/// `ctx` must be null or a pointer from [`qg_context_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qg_context_free(ctx: *mut QgContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Message of the last failed call on `ctx`, or an empty string. The
/// pointer stays valid until the next call that uses `ctx`.
///
/// # Safety
/// `ctx` must be null or a live context.
#[no_mangle]
pub unsafe extern "C" fn qg_last_error(ctx: *const QgContext) -> *const c_char {
    match ctx.as_ref() {
        Some(ctx) => ctx.last_error.as_ptr(),
        None => c"".as_ptr(),
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

unsafe fn eval_with(
    ctx: *mut QgContext,
    x: f64,
    q: f64,
    out: *mut QgEvaluation,
    f: fn(f64, QParam, &EvalConfig) -> qgamma::Result<Evaluation>,
) -> QgStatus {
    with_ctx(ctx, |c| {
        let ev = f(x, QParam::new(q)?, &c.inner.eval)?;
        write(out, ev.into())
    })
}

/// Γ_q(x).
///
/// # Safety
/// `ctx` must be a live context and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn qg_gamma_q(ctx: *mut QgContext, x: f64, q: f64, out: *mut QgEvaluation) -> QgStatus {
    eval_with(ctx, x, q, out, gamma_q)
}

/// ln Γ_q(x).
///
/// # Safety
/// `ctx` must be a live context and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn qg_ln_gamma_q(ctx: *mut QgContext, x: f64, q: f64, out: *mut QgEvaluation) -> QgStatus {
    eval_with(ctx, x, q, out, ln_gamma_q)
}

/// ψ_q(x).
///
/// # Safety
/// `ctx` must be a live context and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn qg_psi_q(ctx: *mut QgContext, x: f64, q: f64, out: *mut QgEvaluation) -> QgStatus {
    eval_with(ctx, x, q, out, psi_q)
}

/// The m-th derivative of ψ_q at `x`.
///
/// # Safety
/// `ctx` must be a live context and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn qg_psi_q_m(ctx: *mut QgContext, m: u32, x: f64, q: f64, out: *mut QgEvaluation) -> QgStatus {
    with_ctx(ctx, |c| {
        let ev = psi_q_m(m, x, QParam::new(q)?, &c.inner.eval)?;
        write(out, ev.into())
    })
}

/// γ_q = -ψ_q(1).
///
/// # Safety
/// `ctx` must be a live context and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn qg_euler_gamma_q(ctx: *mut QgContext, q: f64, out: *mut QgEvaluation) -> QgStatus {
    with_ctx(ctx, |c| {
        let ev = euler_gamma_q(QParam::new(q)?, &c.inner.eval)?;
        write(out, ev.into())
    })
}

/// The positive root of ψ_q.
///
/// # Safety
/// `ctx` must be a live context and `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn qg_psi_q_root(ctx: *mut QgContext, q: f64, out: *mut QgRoot) -> QgStatus {
    with_ctx(ctx, |c| {
        let r = psi_q_root(QParam::new(q)?, &c.inner.eval)?;
        write(
            out,
            QgRoot {
                root: r.root,
                bracket_low: r.bracket_low,
                bracket_high: r.bracket_high,
                residual: r.residual,
            },
        )
    })
}

fn opt(v: f64) -> Option<f64> {
    (!v.is_nan()).then_some(v)
}

/// Bounds of inequality `ineq` (e.g. `"thm_mvt"`) at `point`. With
/// `force`, the hypotheses of the inequality are not enforced.
///
/// # Safety
/// `ctx` must be a live context, `ineq` a NUL-terminated string and `out`
/// valid for one write.
#[no_mangle]
pub unsafe extern "C" fn qg_bounds(
    ctx: *mut QgContext,
    ineq: *const c_char,
    point: QgPoint,
    force: bool,
    out: *mut QgBoundPair,
) -> QgStatus {
    with_ctx(ctx, |c| {
        let id: InequalityId = read_str(ineq, "inequality id")?.parse()?;
        let p = Point::new(point.x, opt(point.y), opt(point.q), opt(point.aux));
        let bp = evaluate(id, &p, &c.inner, force)?;
        write(
            out,
            QgBoundPair {
                lower: bp.lower,
                ratio: bp.ratio,
                upper: bp.upper,
                lower_margin: bp.lower_margin,
                upper_margin: bp.upper_margin,
                log_lower_margin: bp.log_lower_margin(),
                log_upper_margin: bp.log_upper_margin(),
                strict: bp.strict,
                satisfied: bp.is_satisfied(),
            },
        )
    })
}

/// Certifies `check` (an inequality id, a check name such as
/// `"convexity_f"`, or `"all"`) on `samples` seeded samples. The report is
/// written to `out` and must be released with [`qg_report_free`]. Wall
/// times are reported as 0 so reports are reproducible.
///
/// # Safety
/// `ctx` must be a live context, `check` a NUL-terminated string and `out`
/// valid for one write.
#[no_mangle]
pub unsafe extern "C" fn qg_verify(
    ctx: *mut QgContext,
    check: *const c_char,
    samples: usize,
    seed: u64,
    out: *mut *mut QgReport,
) -> QgStatus {
    if !out.is_null() {
        out.write(ptr::null_mut());
    }
    with_ctx(ctx, |c| {
        let name = read_str(check, "check name")?;
        if out.is_null() {
            return Err(bad_arg("null output pointer"));
        }
        let opts = CertifyOptions {
            record_timing: false,
            ..CertifyOptions::default()
        };
        let reports = if name == "all" {
            run_suite(samples, seed, &c.inner, &opts)?
        } else {
            vec![run_check(name.parse::<CheckId>()?, samples, seed, &c.inner, &opts)?]
        };
        write(out, Box::into_raw(Box::new(QgReport { reports })))
    })
}

/// Number of individual reports (1 for a single check).
///
/// # Safety
/// `report` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn qg_report_len(report: *const QgReport) -> usize {
    report.as_ref().map_or(0, |r| r.reports.len())
}

/// True when every sample of every report passed.
///
/// # Safety
/// `report` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn qg_report_all_passed(report: *const QgReport) -> bool {
    report
        .as_ref()
        .is_some_and(|r| r.reports.iter().all(CertificateReport::all_passed))
}

/// Total number of failed samples over all reports.
///
/// # Safety
/// `report` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn qg_report_failures(report: *const QgReport) -> u64 {
    report
        .as_ref()
        .map_or(0, |r| r.reports.iter().map(CertificateReport::n_failures).sum())
}

/// The report as a JSON array of report objects. Release the string with
/// [`qg_string_free`]. Returns null for a null report.
///
/// # Safety
/// `report` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn qg_report_json(report: *const QgReport) -> *mut c_char {
    match report.as_ref() {
        Some(r) => CString::new(render_json(&r.reports, true)).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// Destroys a report. Null is ignored.
///
/// # Safety
/// `report` must be null or a pointer from [`qg_verify`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qg_report_free(report: *mut QgReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from [`qg_report_json`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
