//! Text and JSON renderings of certificate reports.
//!
//! JSON documents carry `schema_version`; the plain form is one `key: value`
//! pair per line followed by one line per recorded failure.

use std::fmt::Write;

use serde::Serialize;

use crate::bounds::Point;
use crate::propcheck::{CertificateReport, Failure, FailureKind};

pub const SCHEMA_VERSION: u32 = 1;

/// Formats with 17 significant digits, enough to re-parse to the same double.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "null".to_string(), fmt_f64)
}

#[derive(Serialize)]
struct FailureDoc<'a> {
    point: &'a Point,
    lower: Option<f64>,
    ratio: Option<f64>,
    upper: Option<f64>,
    kind: FailureKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<&'a str>,
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    schema_version: u32,
    inequality_id: &'a str,
    n_samples: u64,
    n_pass: u64,
    worst_lower_margin: Option<f64>,
    worst_upper_margin: Option<f64>,
    failures: Vec<FailureDoc<'a>>,
    n_numerical_errors: u64,
    wall_time_s: f64,
}

fn doc(r: &CertificateReport) -> ReportDoc<'_> {
    ReportDoc {
        schema_version: SCHEMA_VERSION,
        inequality_id: &r.label,
        n_samples: r.n_samples,
        n_pass: r.n_pass,
        worst_lower_margin: r.worst_lower_margin,
        worst_upper_margin: r.worst_upper_margin,
        failures: r
            .failures
            .iter()
            .map(|f: &Failure| FailureDoc {
                point: &f.point,
                lower: f.lower,
                ratio: f.ratio,
                upper: f.upper,
                kind: f.kind,
                detail: f.detail.as_deref(),
            })
            .collect(),
        n_numerical_errors: r.n_numerical_errors,
        wall_time_s: r.wall_time_s,
    }
}

/// One report as a JSON object.
pub fn report_json(r: &CertificateReport) -> serde_json::Value {
    serde_json::to_value(doc(r)).expect("report serializes")
}

/// A single report renders as an object, several as an array.
pub fn render_json(reports: &[CertificateReport], as_array: bool) -> String {
    let v = if as_array || reports.len() != 1 {
        serde_json::Value::Array(reports.iter().map(report_json).collect())
    } else {
        report_json(&reports[0])
    };
    let mut s = serde_json::to_string_pretty(&v).expect("json value serializes");
    s.push('\n');
    s
}

fn point_fields(p: &Point) -> String {
    let mut s = format!("x={}", fmt_f64(p.x));
    for (k, v) in [("y", p.y), ("q", p.q), ("aux", p.aux)] {
        if let Some(v) = v {
            let _ = write!(s, " {k}={}", fmt_f64(v));
        }
    }
    s
}

/// Plain key-value rendering; reports are separated by a blank line.
pub fn render_plain(reports: &[CertificateReport]) -> String {
    let mut out = String::new();
    for (i, r) in reports.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "schema_version: {SCHEMA_VERSION}");
        let _ = writeln!(out, "inequality_id: {}", r.label);
        let _ = writeln!(out, "status: {}", if r.all_passed() { "pass" } else { "fail" });
        let _ = writeln!(out, "n_samples: {}", r.n_samples);
        let _ = writeln!(out, "n_pass: {}", r.n_pass);
        let _ = writeln!(out, "worst_lower_margin: {}", fmt_opt(r.worst_lower_margin));
        let _ = writeln!(out, "worst_upper_margin: {}", fmt_opt(r.worst_upper_margin));
        let _ = writeln!(out, "n_numerical_errors: {}", r.n_numerical_errors);
        let _ = writeln!(out, "wall_time_s: {:.3}", r.wall_time_s);
        for f in &r.failures {
            let kind = match f.kind {
                FailureKind::Violation => "violation",
                FailureKind::Error => "error",
            };
            let _ = write!(
                out,
                "failure: kind={kind} {} lower={} ratio={} upper={}",
                point_fields(&f.point),
                fmt_opt(f.lower),
                fmt_opt(f.ratio),
                fmt_opt(f.upper)
            );
            if let Some(d) = &f.detail {
                let _ = write!(out, " detail={d:?}");
            }
            out.push('\n');
        }
    }
    out
}
