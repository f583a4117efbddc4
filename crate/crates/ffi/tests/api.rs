#![allow(clippy::excessive_precision)]

use std::ffi::{CStr, CString};
use std::ptr;

use qgamma_ffi::*;

struct Ctx(*mut QgContext);

impl Ctx {
    fn new(max_terms: u64) -> Self {
        let mut p = ptr::null_mut();
        assert_eq!(unsafe { qg_context_new(max_terms, &mut p) }, QgStatus::Ok);
        assert!(!p.is_null());
        Ctx(p)
    }

    fn last_error(&self) -> String {
        unsafe { CStr::from_ptr(qg_last_error(self.0)) }
            .to_str()
            .unwrap()
            .to_string()
    }
}

impl Drop for Ctx {
    fn drop(&mut self) {
        unsafe { qg_context_free(self.0) }
    }
}

const NAN: f64 = f64::NAN;

#[test]
fn evaluations() {
    let c = Ctx::new(0);
    let mut ev = QgEvaluation::default();
    unsafe {
        assert_eq!(qg_gamma_q(c.0, 3.0, 0.5, &mut ev), QgStatus::Ok);
        assert!((ev.value - 1.5).abs() <= 1e-14);
        assert!(ev.terms_used > 0);
        assert_eq!(qg_ln_gamma_q(c.0, 1.0, 0.5, &mut ev), QgStatus::Ok);
        assert!(ev.value.abs() <= 1e-15);
        assert_eq!(qg_psi_q(c.0, 1.0, 0.5, &mut ev), QgStatus::Ok);
        assert!((ev.value + 0.42052903435604578).abs() <= 1e-14);
        assert_eq!(qg_psi_q_m(c.0, 1, 2.0, 0.5, &mut ev), QgStatus::Ok);
        assert!((ev.value - 0.35747332431177599).abs() <= 1e-14);
        assert_eq!(qg_euler_gamma_q(c.0, 0.5, &mut ev), QgStatus::Ok);
        assert!((ev.value - 0.42052903435604578).abs() <= 1e-14);
    }
    assert_eq!(c.last_error(), "");
}

#[test]
fn error_codes_and_messages() {
    let c = Ctx::new(0);
    let mut ev = QgEvaluation::default();
    unsafe {
        assert_eq!(qg_gamma_q(c.0, -1.0, 0.5, &mut ev), QgStatus::Domain);
        assert!(!c.last_error().is_empty());
        assert_eq!(qg_gamma_q(c.0, 1.0, 1.5, &mut ev), QgStatus::InvalidQ);
        assert_eq!(qg_gamma_q(c.0, 5000.0, 0.999, &mut ev), QgStatus::Overflow);
        assert_eq!(qg_gamma_q(c.0, 1.0, 0.5, ptr::null_mut()), QgStatus::InvalidArgument);
        assert_eq!(
            qg_gamma_q(ptr::null_mut(), 1.0, 0.5, &mut ev),
            QgStatus::InvalidArgument
        );
        assert_eq!(qg_gamma_q(c.0, 2.0, 0.5, &mut ev), QgStatus::Ok);
    }
    assert_eq!(c.last_error(), "", "success clears the message");

    let tight = Ctx::new(3);
    unsafe {
        assert_eq!(qg_psi_q(tight.0, 1.0, 0.9, &mut ev), QgStatus::NonConvergence);
    }
    assert!(tight.last_error().contains("did not converge"));
}

#[test]
fn roots() {
    let c = Ctx::new(0);
    let mut r = QgRoot::default();
    unsafe {
        assert_eq!(qg_psi_q_root(c.0, 0.5, &mut r), QgStatus::Ok);
        assert!(r.root > 1.0 && r.root < 2.0);
        assert!(r.residual.abs() <= 1e-10);
        assert_eq!(qg_psi_q_root(c.0, 1.5, &mut r), QgStatus::InvalidQ);
        let tight = Ctx::new(2);
        assert_eq!(qg_psi_q_root(tight.0, 0.5, &mut r), QgStatus::NonConvergence);
    }
}

#[test]
fn bounds() {
    let c = Ctx::new(0);
    let mut bp = QgBoundPair::default();
    let mvt = CString::new("thm_mvt").unwrap();
    let alpha = CString::new("thm_alpha").unwrap();
    let bogus = CString::new("nope").unwrap();
    unsafe {
        let p = QgPoint {
            x: 2.0,
            y: 1.0,
            q: 0.5,
            aux: NAN,
        };
        assert_eq!(qg_bounds(c.0, mvt.as_ptr(), p, false, &mut bp), QgStatus::Ok);
        assert!(bp.satisfied && bp.strict);
        assert!(bp.lower < bp.ratio && bp.ratio < bp.upper);

        let swapped = QgPoint { x: 1.0, y: 2.0, ..p };
        assert_eq!(qg_bounds(c.0, mvt.as_ptr(), swapped, false, &mut bp), QgStatus::Domain);

        let collapse = QgPoint {
            x: 1.0,
            y: 1.0,
            q: 0.5,
            aux: 5.0,
        };
        assert_eq!(qg_bounds(c.0, alpha.as_ptr(), collapse, false, &mut bp), QgStatus::Ok);
        assert_eq!((bp.lower, bp.ratio, bp.upper), (1.0, 1.0, 1.0));

        let low_alpha = QgPoint { aux: 0.1, ..collapse };
        assert_eq!(
            qg_bounds(c.0, alpha.as_ptr(), low_alpha, false, &mut bp),
            QgStatus::AlphaBelowRoot
        );
        assert_eq!(qg_bounds(c.0, alpha.as_ptr(), low_alpha, true, &mut bp), QgStatus::Ok);

        assert_eq!(qg_bounds(c.0, bogus.as_ptr(), p, false, &mut bp), QgStatus::Domain);
        assert_eq!(
            qg_bounds(c.0, ptr::null(), p, false, &mut bp),
            QgStatus::InvalidArgument
        );
    }
}

#[test]
fn verify_reports() {
    let c = Ctx::new(0);
    let mvt = CString::new("thm_mvt").unwrap();
    let all = CString::new("all").unwrap();
    unsafe {
        let mut r = ptr::null_mut();
        assert_eq!(qg_verify(c.0, mvt.as_ptr(), 100, 42, &mut r), QgStatus::Ok);
        assert_eq!(qg_report_len(r), 1);
        assert!(qg_report_all_passed(r));
        assert_eq!(qg_report_failures(r), 0);
        let json = qg_report_json(r);
        let text = CStr::from_ptr(json).to_str().unwrap().to_string();
        qg_string_free(json);
        qg_report_free(r);
        assert!(text.trim_start().starts_with('['));
        assert!(text.contains("\"inequality_id\": \"thm_mvt\""));
        assert!(text.contains("\"wall_time_s\": 0.0"));

        let mut r = ptr::null_mut();
        assert_eq!(qg_verify(c.0, all.as_ptr(), 20, 1, &mut r), QgStatus::Ok);
        assert_eq!(qg_report_len(r), 14);
        assert!(qg_report_all_passed(r));
        qg_report_free(r);

        let mut r = ptr::null_mut();
        let bogus = CString::new("nope").unwrap();
        assert_eq!(qg_verify(c.0, bogus.as_ptr(), 20, 1, &mut r), QgStatus::Domain);
        assert!(r.is_null());
        assert_eq!(qg_verify(c.0, mvt.as_ptr(), 0, 1, &mut r), QgStatus::InvalidConfig);
    }
}

#[test]
fn null_handles_are_tolerated() {
    unsafe {
        qg_context_free(ptr::null_mut());
        qg_report_free(ptr::null_mut());
        qg_string_free(ptr::null_mut());
        assert_eq!(qg_report_len(ptr::null()), 0);
        assert!(!qg_report_all_passed(ptr::null()));
        assert!(qg_report_json(ptr::null()).is_null());
        assert_eq!(CStr::from_ptr(qg_last_error(ptr::null())).to_bytes(), b"");
        assert_eq!(qg_context_new(0, ptr::null_mut()), QgStatus::InvalidArgument);
        assert_eq!(
            CStr::from_ptr(qg_version()).to_str().unwrap(),
            env!("CARGO_PKG_VERSION")
        );
    }
}
