//! The q-special functions: ln Γ_q, Γ_q, ψ_q, the q-polygamma functions,
//! the q-Euler constant and the positive root of ψ_q.
//!
//! Γ_q is only ever computed through ln Γ_q, from the product
//!
//! ```text
//! Γ_q(x) = (1 - q)^(1 - x) ∏_{n>=0} (1 - q^(n+1)) / (1 - q^(n+x))
//! ```
//!
//! ψ_q uses `-ln(1 - q) + ln q Σ_{n>=1} q^(nx) / (1 - q^n)`, whose terms
//! decay with ratio `q^x`, and ψ_q^(m) is the m-th termwise derivative of
//! that series. Arguments `x <= 0` are rejected everywhere.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{sum_geometric_decay, sum_geometric_decay_from, EvalConfig, Evaluation, QParam};
use crate::tolerances::{ROOT_BRACKET_WIDTH, ROOT_RESIDUAL, ROOT_SEARCH_MAX, ROOT_SEARCH_MIN};

/// Largest `ln Γ_q` that still exponentiates to a finite f64.
const LN_MAX: f64 = 709.782_712_893_384;

fn check_positive(x: f64, what: &str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{what} requires x > 0, got {x}")))
    }
}

/// `ln Γ_q(x)` for `x > 0`.
pub fn ln_gamma_q(x: f64, q: QParam, cfg: &EvalConfig) -> Result<Evaluation> {
    check_positive(x, "ln_gamma_q")?;
    // The k-th power-series component of each term shrinks by q^k per step
    // and all components share a sign, so the terms decay with ratio q.
    let series = sum_geometric_decay(
        |n| {
            let n = n as f64;
            q.ln_one_minus_pow(n + 1.0) - q.ln_one_minus_pow(n + x)
        },
        q.get(),
        0,
        cfg,
    )?;
    let prefactor = (1.0 - x) * (-q.get()).ln_1p();
    Ok(Evaluation {
        value: prefactor + series.value,
        ..series
    })
}

/// `Γ_q(x)` for `x > 0`.
pub fn gamma_q(x: f64, q: QParam, cfg: &EvalConfig) -> Result<Evaluation> {
    let ln = ln_gamma_q(x, q, cfg)?;
    if ln.value > LN_MAX {
        return Err(Error::Overflow(format!(
            "Gamma_q({x}) with q = {} exceeds f64 range (ln value {})",
            q.get(),
            ln.value
        )));
    }
    let value = ln.value.exp();
    Ok(Evaluation {
        value,
        error_estimate: value * ln.error_estimate.exp_m1(),
        terms_used: ln.terms_used,
    })
}

/// `ψ_q(x)`, the logarithmic derivative of Γ_q.
pub fn psi_q(x: f64, q: QParam, cfg: &EvalConfig) -> Result<Evaluation> {
    check_positive(x, "psi_q")?;
    let series = sum_geometric_decay(
        |n| {
            let n = n as f64;
            q.pow(n * x) / q.one_minus_pow(n)
        },
        q.pow(x),
        1,
        cfg,
    )?;
    let ln_q = q.ln_q();
    Ok(Evaluation {
        value: -(-q.get()).ln_1p() + ln_q * series.value,
        error_estimate: ln_q.abs() * series.error_estimate,
        terms_used: series.terms_used,
    })
}

/// `ψ_q^(m)(x) = (ln q)^(m+1) Σ_{n>=1} n^m q^(nx) / (1 - q^n)` for `m >= 1`.
pub fn psi_q_m(m: u32, x: f64, q: QParam, cfg: &EvalConfig) -> Result<Evaluation> {
    if m == 0 {
        return psi_q(x, q, cfg);
    }
    check_positive(x, "psi_q_m")?;
    let mf = f64::from(m);
    let ln_q = q.ln_q();
    // term(n+1)/term(n) <= (1 + 1/n)^m q^x, which is at most q^(x/2) once
    // n >= 2m / (x |ln q|).
    let dominated_from = (2.0 * mf / (x * -ln_q)).ceil().max(1.0);
    if dominated_from > cfg.max_terms as f64 {
        return Err(Error::NonConvergence {
            partial: f64::NAN,
            error_estimate: f64::INFINITY,
            terms_used: 0,
        });
    }
    let ratio = ((1.0 + 1.0 / dominated_from).ln() * mf + x * ln_q).exp();
    let series = sum_geometric_decay_from(
        |n| {
            let n = n as f64;
            (mf * n.ln() + n * x * ln_q).exp() / q.one_minus_pow(n)
        },
        ratio,
        1,
        dominated_from as u64,
        cfg,
    )?;
    let scale = ln_q.powi(m as i32 + 1);
    Ok(Evaluation {
        value: scale * series.value,
        error_estimate: scale.abs() * series.error_estimate,
        terms_used: series.terms_used,
    })
}

/// `γ_q = -ψ_q(1)`.
pub fn euler_gamma_q(q: QParam, cfg: &EvalConfig) -> Result<Evaluation> {
    let psi = psi_q(1.0, q, cfg)?;
    Ok(Evaluation {
        value: -psi.value,
        ..psi
    })
}

/// The positive root of ψ_q with the bracket that certified it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsiRoot {
    pub q: f64,
    pub root: f64,
    pub bracket_low: f64,
    pub bracket_high: f64,
    /// `ψ_q(root)`.
    pub residual: f64,
}

/// Locates the unique positive root of ψ_q by bracketing from `[1, 2]` and
/// bisecting. ψ_q is increasing, so a sign change brackets the root.
pub fn psi_q_root(q: QParam, cfg: &EvalConfig) -> Result<PsiRoot> {
    let psi = |x: f64| psi_q(x, q, cfg).map(|e| e.value);

    let (mut lo, mut hi) = (1.0_f64, 2.0_f64);
    let mut f_lo = psi(lo)?;
    while f_lo >= 0.0 {
        hi = lo;
        lo *= 0.5;
        if lo < ROOT_SEARCH_MIN {
            return Err(Error::BracketFailure { q: q.get() });
        }
        f_lo = psi(lo)?;
    }
    let mut f_hi = psi(hi)?;
    while f_hi <= 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > ROOT_SEARCH_MAX {
            return Err(Error::BracketFailure { q: q.get() });
        }
        f_hi = psi(hi)?;
    }

    while hi - lo > ROOT_BRACKET_WIDTH {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = psi(mid)?;
        if f_mid < 0.0 {
            lo = mid;
        } else if f_mid > 0.0 {
            hi = mid;
        } else {
            return Ok(PsiRoot {
                q: q.get(),
                root: mid,
                bracket_low: lo,
                bracket_high: hi,
                residual: 0.0,
            });
        }
    }

    let root = lo + 0.5 * (hi - lo);
    let residual = psi(root)?;
    if residual.abs() > ROOT_RESIDUAL {
        return Err(Error::NonConvergence {
            partial: root,
            error_estimate: residual.abs(),
            terms_used: 0,
        });
    }
    Ok(PsiRoot {
        q: q.get(),
        root,
        bracket_low: lo,
        bracket_high: hi,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{q_bracket, q_factorial};
    use crate::tolerances::{FD_STEP_Q, FD_TOL_Q};
    use proptest::prelude::*;

    fn q(v: f64) -> QParam {
        QParam::new(v).unwrap()
    }

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    // Reference values below come from tools/reference_values.py (40-digit
    // brute-force products and series).
    const GAMMA_Q_HALF_HALF: f64 = 1.572_032_725_786_323_9;
    const PSI_Q_ONE_HALF: f64 = -0.420_529_034_356_045_78;
    const PSI_Q_TWO_HALF: f64 = 0.272_618_146_203_899_53;
    const PSI1_Q_TWO_HALF: f64 = 0.357_473_324_311_775_99;
    const PSI2_Q_TWO_HALF: f64 = -0.366_089_064_136_732_43;
    const ROOT_Q_TENTH: f64 = 1.401_308_730_741_998_1;
    const ROOT_Q_HALF: f64 = 1.446_362_715_609_816_9;

    #[test]
    fn ln_gamma_q_at_one_and_two() {
        for qv in [0.05, 0.3, 0.5, 0.9, 0.99] {
            assert_eq!(ln_gamma_q(1.0, q(qv), &cfg()).unwrap().value, 0.0);
            assert!(ln_gamma_q(2.0, q(qv), &cfg()).unwrap().value.abs() < 1e-14, "q={qv}");
        }
    }

    #[test]
    fn ln_gamma_q_at_three() {
        let v = ln_gamma_q(3.0, q(0.5), &cfg()).unwrap().value;
        assert!((v - 1.5_f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn gamma_q_examples() {
        assert_eq!(gamma_q(1.0, q(0.25), &cfg()).unwrap().value, 1.0);
        assert!(rel(gamma_q(4.0, q(0.5), &cfg()).unwrap().value, 2.625) < 1e-14);
        assert!(rel(gamma_q(0.5, q(0.5), &cfg()).unwrap().value, GAMMA_Q_HALF_HALF) < 1e-12);
    }

    #[test]
    fn nonpositive_arguments_are_rejected() {
        for x in [0.0, -1.0, -0.5, f64::NAN] {
            assert!(matches!(ln_gamma_q(x, q(0.5), &cfg()), Err(Error::Domain(_))));
            assert!(matches!(gamma_q(x, q(0.5), &cfg()), Err(Error::Domain(_))));
            assert!(matches!(psi_q(x, q(0.5), &cfg()), Err(Error::Domain(_))));
            assert!(matches!(psi_q_m(2, x, q(0.5), &cfg()), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn gamma_q_overflow() {
        let err = gamma_q(5000.0, q(0.999), &cfg()).unwrap_err();
        assert!(matches!(err, Error::Overflow(_)));
    }

    #[test]
    fn psi_q_examples() {
        let p1 = psi_q(1.0, q(0.5), &cfg()).unwrap();
        assert!((p1.value - PSI_Q_ONE_HALF).abs() < 1e-14);
        let p2 = psi_q(2.0, q(0.5), &cfg()).unwrap();
        assert!((p2.value - PSI_Q_TWO_HALF).abs() < 1e-14);
        assert!((p2.value - p1.value - std::f64::consts::LN_2).abs() < 1e-14);
        // x -> infinity leaves only -ln(1 - q)
        let far = psi_q(200.0, q(0.5), &cfg()).unwrap();
        assert!((far.value - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn psi_q_m_examples() {
        let m1 = psi_q_m(1, 2.0, q(0.5), &cfg()).unwrap();
        assert!(rel(m1.value, PSI1_Q_TWO_HALF) < 1e-13);
        let m2 = psi_q_m(2, 2.0, q(0.5), &cfg()).unwrap();
        assert!(rel(m2.value, PSI2_Q_TWO_HALF) < 1e-13);
        let fd = (psi_q(2.0 + FD_STEP_Q, q(0.5), &cfg()).unwrap().value
            - psi_q(2.0 - FD_STEP_Q, q(0.5), &cfg()).unwrap().value)
            / (2.0 * FD_STEP_Q);
        assert!(rel(fd, m1.value) < FD_TOL_Q);
        assert_eq!(
            psi_q_m(0, 2.0, q(0.5), &cfg()).unwrap(),
            psi_q(2.0, q(0.5), &cfg()).unwrap()
        );
    }

    #[test]
    fn euler_gamma_q_examples() {
        let g = euler_gamma_q(q(0.5), &cfg()).unwrap();
        assert!((g.value + PSI_Q_ONE_HALF).abs() < 1e-14);
        assert_eq!(g.value + psi_q(1.0, q(0.5), &cfg()).unwrap().value, 0.0);
        let near_one = euler_gamma_q(q(0.999), &cfg()).unwrap();
        assert!((near_one.value - 0.577_215_664).abs() <= 1e-2);
    }

    #[test]
    fn integer_values_match_q_factorial() {
        for qv in [0.1, 0.3, 0.5, 0.7, 0.9] {
            for n in 0..=20u64 {
                let g = gamma_q(n as f64 + 1.0, q(qv), &cfg()).unwrap().value;
                let f = q_factorial(n, q(qv)).unwrap();
                assert!(rel(g, f) <= 1e-12, "n={n} q={qv} {g} vs {f}");
            }
        }
    }

    #[test]
    fn derivative_chain_matches_finite_differences() {
        let h = FD_STEP_Q;
        for qv in [0.1, 0.5, 0.9] {
            let qp = q(qv);
            for i in 0..20 {
                let x = 0.3 + 1.1 * i as f64;
                let lg = |t| ln_gamma_q(t, qp, &cfg()).unwrap().value;
                let ps = |t| psi_q(t, qp, &cfg()).unwrap().value;
                let p1 = |t| psi_q_m(1, t, qp, &cfg()).unwrap().value;
                let fd0 = (lg(x + h) - lg(x - h)) / (2.0 * h);
                let fd1 = (ps(x + h) - ps(x - h)) / (2.0 * h);
                let fd2 = (p1(x + h) - p1(x - h)) / (2.0 * h);
                let exact = [ps(x), p1(x), psi_q_m(2, x, qp, &cfg()).unwrap().value];
                for (fd, ex) in [fd0, fd1, fd2].into_iter().zip(exact) {
                    assert!(
                        (fd - ex).abs() / ex.abs().max(1.0) <= FD_TOL_Q,
                        "x={x} q={qv} fd={fd} exact={ex}"
                    );
                }
            }
        }
    }

    #[test]
    fn polygamma_sign_alternates() {
        for m in 1..=6u32 {
            for (x, qv) in [(0.3, 0.2), (1.0, 0.5), (7.5, 0.9)] {
                let v = psi_q_m(m, x, q(qv), &cfg()).unwrap().value;
                if m % 2 == 1 {
                    assert!(v > 0.0, "m={m} x={x} q={qv}");
                } else {
                    assert!(v < 0.0, "m={m} x={x} q={qv}");
                }
            }
        }
    }

    #[test]
    fn root_examples() {
        let r = psi_q_root(q(0.5), &cfg()).unwrap();
        assert!(r.root > 1.0 && r.root < 2.0);
        assert!((r.root - ROOT_Q_HALF).abs() < 1e-11);
        let r = psi_q_root(q(0.1), &cfg()).unwrap();
        assert!((r.root - ROOT_Q_TENTH).abs() < 1e-11);
    }

    #[test]
    fn root_invariants_across_q() {
        for i in 1..=19 {
            let qp = q(0.05 * i as f64);
            let r = psi_q_root(qp, &cfg()).unwrap();
            assert!(r.bracket_low < r.root && r.root < r.bracket_high);
            assert!(psi_q(r.bracket_low, qp, &cfg()).unwrap().value < 0.0);
            assert!(psi_q(r.bracket_high, qp, &cfg()).unwrap().value > 0.0);
            assert!(r.residual.abs() <= ROOT_RESIDUAL);
            assert!(psi_q(r.root - 1e-6, qp, &cfg()).unwrap().value < 0.0);
            assert!(psi_q(r.root + 1e-6, qp, &cfg()).unwrap().value > 0.0);
            if euler_gamma_q(qp, &cfg()).unwrap().value > 0.0 {
                assert!(r.root > 1.0);
            }
        }
    }

    #[test]
    fn non_convergence_propagates() {
        let tight = EvalConfig::default().with_max_terms(5).unwrap();
        assert!(matches!(
            psi_q(0.01, q(0.99), &tight),
            Err(Error::NonConvergence { .. })
        ));
        assert!(matches!(
            ln_gamma_q(0.5, q(0.99), &tight),
            Err(Error::NonConvergence { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(512))]

        #[test]
        fn functional_equation(x in 1e-3f64..50.0, qv in 0.05f64..0.95) {
            let qp = q(qv);
            let next = ln_gamma_q(x + 1.0, qp, &cfg()).unwrap().value;
            let here = ln_gamma_q(x, qp, &cfg()).unwrap().value;
            let gap = next - here - q_bracket(x, qp).ln();
            prop_assert!(gap.abs() <= 1e-10 * next.abs().max(1.0), "gap={}", gap);
        }

        #[test]
        fn psi_q_is_increasing(a in 0.05f64..40.0, b in 0.05f64..40.0, qv in 0.05f64..0.95) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let qp = q(qv);
            prop_assert!(psi_q(lo, qp, &cfg()).unwrap().value <= psi_q(hi, qp, &cfg()).unwrap().value + 1e-12);
        }
    }
}
