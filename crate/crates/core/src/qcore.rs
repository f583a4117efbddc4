//! q-arithmetic primitives and the convergent-series evaluator shared by the
//! q-special functions.
//!
//! Every power `q^s` goes through [`QParam::pow`] (`exp(s ln q)`) and every
//! `1 - q^s` through [`QParam::one_minus_pow`] (`-expm1(s ln q)`), so all
//! modules see bit-identical values for the same exponent.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerances::{DEFAULT_ABS_TOL, DEFAULT_MAX_TERMS, DEFAULT_REL_TOL, Q_MAX};

/// The deformation parameter, `0 < q < 1 - 1e-12`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QParam {
    q: f64,
    ln_q: f64,
    one_minus_q: f64,
}

impl QParam {
    pub fn new(q: f64) -> Result<Self> {
        if !(q > 0.0 && q < Q_MAX) {
            return Err(Error::InvalidQ(q));
        }
        Ok(Self {
            q,
            ln_q: q.ln(),
            one_minus_q: 1.0 - q,
        })
    }

    #[inline]
    pub fn get(&self) -> f64 {
        self.q
    }

    #[inline]
    pub fn ln_q(&self) -> f64 {
        self.ln_q
    }

    #[inline]
    pub fn one_minus_q(&self) -> f64 {
        self.one_minus_q
    }

    /// `q^s`.
    #[inline]
    pub fn pow(&self, s: f64) -> f64 {
        (s * self.ln_q).exp()
    }

    /// `1 - q^s`, accurate when `q^s` is close to 1.
    #[inline]
    pub fn one_minus_pow(&self, s: f64) -> f64 {
        -(s * self.ln_q).exp_m1()
    }

    /// `ln(1 - q^s)` for `s > 0`.
    #[inline]
    pub fn ln_one_minus_pow(&self, s: f64) -> f64 {
        let p = self.pow(s);
        if p < 0.5 {
            (-p).ln_1p()
        } else {
            self.one_minus_pow(s).ln()
        }
    }

    /// Bit pattern of `q`, used as a cache key.
    pub fn key(&self) -> u64 {
        self.q.to_bits()
    }
}

/// Precision contract for series evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub rel_tol: f64,
    /// Underflow floor for the stopping rule.
    pub abs_tol: f64,
    pub max_terms: u64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            rel_tol: DEFAULT_REL_TOL,
            abs_tol: DEFAULT_ABS_TOL,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }
}

impl EvalConfig {
    pub fn new(rel_tol: f64, abs_tol: f64, max_terms: u64) -> Result<Self> {
        let cfg = Self {
            rel_tol,
            abs_tol,
            max_terms,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_max_terms(self, max_terms: u64) -> Result<Self> {
        Self::new(self.rel_tol, self.abs_tol, max_terms)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "rel_tol must be > 0, got {}",
                self.rel_tol
            )));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "abs_tol must be >= 0, got {}",
                self.abs_tol
            )));
        }
        if self.max_terms < 1 {
            return Err(Error::InvalidConfig("max_terms must be >= 1".into()));
        }
        Ok(())
    }
}

/// A computed value with a bound on its truncation error.
///
/// `error_estimate` bounds the omitted series tail under the geometric tail
/// model; floating-point rounding is not included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub value: f64,
    pub error_estimate: f64,
    pub terms_used: u64,
}

impl Evaluation {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            error_estimate: 0.0,
            terms_used: 0,
        }
    }
}

/// `[x]_q = (1 - q^x) / (1 - q)`.
pub fn q_bracket(x: f64, q: QParam) -> f64 {
    q.one_minus_pow(x) / q.one_minus_q()
}

/// `d/dx [x]_q = -(ln q) q^x / (1 - q)`; positive for every real `x`.
pub fn q_bracket_derivative(x: f64, q: QParam) -> f64 {
    -q.ln_q() * q.pow(x) / q.one_minus_q()
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`, with `[0]_q! = 1`.
pub fn q_factorial(n: u64, q: QParam) -> Result<f64> {
    let mut acc = 1.0_f64;
    for k in 1..=n {
        acc *= q_bracket(k as f64, q);
        if !acc.is_finite() {
            return Err(Error::Overflow(format!("[{n}]_q! with q = {}", q.get())));
        }
    }
    Ok(acc)
}

/// Neumaier's compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.carry += (self.sum - t) + v;
        } else {
            self.carry += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::new();
        for v in iter {
            s.add(v);
        }
        s
    }
}

/// Sums `term(start) + term(start + 1) + ...` under a geometric tail model.
///
/// The caller guarantees `|term(n + 1)| <= decay_ratio * |term(n)|` for all
/// `n >= start`. After adding `term(N)` the tail is bounded by
/// `|term(N + 1)| / (1 - decay_ratio)`; summation stops at the first `N`
/// where that bound is at most `max(rel_tol * |S_N|, abs_tol)`.
pub fn sum_geometric_decay<F>(term: F, decay_ratio: f64, start: u64, cfg: &EvalConfig) -> Result<Evaluation>
where
    F: FnMut(u64) -> f64,
{
    sum_geometric_decay_from(term, decay_ratio, start, start, cfg)
}

/// Like [`sum_geometric_decay`], for series whose terms are only dominated by
/// `decay_ratio` from index `dominated_from` on. The stopping rule is not
/// consulted before the term at `dominated_from` has been added.
pub fn sum_geometric_decay_from<F>(
    mut term: F,
    decay_ratio: f64,
    start: u64,
    dominated_from: u64,
    cfg: &EvalConfig,
) -> Result<Evaluation>
where
    F: FnMut(u64) -> f64,
{
    if !(0.0..1.0).contains(&decay_ratio) {
        return Err(Error::InvalidConfig(format!(
            "decay ratio {decay_ratio} outside [0, 1)"
        )));
    }
    let tail_factor = 1.0 / (1.0 - decay_ratio);
    let mut sum = CompensatedSum::new();
    let mut n = start;
    let mut current = term(n);
    let mut terms_used = 0_u64;
    loop {
        sum.add(current);
        terms_used += 1;
        let next = term(n + 1);
        let estimate = next.abs() * tail_factor;
        let partial = sum.value();
        if !partial.is_finite() || !estimate.is_finite() {
            return Err(Error::Overflow(format!(
                "series diverged to {partial} after {terms_used} terms"
            )));
        }
        if n >= dominated_from && estimate <= (cfg.rel_tol * partial.abs()).max(cfg.abs_tol) {
            return Ok(Evaluation {
                value: partial,
                error_estimate: estimate,
                terms_used,
            });
        }
        if terms_used >= cfg.max_terms {
            return Err(Error::NonConvergence {
                partial,
                error_estimate: estimate,
                terms_used,
            });
        }
        n += 1;
        current = next;
    }
}
