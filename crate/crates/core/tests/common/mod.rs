//! Extended-precision brute-force partial sums used as an independent
//! reference for the double-precision evaluators.
//!
//! Γ_q is taken from the infinite product rather than the log-sum the
//! library uses; all arithmetic is done in 192-bit binary floating point.

#![allow(dead_code)]

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

const P: usize = 192;
const RM: RoundingMode = RoundingMode::ToEven;

pub struct Oracle {
    cc: Consts,
}

impl Default for Oracle {
    fn default() -> Self {
        Self::new()
    }
}

fn big(v: f64) -> BigFloat {
    BigFloat::from_f64(v, P)
}

impl Oracle {
    pub fn new() -> Self {
        Self {
            cc: Consts::new().expect("constants cache"),
        }
    }

    fn nearest_f64(&mut self, v: &BigFloat) -> f64 {
        let s = v.format(Radix::Dec, RM, &mut self.cc).expect("decimal format");
        s.parse().unwrap_or_else(|_| panic!("unparsable oracle value {s}"))
    }

    fn ln(&mut self, v: &BigFloat) -> BigFloat {
        v.ln(P, RM, &mut self.cc)
    }

    fn exp(&mut self, v: &BigFloat) -> BigFloat {
        v.exp(P, RM, &mut self.cc)
    }

    /// `(1 - q)^(1 - x) ∏_{n=0}^{terms-1} (1 - q^(n+1)) / (1 - q^(n+x))`.
    pub fn gamma_q(&mut self, x: f64, q: f64, terms: u64) -> f64 {
        let one = big(1.0);
        let bq = big(q);
        let ln_q = self.ln(&bq);
        let mut q_n1 = bq.clone();
        let mut q_nx = self.exp(&big(x).mul(&ln_q, P, RM));
        let mut prod = one.clone();
        for _ in 0..terms {
            let num = one.sub(&q_n1, P, RM);
            let den = one.sub(&q_nx, P, RM);
            prod = prod.mul(&num, P, RM).div(&den, P, RM);
            q_n1 = q_n1.mul(&bq, P, RM);
            q_nx = q_nx.mul(&bq, P, RM);
        }
        let ln_1mq = self.ln(&one.sub(&bq, P, RM));
        let pre = self.exp(&one.sub(&big(x), P, RM).mul(&ln_1mq, P, RM));
        self.nearest_f64(&prod.mul(&pre, P, RM))
    }

    /// `(ln q)^(m+1) Σ_{n=1}^{terms} n^m q^(n x) / (1 - q^n)`, plus
    /// `-ln(1 - q)` when `m = 0`.
    pub fn psi_q_m(&mut self, m: u32, x: f64, q: f64, terms: u64) -> f64 {
        let one = big(1.0);
        let bq = big(q);
        let ln_q = self.ln(&bq);
        let q_x = self.exp(&big(x).mul(&ln_q, P, RM));
        let (mut q_n, mut q_nx) = (bq.clone(), q_x.clone());
        let mut sum = big(0.0);
        for n in 1..=terms {
            let mut term = q_nx.div(&one.sub(&q_n, P, RM), P, RM);
            let bn = BigFloat::from_u64(n, P);
            for _ in 0..m {
                term = term.mul(&bn, P, RM);
            }
            sum = sum.add(&term, P, RM);
            q_n = q_n.mul(&bq, P, RM);
            q_nx = q_nx.mul(&q_x, P, RM);
        }
        let mut scale = ln_q.clone();
        for _ in 0..m {
            scale = scale.mul(&ln_q, P, RM);
        }
        let mut v = sum.mul(&scale, P, RM);
        if m == 0 {
            let ln_1mq = self.ln(&one.sub(&bq, P, RM));
            v = v.sub(&ln_1mq, P, RM);
        }
        self.nearest_f64(&v)
    }

    pub fn psi_q(&mut self, x: f64, q: f64, terms: u64) -> f64 {
        self.psi_q_m(0, x, q, terms)
    }
}
