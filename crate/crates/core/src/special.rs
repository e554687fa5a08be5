//! Generalized Laguerre polynomials and log-factorials.

use crate::error::{Error, Result};

/// Largest Laguerre degree [`laguerre`] will evaluate.
pub const LAGUERRE_DEGREE_CAP: usize = 4096;

/// One evaluated `L_n^m(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreValue {
    pub n: usize,
    pub m: usize,
    pub x: f64,
    pub value: f64,
}

/// Walks `L_0^m(x), L_1^m(x), …` with the upward three-term recurrence
///
/// `(n+1) L_{n+1} = (2n+1+m-x) L_n - (n+m) L_{n-1}`
///
/// starting from `L_0 = 1`, `L_1 = 1 + m - x`. The sequence is unbounded;
/// callers impose their own degree limit.
#[derive(Debug, Clone)]
pub struct LaguerreSeq {
    m: usize,
    x: f64,
    n: usize,
    prev: f64,
    cur: f64,
}

impl LaguerreSeq {
    pub fn new(m: usize, x: f64) -> Self {
        Self {
            m,
            x,
            n: 0,
            prev: 0.0,
            cur: 1.0,
        }
    }
}

impl Iterator for LaguerreSeq {
    type Item = LaguerreValue;

    fn next(&mut self) -> Option<LaguerreValue> {
        let item = LaguerreValue {
            n: self.n,
            m: self.m,
            x: self.x,
            value: self.cur,
        };
        let n = self.n as f64;
        let m = self.m as f64;
        let next = if self.n == 0 {
            1.0 + m - self.x
        } else {
            ((2.0 * n + 1.0 + m - self.x) * self.cur - (n + m) * self.prev) / (n + 1.0)
        };
        self.prev = self.cur;
        self.cur = next;
        self.n += 1;
        Some(item)
    }
}

/// `L_n^m(x)` for `x ≥ 0`, by upward recurrence.
pub fn laguerre(n: usize, m: usize, x: f64) -> Result<f64> {
    if n > LAGUERRE_DEGREE_CAP {
        return Err(Error::DegreeCapExceeded {
            degree: n,
            cap: LAGUERRE_DEGREE_CAP,
        });
    }
    if !x.is_finite() {
        return Err(Error::InvalidParameter(format!("Laguerre argument {x} is not finite")));
    }
    Ok(LaguerreSeq::new(m, x)
        .nth(n)
        .map(|v| v.value)
        .expect("LaguerreSeq is infinite"))
}

/// `ln(n!)` by summing `ln k`. Exactly zero for `n ≤ 1`.
pub fn log_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}
