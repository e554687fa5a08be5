//! Fock-basis amplitudes of nonlinear coherent states and their even/odd
//! superpositions, plus exact ladder-word expectation values.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ladder::{normal_order, Ladder, OperatorSum};
use crate::nonlinearity::{CoefficientLedger, Nonlinearity};
use crate::special::LAGUERRE_DEGREE_CAP;

/// Relative weight `|c_n|² / Σ|c|²` every term past the cut must stay under.
pub const TAIL_THRESHOLD: f64 = 1e-14;
/// Number of terms past the cut that are inspected.
pub const LOOKAHEAD: usize = 10;
pub const DEFAULT_CAP: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    /// The nonlinear coherent state itself.
    Any,
    Even,
    Odd,
}

impl Parity {
    pub fn admits(self, n: usize) -> bool {
        match self {
            Parity::Any => true,
            Parity::Even => n % 2 == 0,
            Parity::Odd => n % 2 == 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    /// Smallest order whose next [`LOOKAHEAD`] terms are all below
    /// [`TAIL_THRESHOLD`], searched up to `cap`.
    Auto { cap: usize },
    /// Keep exactly `0..=n`; still fails if the tail is not negligible.
    Fixed(usize),
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation::Auto { cap: DEFAULT_CAP }
    }
}

/// Normalised amplitudes `c_0..=c_{n_trunc}`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateCoefficients {
    pub alpha: Complex64,
    pub parity: Parity,
    pub coeffs: Vec<Complex64>,
    pub n_trunc: usize,
    /// Largest `|c_n|²` among the inspected dropped terms, relative to the
    /// kept norm.
    pub tail_bound: f64,
    /// Set for the odd state at `α = 0`, which is taken as its `α → 0`
    /// limit `|1⟩`.
    pub degenerate: bool,
}

impl StateCoefficients {
    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn amplitude(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Builds the state `Σ_{n ∈ parity} d_n α^n |n⟩`, normalised.
pub fn build_state(
    parity: Parity,
    alpha: Complex64,
    nl: &Nonlinearity,
    truncation: Truncation,
) -> Result<StateCoefficients> {
    if !alpha.re.is_finite() || !alpha.im.is_finite() {
        return Err(Error::InvalidParameter(format!("alpha must be finite, got {alpha}")));
    }
    let limit = match truncation {
        Truncation::Auto { cap } => cap,
        Truncation::Fixed(n) => n,
    };
    if limit + LOOKAHEAD > LAGUERRE_DEGREE_CAP {
        return Err(Error::DegreeCapExceeded {
            degree: limit + LOOKAHEAD,
            cap: LAGUERRE_DEGREE_CAP,
        });
    }

    if alpha.norm() == 0.0 {
        let (coeffs, degenerate) = match parity {
            Parity::Odd => (vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)], true),
            _ => (vec![Complex64::new(1.0, 0.0)], false),
        };
        return Ok(StateCoefficients {
            alpha,
            parity,
            n_trunc: coeffs.len() - 1,
            coeffs,
            tail_bound: 0.0,
            degenerate,
        });
    }

    let log_alpha = alpha.norm().ln();
    let theta = alpha.arg();
    let log_threshold = TAIL_THRESHOLD.ln();
    let mut ledger = CoefficientLedger::new(*nl);
    // log |d_n α^n|²
    let weight = |ledger: &CoefficientLedger, n: usize| -> f64 {
        if parity.admits(n) {
            2.0 * (ledger.log_abs_d()[n] + n as f64 * log_alpha)
        } else {
            f64::NEG_INFINITY
        }
    };
    let tail_after = |ledger: &CoefficientLedger, n: usize, log_sum: f64| -> f64 {
        (n + 1..=n + LOOKAHEAD)
            .map(|m| weight(ledger, m))
            .fold(f64::NEG_INFINITY, f64::max)
            - log_sum
    };

    let mut log_sum = f64::NEG_INFINITY;
    let (n_trunc, log_tail) = match truncation {
        Truncation::Auto { cap } => {
            let mut found = None;
            let mut last_tail = f64::INFINITY;
            for n in 0..=cap {
                ledger.extend_to(n + LOOKAHEAD)?;
                log_sum = log_add_exp(log_sum, weight(&ledger, n));
                if log_sum == f64::NEG_INFINITY {
                    continue;
                }
                last_tail = tail_after(&ledger, n, log_sum);
                if last_tail <= log_threshold {
                    found = Some((n, last_tail));
                    break;
                }
            }
            found.ok_or(Error::TruncationNotConverged {
                cap,
                tail: last_tail.exp(),
            })?
        }
        Truncation::Fixed(n) => {
            ledger.extend_to(n + LOOKAHEAD)?;
            for m in 0..=n {
                log_sum = log_add_exp(log_sum, weight(&ledger, m));
            }
            let tail = tail_after(&ledger, n, log_sum);
            if !(tail <= log_threshold) {
                return Err(Error::TruncationNotConverged { cap: n, tail: tail.exp() });
            }
            (n, tail)
        }
    };

    let coeffs = (0..=n_trunc)
        .map(|n| {
            if !parity.admits(n) {
                return Complex64::new(0.0, 0.0);
            }
            let magnitude = (0.5 * (weight(&ledger, n) - log_sum)).exp();
            let sign = f64::from(ledger.sign_d()[n]);
            Complex64::from_polar(sign * magnitude, n as f64 * theta)
        })
        .collect();

    Ok(StateCoefficients {
        alpha,
        parity,
        coeffs,
        n_trunc,
        tail_bound: log_tail.exp(),
        degenerate: false,
    })
}

/// Nonlinear coherent state `C Σ d_n α^n |n⟩`.
pub fn build_nlcs(alpha: Complex64, nl: &Nonlinearity, truncation: Truncation) -> Result<StateCoefficients> {
    build_state(Parity::Any, alpha, nl, truncation)
}

/// `N₊(|α⟩ + |-α⟩)`: only even levels survive.
pub fn build_even(alpha: Complex64, nl: &Nonlinearity, truncation: Truncation) -> Result<StateCoefficients> {
    build_state(Parity::Even, alpha, nl, truncation)
}

/// `N₋(|α⟩ - |-α⟩)`: only odd levels survive. At `α = 0` this is `|1⟩`,
/// flagged as degenerate.
pub fn build_odd(alpha: Complex64, nl: &Nonlinearity, truncation: Truncation) -> Result<StateCoefficients> {
    build_state(Parity::Odd, alpha, nl, truncation)
}

/// Applies a ladder word (rightmost letter first) to a coefficient vector.
/// The result is long enough that no amplitude is lost.
pub fn apply_word(coeffs: &[Complex64], word: &[Ladder]) -> Vec<Complex64> {
    let len = coeffs.len() + word.len();
    let mut cur = coeffs.to_vec();
    cur.resize(len, Complex64::new(0.0, 0.0));
    let mut next = vec![Complex64::new(0.0, 0.0); len];
    for letter in word.iter().rev() {
        next.iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
        match letter {
            Ladder::Lower => {
                for n in 0..len - 1 {
                    next[n] = cur[n + 1] * ((n + 1) as f64).sqrt();
                }
            }
            Ladder::Raise => {
                for n in 0..len - 1 {
                    next[n + 1] = cur[n] * ((n + 1) as f64).sqrt();
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    cur
}

fn inner(bra: &[Complex64], ket: &[Complex64]) -> Complex64 {
    bra.iter().zip(ket).map(|(b, k)| b.conj() * k).sum()
}

/// `⟨ψ| w |ψ⟩` for a ladder word `w`.
///
/// The ladder actions are exact; the only error is the state's own
/// truncation, amplified by at most `(n_trunc + len)^{len/2}`.
pub fn expect_word(state: &StateCoefficients, word: &[Ladder]) -> Complex64 {
    inner(&state.coeffs, &apply_word(&state.coeffs, word))
}

/// `‖(B - α)ψ‖ / ‖αψ‖` with `(Bψ)_n = f(n+1) √(n+1) ψ_{n+1}`, i.e.
/// `B = A f(A†A)`, the operator whose eigenstates carry the weights `d_n`.
///
/// Rows `n < n_trunc` only: the top row measures the dropped amplitude, not
/// the eigenvalue relation. For `α = 0` the unnormalised `‖Bψ‖` is returned.
pub fn eigenstate_residual(state: &StateCoefficients, nl: &Nonlinearity, alpha: Complex64) -> Result<f64> {
    let f: Vec<f64> = nl.values().take(state.n_trunc + 1).collect::<Result<_>>()?;
    let mut sum = 0.0;
    for n in 0..state.n_trunc {
        let b = state.coeffs[n + 1] * (f[n + 1] * ((n + 1) as f64).sqrt());
        sum += (b - alpha * state.coeffs[n]).norm_sqr();
    }
    let scale = alpha.norm() * state.norm_sqr().sqrt();
    Ok(if scale > 0.0 { sum.sqrt() / scale } else { sum.sqrt() })
}

/// Normally ordered moments `⟨A†^j A^k⟩` for `j + k ≤ order`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    order: usize,
    entries: Vec<Vec<Complex64>>,
}

impl MomentTable {
    pub fn new(state: &StateCoefficients, order: usize) -> Self {
        let mut lowered = vec![state.coeffs.clone()];
        for k in 1..=order {
            lowered.push(apply_word(&lowered[k - 1], &[Ladder::Lower]));
        }
        let entries = (0..=order)
            .map(|j| (0..=order - j).map(|k| inner(&lowered[j], &lowered[k])).collect())
            .collect();
        Self { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `⟨A†^j A^k⟩`, if within the table's order.
    pub fn get(&self, j: usize, k: usize) -> Option<Complex64> {
        self.entries.get(j).and_then(|row| row.get(k)).copied()
    }

    /// Expectation of an arbitrary word, normal-ordered first.
    ///
    /// # Panics
    /// If the word is longer than the table's order.
    pub fn expect_word(&self, word: &[Ladder]) -> Complex64 {
        normal_order(word)
            .into_iter()
            .map(|((j, k), c)| c * self.require(j, k))
            .sum()
    }

    /// Expectation of a linear combination of words.
    ///
    /// # Panics
    /// If any word is longer than the table's order.
    pub fn expect_sum(&self, op: &OperatorSum) -> Complex64 {
        op.normal_ordered()
            .into_iter()
            .map(|((j, k), c)| c * self.require(j, k))
            .sum()
    }

    fn require(&self, j: usize, k: usize) -> Complex64 {
        self.get(j, k)
            .unwrap_or_else(|| panic!("moment ({j}, {k}) outside table of order {}", self.order))
    }
}
