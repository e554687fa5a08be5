//! The nonlinearity function `f(n)` and the amplitude weights
//! `d_n = [√(n!) f(1)⋯f(n)]⁻¹` it induces.

use crate::error::{Error, Result};
use crate::special::{laguerre, LaguerreSeq};

/// `|L_n^0(η²)|` below this makes `f(n)` unusable.
pub const SINGULAR_THRESHOLD: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Nonlinearity {
    /// `f(n) = 1`: ordinary coherent states.
    Identity,
    /// `f(n) = L_n^1(η²) / ((n+1) L_n^0(η²))`, η the Lamb-Dicke parameter.
    TrappedIon { eta: f64 },
}

impl Nonlinearity {
    pub fn trapped_ion(eta: f64) -> Result<Self> {
        if !eta.is_finite() || eta < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "Lamb-Dicke parameter must be finite and >= 0, got {eta}"
            )));
        }
        Ok(Nonlinearity::TrappedIon { eta })
    }

    pub fn eta(&self) -> f64 {
        match *self {
            Nonlinearity::Identity => 0.0,
            Nonlinearity::TrappedIon { eta } => eta,
        }
    }

    /// `f(n)`.
    pub fn eval(&self, n: usize) -> Result<f64> {
        match *self {
            Nonlinearity::Identity => Ok(1.0),
            Nonlinearity::TrappedIon { eta } => {
                let x = eta * eta;
                trapped_ion_ratio(n, laguerre(n, 1, x)?, laguerre(n, 0, x)?, eta)
            }
        }
    }

    /// `f(0), f(1), …` computed in a single pass. Each value is bit-identical
    /// to [`Nonlinearity::eval`] at the same `n`.
    pub fn values(&self) -> NonlinearityValues {
        let x = self.eta() * self.eta();
        NonlinearityValues {
            nl: *self,
            n: 0,
            l1: LaguerreSeq::new(1, x),
            l0: LaguerreSeq::new(0, x),
        }
    }
}

fn trapped_ion_ratio(n: usize, l1: f64, l0: f64, eta: f64) -> Result<f64> {
    if l0.abs() < SINGULAR_THRESHOLD {
        return Err(Error::NonlinearitySingular { n, eta });
    }
    Ok(l1 / ((n + 1) as f64 * l0))
}

/// Iterator returned by [`Nonlinearity::values`].
#[derive(Debug, Clone)]
pub struct NonlinearityValues {
    nl: Nonlinearity,
    n: usize,
    l1: LaguerreSeq,
    l0: LaguerreSeq,
}

impl Iterator for NonlinearityValues {
    type Item = Result<f64>;

    fn next(&mut self) -> Option<Result<f64>> {
        let n = self.n;
        self.n += 1;
        let l1 = self.l1.next()?.value;
        let l0 = self.l0.next()?.value;
        Some(match self.nl {
            Nonlinearity::Identity => Ok(1.0),
            Nonlinearity::TrappedIon { eta } => trapped_ion_ratio(n, l1, l0, eta),
        })
    }
}

/// `f(n)` for a single `n`.
pub fn f_eval(nl: &Nonlinearity, n: usize) -> Result<f64> {
    nl.eval(n)
}

/// `ln|d_n|` and `sign(d_n)` for `n = 0..=n_max`.
///
/// Built by `ln|d_n| = ln|d_{n-1}| - ½ ln n - ln|f(n)|`; neither `n!` nor
/// `f(n)!` is ever formed, so orders far past 170 stay representable.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientLedger {
    nl: Nonlinearity,
    log_abs_d: Vec<f64>,
    sign_d: Vec<i8>,
    f: Vec<f64>,
}

impl CoefficientLedger {
    pub fn new(nl: Nonlinearity) -> Self {
        Self {
            nl,
            log_abs_d: vec![0.0],
            sign_d: vec![1],
            f: vec![1.0],
        }
    }

    pub fn nonlinearity(&self) -> &Nonlinearity {
        &self.nl
    }

    pub fn n_max(&self) -> usize {
        self.log_abs_d.len() - 1
    }

    pub fn log_abs_d(&self) -> &[f64] {
        &self.log_abs_d
    }

    pub fn sign_d(&self) -> &[i8] {
        &self.sign_d
    }

    /// The `f(n)` values used to build the ledger (index 0 holds `f(0)`).
    pub fn f_values(&self) -> &[f64] {
        &self.f
    }

    /// `d_n` as a plain float; underflows to zero for large `n`.
    pub fn d(&self, n: usize) -> f64 {
        f64::from(self.sign_d[n]) * self.log_abs_d[n].exp()
    }

    /// Grows the ledger so that it covers `0..=n_max`. On error the ledger
    /// keeps every entry below the offending `n`.
    pub fn extend_to(&mut self, n_max: usize) -> Result<()> {
        let start = self.log_abs_d.len();
        if n_max < start {
            return Ok(());
        }
        // f(0) is never used in d_n but keeps indices aligned
        let mut values = self.nl.values().skip(start);
        for n in start..=n_max {
            let f = values.next().expect("infinite sequence")?;
            if f == 0.0 || !f.is_finite() {
                return Err(Error::NonlinearitySingular { n, eta: self.nl.eta() });
            }
            let prev = self.log_abs_d[n - 1];
            self.log_abs_d.push(prev - 0.5 * (n as f64).ln() - f.abs().ln());
            let sign = if f < 0.0 { -1 } else { 1 };
            self.sign_d.push(self.sign_d[n - 1] * sign);
            self.f.push(f);
        }
        Ok(())
    }
}

/// Ledger covering `0..=n_max`.
pub fn coefficient_ledger(nl: &Nonlinearity, n_max: usize) -> Result<CoefficientLedger> {
    let mut ledger = CoefficientLedger::new(*nl);
    ledger.extend_to(n_max)?;
    Ok(ledger)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::log_factorial;
    use approx::assert_relative_eq;

    #[test]
    fn f_examples() {
        assert_eq!(f_eval(&Nonlinearity::Identity, 7).unwrap(), 1.0);
        let nl = Nonlinearity::trapped_ion(0.3).unwrap();
        assert_eq!(f_eval(&nl, 0).unwrap(), 1.0);
        let nl = Nonlinearity::trapped_ion(0.5).unwrap();
        assert_relative_eq!(f_eval(&nl, 1).unwrap(), 1.75 / 1.5, epsilon = 1e-15);
    }

    #[test]
    fn eta_zero_reduces_to_identity() {
        let nl = Nonlinearity::trapped_ion(0.0).unwrap();
        for n in 0..50 {
            assert_eq!(f_eval(&nl, n).unwrap(), 1.0);
        }
        assert_eq!(
            coefficient_ledger(&nl, 5).unwrap().log_abs_d(),
            coefficient_ledger(&Nonlinearity::Identity, 5).unwrap().log_abs_d()
        );
    }

    #[test]
    fn identity_ledger() {
        let ledger = coefficient_ledger(&Nonlinearity::Identity, 2).unwrap();
        assert_eq!(ledger.d(0), 1.0);
        assert_relative_eq!(ledger.d(1), 1.0, epsilon = 1e-15);
        assert_relative_eq!(ledger.d(2), 1.0 / 2f64.sqrt(), epsilon = 1e-15);

        let zero = coefficient_ledger(&Nonlinearity::trapped_ion(0.2).unwrap(), 0).unwrap();
        assert_eq!(zero.n_max(), 0);
        assert_eq!(zero.d(0), 1.0);

        let ledger = coefficient_ledger(&Nonlinearity::Identity, 170).unwrap();
        for n in 0..=170 {
            let expected = (-0.5 * log_factorial(n)).exp();
            assert_relative_eq!(ledger.d(n), expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn large_orders_stay_finite() {
        let ledger = coefficient_ledger(&Nonlinearity::Identity, 400).unwrap();
        assert!(ledger.log_abs_d()[400].is_finite());
        assert_relative_eq!(
            ledger.log_abs_d()[400],
            -0.5 * log_factorial(400),
            max_relative = 1e-12
        );
    }

    #[test]
    fn recurrence_and_sign_tracking() {
        // η = 0.4 puts Laguerre zeros inside the first ~40 levels
        let nl = Nonlinearity::trapped_ion(0.4).unwrap();
        let ledger = coefficient_ledger(&nl, 120).unwrap();
        let mut flips = 0;
        for n in 1..=120 {
            let f = f_eval(&nl, n).unwrap();
            assert_eq!(ledger.f_values()[n], f);
            let expected = ledger.log_abs_d()[n - 1] - 0.5 * (n as f64).ln() - f.abs().ln();
            assert_eq!(ledger.log_abs_d()[n], expected);
            let flipped = ledger.sign_d()[n] != ledger.sign_d()[n - 1];
            assert_eq!(flipped, f < 0.0, "n={n}");
            flips += usize::from(flipped);
        }
        assert!(flips > 0);
    }

    #[test]
    fn singular_laguerre_zero() {
        // L_1^0(1) = 1 - 1 = 0 exactly
        let nl = Nonlinearity::trapped_ion(1.0).unwrap();
        assert_eq!(f_eval(&nl, 1), Err(Error::NonlinearitySingular { n: 1, eta: 1.0 }));
        assert_eq!(
            coefficient_ledger(&nl, 4),
            Err(Error::NonlinearitySingular { n: 1, eta: 1.0 })
        );
    }

    #[test]
    fn deterministic() {
        let nl = Nonlinearity::trapped_ion(0.17).unwrap();
        for n in 0..64 {
            assert_eq!(
                f_eval(&nl, n).unwrap().to_bits(),
                f_eval(&nl, n).unwrap().to_bits()
            );
        }
    }

    #[test]
    fn rejects_negative_eta() {
        assert!(Nonlinearity::trapped_ion(-0.1).is_err());
        assert!(Nonlinearity::trapped_ion(f64::NAN).is_err());
    }
}
