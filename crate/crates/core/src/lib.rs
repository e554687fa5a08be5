//! Even and odd nonlinear coherent states of a parametric oscillator.
//!
//! The crate builds Fock-basis amplitudes for nonlinear coherent states (the
//! right eigenstates of `B = f(A†A)A`, with `A` the time-dependent integral of
//! motion of a modulated oscillator), their even and odd superpositions, and
//! evaluates their time-dependent nonclassical signatures: the quadrature
//! variances `F`, `G`, their uncertainty product, and the second-order
//! correlation `g²(0)`.
//!
//! Every analytic path has a brute-force counterpart in [`oracle`], which
//! works with explicit truncated matrices.
//!
//! ```
//! use nlcs::{Evolution, Nonlinearity, Parity, Truncation};
//! use num_complex::Complex64;
//!
//! let nl = Nonlinearity::trapped_ion(0.1).unwrap();
//! let state = nlcs::build_state(Parity::Even, Complex64::new(1.0, 0.0), &nl, Truncation::default()).unwrap();
//! let evolution = Evolution::new(&state, 0.01);
//! let sample = evolution.sample(0.0).unwrap();
//! assert!(sample.g2.unwrap() > 1.0);
//! ```

pub mod config;
pub mod dynamics;
pub mod error;
pub mod ladder;
pub mod nonlinearity;
pub mod observables;
pub mod ode;
pub mod oracle;
pub mod output;
pub mod report;
pub mod special;
pub mod states;
pub mod validation;

pub use dynamics::{bogoliubov, epsilon_analytic, omega, FrameAtTime};
pub use error::{Error, Result};
pub use ladder::{Ladder, OperatorSum};
pub use nonlinearity::{coefficient_ledger, f_eval, CoefficientLedger, Nonlinearity};
pub use observables::{g2, squeezing_fg, variance_direct, Evolution, ObservableSample};
pub use ode::{epsilon_ode, OdeSolution};
pub use special::{laguerre, log_factorial};
pub use states::{
    build_even, build_nlcs, build_odd, build_state, eigenstate_residual, expect_word, MomentTable,
    Parity, StateCoefficients, Truncation,
};
