//! Time-dependent frequency, the closed-form `ε(t)`, and the Bogoliubov pair
//! linking the static mode `a` to the integral of motion `A`.
//!
//! Units: `ħ = 2m = ω(0) = 1`.

use num_complex::Complex64;

/// Above this modulation depth the closed-form `ε(t)` is flagged as out of
/// its small-κ regime.
pub const ANALYTIC_KAPPA_LIMIT: f64 = 0.1;

/// `ω(t) = (1 + κ cos 2t) / (1 + κ)`.
pub fn omega(t: f64, kappa: f64) -> f64 {
    (1.0 + kappa * (2.0 * t).cos()) / (1.0 + kappa)
}

/// `(ε, ε̇)` with `ε(t) = cosh(κt/4) e^{it} + i sinh(κt/4) e^{-it}` and its
/// exact time derivative.
///
/// `ε(0) = 1` exactly. `ε̇(0) = i(1 + κ/4)`, so the closed form carries an
/// `O(κ)` Wronskian defect from the first instant.
pub fn epsilon_analytic(t: f64, kappa: f64) -> (Complex64, Complex64) {
    let s = 0.25 * kappa * t;
    let (ch, sh) = (s.cosh(), s.sinh());
    let fwd = Complex64::cis(t);
    let bwd = Complex64::cis(-t);
    let i = Complex64::i();
    let q = 0.25 * kappa;

    let epsilon = fwd * ch + i * bwd * sh;
    let epsilon_dot = fwd * (q * sh) + i * fwd * ch + i * bwd * (q * ch) + bwd * sh;
    (epsilon, epsilon_dot)
}

/// `u = ½(ε - iε̇)`, `v = -½(ε + iε̇)`.
pub fn bogoliubov(epsilon: Complex64, epsilon_dot: Complex64) -> (Complex64, Complex64) {
    let i = Complex64::i();
    let u = 0.5 * (epsilon - i * epsilon_dot);
    let v = -0.5 * (epsilon + i * epsilon_dot);
    (u, v)
}

/// `(ε ε̇* - ε* ε̇) / (-2i)`: equals 1 for an exact solution started at
/// `(1, i)`, and `|u|² - |v|²` for any input.
pub fn wronskian(epsilon: Complex64, epsilon_dot: Complex64) -> f64 {
    let w = (epsilon * epsilon_dot.conj() - epsilon.conj() * epsilon_dot) / Complex64::new(0.0, -2.0);
    w.re
}

/// Everything time-dependent at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameAtTime {
    pub t: f64,
    pub kappa: f64,
    pub epsilon: Complex64,
    pub epsilon_dot: Complex64,
    pub u: Complex64,
    pub v: Complex64,
    pub omega: f64,
}

impl FrameAtTime {
    /// Frame built from the closed-form `ε(t)`.
    pub fn analytic(t: f64, kappa: f64) -> Self {
        let (epsilon, epsilon_dot) = epsilon_analytic(t, kappa);
        Self::from_epsilon(t, kappa, epsilon, epsilon_dot)
    }

    /// Frame built from any `(ε, ε̇)`, e.g. a numerical solution.
    pub fn from_epsilon(t: f64, kappa: f64, epsilon: Complex64, epsilon_dot: Complex64) -> Self {
        let (u, v) = bogoliubov(epsilon, epsilon_dot);
        Self {
            t,
            kappa,
            epsilon,
            epsilon_dot,
            u,
            v,
            omega: omega(t, kappa),
        }
    }

    pub fn wronskian(&self) -> f64 {
        wronskian(self.epsilon, self.epsilon_dot)
    }

    /// `|W - 1|`.
    pub fn wronskian_defect(&self) -> f64 {
        (self.wronskian() - 1.0).abs()
    }

    pub fn in_small_kappa_regime(&self) -> bool {
        self.kappa <= ANALYTIC_KAPPA_LIMIT
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn omega_values() {
        assert_eq!(omega(0.0, 0.01), 1.0);
        for &t in &[0.0, 0.7, 3.3, 19.0] {
            assert_eq!(omega(t, 0.0), 1.0);
        }
        assert_relative_eq!(omega(PI / 2.0, 0.01), 0.99 / 1.01, epsilon = 1e-15);
    }

    #[test]
    fn initial_values() {
        let (e, ed) = epsilon_analytic(0.0, 0.0);
        assert_eq!((e.re, e.im), (1.0, 0.0));
        assert_eq!((ed.re, ed.im), (0.0, 1.0));
        for &kappa in &[0.01, 0.05, 0.1] {
            let (e, ed) = epsilon_analytic(0.0, kappa);
            assert_eq!((e.re, e.im), (1.0, 0.0));
            assert_eq!(ed.re, 0.0);
            assert_eq!(ed.im, 1.0 + 0.25 * kappa);
        }
    }

    #[test]
    fn static_oscillator_is_free_phase() {
        for &t in &[0.3, 1.0, 5.5, 17.2] {
            let (e, ed) = epsilon_analytic(t, 0.0);
            let phase = Complex64::cis(t);
            assert!((e - phase).norm() < 1e-15);
            assert!((ed - Complex64::i() * phase).norm() < 1e-15);
            let (u, v) = bogoliubov(e, ed);
            assert!((u - phase).norm() < 1e-15);
            assert_eq!(v.norm(), 0.0);
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let kappa = 0.05;
        let h = 1e-5;
        for &t in &[0.4, 2.0, 9.0, 18.5] {
            let (_, ed) = epsilon_analytic(t, kappa);
            let (ep, _) = epsilon_analytic(t + h, kappa);
            let (em, _) = epsilon_analytic(t - h, kappa);
            let fd = (ep - em) / (2.0 * h);
            assert!((fd - ed).norm() < 1e-9, "t={t}");
        }
    }

    #[test]
    fn bogoliubov_examples() {
        let (u, v) = bogoliubov(c(1.0, 0.0), c(0.0, 1.0));
        assert_eq!(u, c(1.0, 0.0));
        assert_eq!(v.norm(), 0.0);
    }

    #[test]
    fn bogoliubov_identity() {
        let samples = [
            (c(1.0, 0.0), c(0.0, 1.0)),
            (c(0.3, -2.0), c(1.5, 0.25)),
            (c(-4.0, 1.0), c(0.0, -0.5)),
        ];
        for (e, ed) in samples {
            let (u, v) = bogoliubov(e, ed);
            let lhs = u.norm_sqr() - v.norm_sqr();
            let rhs = (0.5 * Complex64::i() * (e * ed.conj() - ed * e.conj())).re;
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
            assert!((wronskian(e, ed) - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
        }
    }

    #[test]
    fn analytic_wronskian_defect_bounded() {
        for &kappa in &[0.01, 0.05] {
            for i in 0..=2000 {
                let t = 20.0 * i as f64 / 2000.0;
                let frame = FrameAtTime::analytic(t, kappa);
                assert!(frame.wronskian_defect() <= 5.0 * kappa);
                let lhs = frame.u.norm_sqr() - frame.v.norm_sqr();
                assert!((lhs - frame.wronskian()).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn regime_flag() {
        assert!(FrameAtTime::analytic(1.0, 0.1).in_small_kappa_regime());
        assert!(!FrameAtTime::analytic(1.0, 0.2).in_small_kappa_regime());
    }
}
