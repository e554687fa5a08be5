//! Desk-scale self-check: oracle equivalences and invariants that should
//! hold for any correct build, each reported as pass or fail.

use std::fmt;

use num_complex::Complex64;

use crate::dynamics::{epsilon_analytic, FrameAtTime};
use crate::error::Result;
use crate::ladder::all_words;
use crate::nonlinearity::{coefficient_ledger, Nonlinearity};
use crate::observables::{g2, squeezing_fg, time_grid, variance_direct, Evolution, MOMENT_ORDER};
use crate::ode::epsilon_ode;
use crate::oracle::{deformed_commutator_diagonal, oracle_b_eigencheck, oracle_expect, oracle_g2, oracle_variances};
use crate::special::{laguerre, log_factorial};
use crate::states::{build_state, eigenstate_residual, expect_word, MomentTable, Parity, Truncation};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

fn check(name: &'static str, worst: f64, bound: f64) -> Check {
    Check {
        name,
        passed: worst <= bound,
        detail: format!("worst {worst:.3e} (bound {bound:.0e})"),
    }
}

fn rel_err(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

/// Deterministic `(α, η, parity)` draws spread over `|α| ∈ [0.2, 1.5]`,
/// `arg α ∈ [0, 2π)`, `η ∈ [0, 0.3]` (or a fixed `η`).
pub fn state_draws(count: usize, eta: Option<f64>) -> Vec<(Complex64, f64, Parity)> {
    // additive recurrences with irrational steps
    let frac = |x: f64| x - x.floor();
    (0..count)
        .map(|i| {
            let k = i as f64 + 1.0;
            let mag = 0.2 + 1.3 * frac(k * 0.618_033_988_749_895);
            let phase = std::f64::consts::TAU * frac(k * 0.414_213_562_373_095);
            let e = eta.unwrap_or(0.3 * frac(k * 0.732_050_807_568_877));
            let parity = if i % 2 == 0 { Parity::Even } else { Parity::Odd };
            (Complex64::from_polar(mag, phase), e, parity)
        })
        .collect()
}

/// Runs every check. `eta` replaces the Lamb-Dicke parameter of every
/// trapped-ion draw; numerical failures (e.g. a singular nonlinearity)
/// abort with the error.
pub fn run_validation(eta: Option<f64>) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let ion = |e: f64| Nonlinearity::trapped_ion(e);

    // Laguerre against the explicit sum
    let mut worst: f64 = 0.0;
    for n in 0..=30usize {
        for m in 0..=4usize {
            for &x in &[0.01f64, 0.25, 1.0] {
                let mut fact = 1.0;
                let mut binom = 1.0;
                // C(n+m, n-i) built downward from i = 0
                for j in 0..n {
                    binom *= (n + m - j) as f64 / (j + 1) as f64;
                }
                let mut sum = binom;
                for i in 1..=n {
                    fact *= i as f64;
                    binom *= (n - i + 1) as f64 / (m + i) as f64;
                    let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                    sum += sign * binom * x.powi(i as i32) / fact;
                }
                let v = laguerre(n, m, x)?;
                worst = worst.max((v - sum).abs() / sum.abs().max(1e-300));
            }
        }
    }
    checks.push(check("laguerre matches explicit polynomial", worst, 1e-9));

    let worst = (1..=10_000usize)
        .map(|n| {
            let cur = log_factorial(n);
            (cur - log_factorial(n - 1) - (n as f64).ln()).abs() / cur.max(1.0)
        })
        .step_by(97)
        .fold(0.0, f64::max);
    checks.push(check("log-factorial increments", worst, 1e-12));

    let ledger = coefficient_ledger(&Nonlinearity::Identity, 170)?;
    let worst = (0..=170)
        .map(|n| {
            let exact = (-0.5 * log_factorial(n)).exp();
            (ledger.d(n) - exact).abs() / exact
        })
        .fold(0.0, f64::max);
    checks.push(check("identity weights equal 1/sqrt(n!)", worst, 1e-12));

    let draws = state_draws(20, eta);
    let mut worst: f64 = 0.0;
    let mut worst_eigen: f64 = 0.0;
    let mut worst_matrix_eigen: f64 = 0.0;
    let mut worst_g2: f64 = 0.0;
    let mut worst_var: f64 = 0.0;
    for &(alpha, e, parity) in &draws {
        let nl = ion(e)?;
        let state = build_state(parity, alpha, &nl, Truncation::default())?;
        let dim = state.n_trunc + 8;
        for len in 0..=4 {
            for w in all_words(len) {
                worst = worst.max(rel_err(expect_word(&state, &w), oracle_expect(&state, &w, dim)?));
            }
        }
        let nlcs = build_state(Parity::Any, alpha, &nl, Truncation::default())?;
        worst_eigen = worst_eigen.max(eigenstate_residual(&nlcs, &nl, alpha)?);
        worst_matrix_eigen = worst_matrix_eigen.max(oracle_b_eigencheck(alpha, &nl, nlcs.n_trunc + 4)?);

        let moments = MomentTable::new(&state, MOMENT_ORDER);
        for &t in &[0.0, 3.7, 12.9] {
            let frame = FrameAtTime::analytic(t, 0.03);
            let series = g2(&moments, &frame)?;
            let matrix = oracle_g2(&state, &frame, dim)?;
            worst_g2 = worst_g2.max((series - matrix).abs() / matrix.abs());
            let (v1, v2) = variance_direct(&moments, &frame);
            let (o1, o2) = oracle_variances(&state, &frame, dim)?;
            worst_var = worst_var.max(((v1 - o1).abs() / o1).max((v2 - o2).abs() / o2));
        }
    }
    checks.push(check("series moments match Fock matrices (20 draws, words <= 4)", worst, 1e-10));
    checks.push(check("nonlinear coherent state is a B eigenstate (series)", worst_eigen, 1e-10));
    checks.push(check("nonlinear coherent state is a B eigenstate (matrix)", worst_matrix_eigen, 1e-10));
    checks.push(check("g2 word expansion matches matrices", worst_g2, 1e-10));
    checks.push(check("quadrature variances match matrices", worst_var, 1e-10));

    let nl = ion(eta.unwrap_or(0.3))?;
    let dim = 40;
    let diag = deformed_commutator_diagonal(&nl, dim)?;
    let mut worst: f64 = 0.0;
    for (n, d) in diag.iter().enumerate().take(dim - 2) {
        let f = nl.eval(n)?;
        let prev = if n == 0 { 0.0 } else { nl.eval(n - 1)?.powi(2) * n as f64 };
        let expected = f * f * (n + 1) as f64 - prev;
        worst = worst.max((d - expected).abs() / expected.abs().max(1.0));
    }
    checks.push(check("deformed commutator diagonal", worst, 1e-10));

    let mut worst: f64 = 0.0;
    for &a in &[0.5, 1.0, 2.0] {
        let alpha = Complex64::new(a, 0.0);
        let x = a * a;
        let frame = FrameAtTime::analytic(0.0, 0.0);
        for (parity, n_exact, g2_exact) in [
            (Parity::Even, x * x.tanh(), 1.0 / x.tanh().powi(2)),
            (Parity::Odd, x / x.tanh(), x.tanh().powi(2)),
        ] {
            let state = build_state(parity, alpha, &Nonlinearity::Identity, Truncation::default())?;
            let m = MomentTable::new(&state, MOMENT_ORDER);
            worst = worst.max((m.get(1, 1).expect("order 4").re - n_exact).abs());
            worst = worst.max((g2(&m, &frame)? - g2_exact).abs());
        }
    }
    checks.push(check("even/odd coherent-state closed forms", worst, 1e-8));

    let mut worst: f64 = 0.0;
    for &kappa in &[0.01, 0.05] {
        for t in time_grid(20.0, 2001)? {
            worst = worst.max(FrameAtTime::analytic(t, kappa).wronskian_defect() / kappa);
        }
    }
    checks.push(check("closed-form Wronskian defect / kappa", worst, 5.0));

    let mut worst: f64 = 0.0;
    for &kappa in &[0.0, 0.01, 0.05] {
        for &tol in &[1e-8, 1e-10] {
            let sol = epsilon_ode(20.0, kappa, tol)?;
            let drift = sol.wronskian_defects().into_iter().fold(0.0, f64::max);
            worst = worst.max(drift / tol);
        }
    }
    checks.push(check("ODE Wronskian drift / tol", worst, 10.0));

    let (e, ed) = epsilon_analytic(0.0, 0.0);
    checks.push(Check {
        name: "static initial values exact",
        passed: e == Complex64::new(1.0, 0.0) && ed == Complex64::i(),
        detail: format!("eps(0) = {e}, eps_dot(0) = {ed}"),
    });

    let mut worst_v: f64 = 0.0;
    let mut worst_fg: f64 = 0.0;
    let mut worst_g2_drift: f64 = 0.0;
    for &(alpha, e, parity) in draws.iter().take(4) {
        let state = build_state(parity, alpha, &ion(e)?, Truncation::default())?;
        let m = MomentTable::new(&state, MOMENT_ORDER);
        let g0 = g2(&m, &FrameAtTime::analytic(0.0, 0.0))?;
        for t in time_grid(20.0, 400)? {
            let frame = FrameAtTime::analytic(t, 0.0);
            worst_v = worst_v.max(frame.v.norm());
            let (f, g) = squeezing_fg(&m, &frame);
            let (v1, v2) = variance_direct(&m, &frame);
            worst_fg = worst_fg.max((f - v1).abs()).max((g - v2).abs());
            worst_g2_drift = worst_g2_drift.max((g2(&m, &frame)? - g0).abs());
        }
    }
    checks.push(check("static frame: v = 0", worst_v, 1e-12));
    checks.push(check("static frame: F = varX1, G = varX2", worst_fg, 1e-12));
    checks.push(check("static frame: g2 time-independent", worst_g2_drift, 1e-12));

    let kappa = 0.01;
    let mut worst: f64 = 0.0;
    for &(alpha, e, parity) in draws.iter().take(6) {
        let state = build_state(parity, alpha, &ion(e)?, Truncation::default())?;
        let evo = Evolution::new(&state, kappa);
        for s in evo.sweep(&time_grid(20.0, 200)?)? {
            worst = worst.max(0.25 - 10.0 * kappa - s.uncertainty_product);
        }
    }
    checks.push(Check {
        name: "uncertainty floor F*G >= 1/4 - 10 kappa",
        passed: worst <= 0.0,
        detail: format!("largest violation margin {worst:.3e}"),
    });

    Ok(checks)
}
