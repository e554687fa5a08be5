//! Frozen numerical bounds, calibrated once against the current
//! implementation. A failure here means the numbers moved.

use nlcs::observables::time_grid;
use nlcs::ode::epsilon_ode_on_grid;
use nlcs::{build_state, epsilon_analytic, Evolution, Nonlinearity, Parity, Truncation};
use num_complex::Complex64;

/// `sup |ε_closed − ε_ode| / κ` on `[0, 10]`; measured 16.05 to 16.44.
const EPSILON_GAP_PER_KAPPA: f64 = 17.0;
/// `sup |varX − (F, G)| / κ` over the scan grid; measured up to 1.35.
const TWO_PATH_GAP_PER_KAPPA: f64 = 1.4;

#[test]
fn closed_form_tracks_integrated_mode_function() {
    let grid = time_grid(10.0, 1001).unwrap();
    for &kappa in &[0.0, 0.005, 0.01, 0.02, 0.05] {
        let sol = epsilon_ode_on_grid(&grid, kappa, 1e-10).unwrap();
        let gap = sol
            .times
            .iter()
            .zip(&sol.epsilon_num)
            .map(|(&t, &e)| (e - epsilon_analytic(t, kappa).0).norm())
            .fold(0.0, f64::max);
        assert!(gap <= EPSILON_GAP_PER_KAPPA * kappa + 1e-8, "kappa {kappa}: gap {gap}");
    }
}

#[test]
fn closed_form_gap_is_first_order_in_kappa() {
    let grid = time_grid(10.0, 501).unwrap();
    let gap = |kappa: f64| {
        let sol = epsilon_ode_on_grid(&grid, kappa, 1e-10).unwrap();
        sol.times
            .iter()
            .zip(&sol.epsilon_num)
            .map(|(&t, &e)| (e - epsilon_analytic(t, kappa).0).norm())
            .fold(0.0, f64::max)
    };
    let ratio = gap(0.02) / gap(0.01);
    assert!((ratio - 2.0).abs() < 0.1, "ratio {ratio}");
}

#[test]
fn two_paths_agree_to_first_order() {
    let grid = time_grid(20.0, 400).unwrap();
    for &kappa in &[0.0, 0.01, 0.02, 0.05] {
        for &alpha in &[0.5, 1.0, 1.5] {
            for &eta in &[0.05, 0.1, 0.2] {
                for parity in [Parity::Even, Parity::Odd] {
                    let nl = Nonlinearity::trapped_ion(eta).unwrap();
                    let state = build_state(parity, Complex64::new(alpha, 0.0), &nl, Truncation::default()).unwrap();
                    let samples = Evolution::new(&state, kappa).sweep(&grid).unwrap();
                    let gap = samples
                        .iter()
                        .map(|s| (s.var_x1 - s.f).abs().max((s.var_x2 - s.g).abs()))
                        .fold(0.0, f64::max);
                    let bound = if kappa == 0.0 { 1e-12 } else { TWO_PATH_GAP_PER_KAPPA * kappa };
                    assert!(gap <= bound, "{parity:?} α={alpha} η={eta} κ={kappa}: gap {gap}");
                }
            }
        }
    }
}
