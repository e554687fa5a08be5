//! Searches for times where both quadrature variances sit at ½.

use nlcs::observables::time_grid;
use nlcs::{build_state, Evolution, Nonlinearity, Parity, Truncation};
use num_complex::Complex64;

fn main() -> nlcs::Result<()> {
    let grid = time_grid(20.0, 400)?;
    let nl = Nonlinearity::trapped_ion(0.1)?;

    let vacuum = build_state(Parity::Even, Complex64::new(0.0, 0.0), &nl, Truncation::default())?;
    let evo = Evolution::new(&vacuum, 0.0);
    let times = evo.intelligent_times(&evo.sweep(&grid)?, 5e-3);
    println!("vacuum, static frame: {} of {} samples qualify", times.len(), grid.len());

    for alpha in [0.5, 1.0, 1.5] {
        let state = build_state(Parity::Even, Complex64::new(alpha, 0.0), &nl, Truncation::default())?;
        let evo = Evolution::new(&state, 0.01);
        let samples = evo.sweep(&grid)?;
        let closest = samples
            .iter()
            .map(|s| (s.f - 0.5).abs().max((s.g - 0.5).abs()))
            .fold(f64::INFINITY, f64::min);
        let times = evo.intelligent_times(&samples, 5e-3);
        println!("even alpha {alpha}: {} intelligent times, closest max(|F-1/2|, |G-1/2|) = {closest:.4}", times.len());
    }
    Ok(())
}
