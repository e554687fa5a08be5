//! Second-order correlation of the odd and even states over time,
//! with the least-squares trend.

use nlcs::observables::{fitted_slope, time_grid};
use nlcs::{build_state, Evolution, Nonlinearity, Parity, Truncation};
use num_complex::Complex64;

fn main() -> nlcs::Result<()> {
    let grid = time_grid(20.0, 400)?;
    for eta in [0.05, 0.2] {
        let nl = Nonlinearity::trapped_ion(eta)?;
        for parity in [Parity::Odd, Parity::Even] {
            let state = build_state(parity, Complex64::new(1.0, 0.0), &nl, Truncation::default())?;
            let samples = Evolution::new(&state, 0.01).sweep(&grid)?;
            let g2: Vec<f64> = samples.iter().map(|s| s.g2.unwrap_or(f64::NAN)).collect();
            let below = g2.iter().take_while(|g| **g < 1.0).count();
            println!(
                "eta {eta} {parity:?}: g2(0) = {:.5}, g2(20) = {:.5}, slope {:.3e}, g2 < 1 for the first {below} samples",
                g2[0],
                g2[g2.len() - 1],
                fitted_slope(&grid, &g2)
            );
        }
    }
    Ok(())
}
