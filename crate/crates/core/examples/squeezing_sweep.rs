//! Sweeps the even state under modulation and lists the intervals where
//! each quadrature is squeezed.

use nlcs::observables::{sampled_intervals, time_grid};
use nlcs::{build_state, Evolution, Nonlinearity, Parity, Truncation};
use num_complex::Complex64;

fn main() -> nlcs::Result<()> {
    let nl = Nonlinearity::trapped_ion(0.1)?;
    let grid = time_grid(20.0, 400)?;
    for parity in [Parity::Even, Parity::Odd] {
        let state = build_state(parity, Complex64::new(1.0, 0.0), &nl, Truncation::default())?;
        let samples = Evolution::new(&state, 0.01).sweep(&grid)?;
        let x1 = sampled_intervals(&samples, |s| s.squeezed_x1);
        let x2 = sampled_intervals(&samples, |s| s.squeezed_x2);
        let min_f = samples.iter().map(|s| s.f).fold(f64::INFINITY, f64::min);
        let min_g = samples.iter().map(|s| s.g).fold(f64::INFINITY, f64::min);
        println!("{parity:?}: min F = {min_f:.4}, min G = {min_g:.4}");
        println!("  X1 squeezed on {} intervals, first {:?}", x1.len(), x1.first());
        println!("  X2 squeezed on {} intervals, first {:?}", x2.len(), x2.first());
    }
    Ok(())
}
