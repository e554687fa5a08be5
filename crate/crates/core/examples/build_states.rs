//! Builds the nonlinear coherent state and its even and odd combinations,
//! and prints the truncation and photon-number distribution of each.

use nlcs::{build_state, Nonlinearity, Parity, Truncation};
use num_complex::Complex64;

fn main() -> nlcs::Result<()> {
    let nl = Nonlinearity::trapped_ion(0.1)?;
    let alpha = Complex64::from_polar(1.2, 0.3);
    for parity in [Parity::Any, Parity::Even, Parity::Odd] {
        let s = build_state(parity, alpha, &nl, Truncation::default())?;
        println!("{parity:?}: n_trunc = {}, tail = {:.1e}, norm = {:.15}", s.n_trunc, s.tail_bound, s.norm_sqr());
        let probs: Vec<String> = s.coeffs.iter().take(8).map(|c| format!("{:.4}", c.norm_sqr())).collect();
        println!("  P(n), n < 8: {}", probs.join(" "));
    }

    // α = 0: the odd state falls back to |1⟩.
    let odd0 = build_state(Parity::Odd, Complex64::new(0.0, 0.0), &nl, Truncation::default())?;
    println!("odd at alpha = 0: degenerate = {}, amplitude of |1> = {}", odd0.degenerate, odd0.amplitude(1));
    Ok(())
}
