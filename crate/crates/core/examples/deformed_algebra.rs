//! The deformed ladder operator on a truncated Fock space: its
//! commutator diagonal and the eigenvalue residual of the coherent state.

use nlcs::oracle::{deformed_commutator_diagonal, oracle_b_eigencheck};
use nlcs::{build_state, eigenstate_residual, Nonlinearity, Parity, Truncation};
use num_complex::Complex64;

fn main() -> nlcs::Result<()> {
    let nl = Nonlinearity::trapped_ion(0.3)?;
    let diag = deformed_commutator_diagonal(&nl, 8)?;
    println!("diagonal of [B, B†] on the first levels:");
    for (n, d) in diag.iter().take(6).enumerate() {
        println!("  n={n}: {d:.8}");
    }

    let alpha = Complex64::new(0.8, -0.5);
    let state = build_state(Parity::Any, alpha, &nl, Truncation::default())?;
    println!("series eigen residual: {:.2e}", eigenstate_residual(&state, &nl, alpha)?);
    println!("matrix eigen residual: {:.2e}", oracle_b_eigencheck(alpha, &nl, state.n_trunc + 4)?);
    Ok(())
}
