//! Tabulates the trapped-ion nonlinearity `f(n)` for a few Lamb-Dicke
//! parameters, with the Laguerre values it is built from.

use nlcs::{laguerre, Nonlinearity};

fn main() -> nlcs::Result<()> {
    for eta in [0.05, 0.2, 0.5] {
        let x = eta * eta;
        println!("eta = {eta}");
        println!("{:>4} {:>14} {:>14} {:>12}", "n", "L_n^0(eta^2)", "L_n^1(eta^2)", "f(n)");
        let nl = Nonlinearity::trapped_ion(eta)?;
        for (n, f) in nl.values().take(8).enumerate() {
            println!("{n:>4} {:>14.8} {:>14.8} {:>12.8}", laguerre(n, 0, x)?, laguerre(n, 1, x)?, f?);
        }
        println!();
    }
    Ok(())
}
