//! The mode function of the modulated oscillator: closed form against the
//! integrated equation, with the Wronskian of each.

use nlcs::dynamics::wronskian;
use nlcs::observables::time_grid;
use nlcs::ode::epsilon_ode_on_grid;
use nlcs::{bogoliubov, epsilon_analytic, omega};

fn main() -> nlcs::Result<()> {
    let kappa = 0.05;
    let grid = time_grid(10.0, 11)?;
    let sol = epsilon_ode_on_grid(&grid, kappa, 1e-10)?;
    println!("{:>5} {:>8} {:>24} {:>24} {:>10} {:>10} {:>8}", "t", "omega", "eps closed", "eps ode", "W closed", "W ode", "|v|");
    for (i, &t) in sol.times.iter().enumerate() {
        let (e, ed) = epsilon_analytic(t, kappa);
        let (_, v) = bogoliubov(e, ed);
        println!(
            "{t:>5.1} {:>8.5} {:>24.6} {:>24.6} {:>10.6} {:>10.6} {:>8.5}",
            omega(t, kappa),
            e,
            sol.epsilon_num[i],
            wronskian(e, ed),
            wronskian(sol.epsilon_num[i], sol.epsilon_dot_num[i]),
            v.norm()
        );
    }
    Ok(())
}
