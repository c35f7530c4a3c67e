//! Convergence sweeps: error against truncation order, with a fitted rate.
//!
//! `sweep` reruns one configuration over a list of truncation orders N and
//! consolidates the final-time errors, then fits log(error) against N over
//! the stretch where the error still falls. For an analytic solution the
//! decay is exponential in N (straight line on a semilog plot) down to either
//! round-off or the integrator's temporal floor, whichever is higher.

use pie_spectral::harness::examples::{heat_dirichlet_neumann, transport_sine};
use pie_spectral::harness::sweep;

fn main() -> pie_spectral::Result<()> {
    let case = heat_dirichlet_neumann(0.5);
    println!("{} (exact time integration)", case.title);
    let (_, summary) = sweep(&case.run_config(), &[4, 6, 8, 10, 12, 16, 20])?;
    for (n, errs) in summary.n_values.iter().zip(&summary.final_errors) {
        println!("  N = {n:2}  L2 error: {:.3e}", errs[0]);
    }
    if let Some(rate) = summary.decay_rate {
        println!("  fitted decay: error ~ exp(-{rate:.2} N) before the floor");
    }

    let case = transport_sine(2.0);
    println!("{} (t = 10, quadrature in time)", case.title);
    let (_, summary) = sweep(&case.run_config(), &[4, 6, 8, 10])?;
    for (n, errs) in summary.n_values.iter().zip(&summary.final_errors) {
        println!("  N = {n:2}  L2 error: {:.3e}", errs[0]);
    }
    if let Some(rate) = summary.decay_rate {
        println!("  fitted decay: error ~ exp(-{rate:.2} N) before the floor");
    }
    Ok(())
}
