//! log-Gamma, the hypergeometric factor of the bound and first Bessel zeros.

use projbound::special::{
    bessel_first_zero, bessel_j, hypergeom_f, hypergeom_f_series, log_gamma,
};
use projbound::Result;

fn main() -> Result<()> {
    println!("ln Gamma(0.5) = {:.15}  (ln sqrt(pi) = {:.15})", log_gamma(0.5)?, 0.5 * std::f64::consts::PI.ln());
    println!("ln Gamma(171) = {:.10}", log_gamma(171.0)?);

    println!("\nF(-beta, alpha+1; alpha+2; eps): Euler integral vs power series");
    for &(beta, alpha, eps) in &[(-0.5, 0.0, 0.3), (-0.5, 2.5, 0.9), (1.0, 3.0, 0.5), (0.5, 7.0, 0.99)] {
        println!(
            "  beta = {beta:>4}, alpha = {alpha:>3}, eps = {eps:<4}: {:.15}  {:.15}",
            hypergeom_f(beta, alpha, eps)?,
            hypergeom_f_series(beta, alpha, eps)?
        );
    }

    println!("\nFirst positive zeros j_(nu,1)");
    for &nu in &[0.0, 0.5, 1.0, 2.5, 10.0, 49.5, 199.0, 399.0] {
        let z = bessel_first_zero(nu)?;
        println!(
            "  nu = {nu:>5}: j = {:>20.14}   J_nu(j) = {:+.2e}",
            z.value,
            bessel_j(nu, z.value)?
        );
    }
    Ok(())
}
