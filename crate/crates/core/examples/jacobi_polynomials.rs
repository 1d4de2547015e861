//! Jacobi polynomials attached to the projective spaces over R, C and H:
//! values, norms, largest roots and Gauss–Jacobi quadrature.

use projbound::jacobi::{
    gauss_jacobi, incomplete_weight_integral, jacobi_deriv, jacobi_eval, jacobi_norm_nu,
    largest_root, tau,
};
use projbound::{Field, Result};

fn main() -> Result<()> {
    for field in Field::ALL {
        let params = field.jacobi_params(3)?;
        println!(
            "{field}P^2: alpha = {}, beta = {}, tau = {:.12}",
            params.alpha(),
            params.beta(),
            tau(params)
        );
        for k in 0..=4 {
            println!(
                "  P_{k}(0.3) = {:>16.12}   P_{k}'(0.3) = {:>16.12}   nu_{k} = {:.12}",
                jacobi_eval(params, k, 0.3),
                jacobi_deriv(params, k, 0.3),
                jacobi_norm_nu(params, k)
            );
        }
        let xi = largest_root(params.shifted(), 4)?;
        println!("  largest root of P_4^(alpha+1, beta+1): {xi:.15}");
        println!(
            "  weight mass on [xi, 1]: {:.15}",
            incomplete_weight_integral(params, xi)?
        );
    }

    // A 10-point rule integrates P_j P_k exactly for j + k <= 19.
    let params = Field::H.jacobi_params(2)?;
    let rule = gauss_jacobi(params, 10)?;
    let gram = rule.integrate(|t| jacobi_eval(params, 3, t) * jacobi_eval(params, 5, t));
    let norm = rule.integrate(|t| jacobi_eval(params, 5, t).powi(2));
    println!("\nGauss–Jacobi, 10 nodes, (alpha, beta) = (1, 1)");
    println!("  <P_3, P_5>     = {gram:.3e}");
    println!("  <P_5, P_5>     = {norm:.15}");
    println!("  1 / nu_5       = {:.15}", 1.0 / jacobi_norm_nu(params, 5));
    Ok(())
}
