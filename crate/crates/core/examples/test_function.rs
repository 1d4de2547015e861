//! Build the convolution test function f_l, print its bound and
//! its Jacobi–Fourier coefficients, and sample it on [-1, 1].

use projbound::testfn::build_test_function;
use projbound::{Field, Result};

fn main() -> Result<()> {
    let tf = build_test_function(Field::R, 3, 5, 200)?;
    println!("field R, m = 3, l = 5, r = l + 1 = {}", tf.r);
    println!("xi         = {:.15}", tf.xi);
    println!("bound      = {:.12}", tf.bound());
    println!("f(1)       = {:.6e}", tf.value_at_one());
    println!("sup|f| <=  {:.6e}", tf.sup_bound());
    println!("tail term  = {:.3e} (warning: {})", tf.tail_term, tf.truncation_warning);

    println!("\n  k        c_k[h]          c_k[g]          c_k[f]");
    for row in tf.coefficient_rows().iter().take(12) {
        println!("{:>3} {:>15.6e} {:>15.6e} {:>15.6e}", row.k, row.c_h, row.c_g, row.c_f);
    }

    println!("\n     t        f(t)");
    for i in 0..=10 {
        let t = -1.0 + 0.2 * i as f64;
        println!("{t:>6.2} {:>14.6e}", tf.eval(t).value);
    }

    println!("\nbounds tau / c_0[h] for m = 2");
    for field in Field::ALL {
        let bounds: Vec<String> = (1..=5)
            .map(|l| build_test_function(field, 2, l, l + 2).map(|t| format!("{:.6}", t.bound())))
            .collect::<Result<_>>()?;
        println!("  {field}: {}", bounds.join("  "));
    }
    Ok(())
}
