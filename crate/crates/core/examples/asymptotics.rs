//! Constants of the large-p behaviour N ~ c p^{delta(m-1)}: the Bessel-zero
//! constant kappa, the liminf constants of both bounds and their ratio.

use projbound::bounds::{asymptotic_report, asymptotic_row, kappa};
use projbound::cli::{render_asym, TableFormat};
use projbound::{yudin_bound, Field, Result};

fn main() -> Result<()> {
    for field in Field::ALL {
        let ms: Vec<usize> = (2..=8).collect();
        print!("{}", render_asym(field, &asymptotic_report(field, &ms)?, TableFormat::Markdown));
        println!();
    }

    // Finite-p growth approaches the liminf constants.
    let (field, m) = (Field::C, 3);
    let row = asymptotic_row(field, m)?;
    let exp = 2.0 * field.half_exponent(m);
    println!("{field}, m = {m}: kappa = {:.10}", kappa(field, m)?.value);
    println!(
        "  constants: lp {:.10}, yudin {:.10}",
        row.lp_constant.value, row.yudin_constant.value
    );
    for p in [50, 100, 200, 400, 800] {
        let r = yudin_bound(field, m, p)?;
        let scale = (p as f64).powf(exp);
        let lp: f64 = r.lp_bound.value.to_string().parse().unwrap_or(f64::NAN);
        println!(
            "  p = {p:>3}: lp / p^{exp} = {:.10}   yudin_raw / p^{exp} = {:.10}",
            lp / scale,
            r.yudin_raw / scale
        );
    }
    Ok(())
}
