//! Linear programming bound versus Yudin-type bound on the projective line
//! over C and H, and the oscillation of their difference over H.

use projbound::bounds::{delta_c, delta_h, oscillation_report, table_rows};
use projbound::cli::{render_oscillation, render_table, TableFormat};
use projbound::{yudin_bound, Field, Result};

fn main() -> Result<()> {
    for field in [Field::C, Field::H] {
        let rows = table_rows(field, 2, 2, 30)?;
        print!("{}", render_table(field, 2, &rows, TableFormat::Markdown));
        println!();
    }

    let c: Vec<String> = (2..=40).step_by(2).map(|p| delta_c(p).map(|d| d.to_string())).collect::<Result<_>>()?;
    let h: Vec<String> = (2..=40).step_by(2).map(|p| delta_h(p).map(|d| d.to_string())).collect::<Result<_>>()?;
    println!("Delta_C, p = 2..40: {}", c.join(" "));
    println!("Delta_H, p = 2..40: {}\n", h.join(" "));

    print!("{}", render_oscillation(&oscillation_report(24)?, TableFormat::Markdown));

    let r = yudin_bound(Field::R, 5, 20)?;
    println!(
        "\nR^5, p = 20: lp = {}, yudin = {} (raw {:.6})",
        r.lp_bound.value, r.yudin_bound, r.yudin_raw
    );
    Ok(())
}
