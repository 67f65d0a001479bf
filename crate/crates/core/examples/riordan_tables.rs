//! Rebuilds every triangle from its Riordan pair and prints it next to the
//! stored rows, flagging cells that differ.

use dyckstat::series::{catalan_series, central_binomial_series, table_array};
use dyckstat::tables::TABLES;

fn main() -> dyckstat::Result<()> {
    let c = catalan_series(8);
    let p = central_binomial_series(8);
    println!("C = {c}");
    println!("P = {p}");
    println!("C^3 P = {}", (&(&c * &c) * &(&c * &p)));

    for t in TABLES {
        let rows = t.printed.len();
        let a = table_array(t.id, rows - 1)?;
        println!("\ntable {} ({}), proper: {}", t.id, t.title, a.is_proper());
        for (n, printed) in t.printed.iter().enumerate() {
            let mut line = String::new();
            for (k, &v) in printed.iter().enumerate() {
                let e = a.entry(n, k)?;
                if e == v.into() {
                    line.push_str(&format!("{e:>6}"));
                } else {
                    line.push_str(&format!("{e:>6}(printed {v})"));
                }
            }
            println!("{line}");
        }
        println!("row sums: {}", a.row_sums());
    }
    Ok(())
}
