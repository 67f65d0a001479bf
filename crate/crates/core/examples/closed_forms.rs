//! Evaluates each counting sequence three ways: binomial closed form,
//! generating-function coefficient and exhaustive scan.

use dyckstat::formulas::{count, CountId};
use dyckstat::oracle::brute_count;
use dyckstat::verify::{evaluate, Method};

fn main() -> dyckstat::Result<()> {
    let (k, r) = (1, 2);
    for id in CountId::ALL {
        let start = if matches!(id, CountId::SpPartial | CountId::LpPartial) { r } else { 0 };
        let mut row = Vec::new();
        for n in start..start + 6 {
            let f = count(id, n, k, r)?;
            let s = evaluate(Method::Series, id, n, k, r)?;
            let b = brute_count(id, n, k, r)?;
            assert!(f == s && s == b, "{id} at n={n}: {f} {s} {b}");
            row.push(f.to_string());
        }
        println!("{:<12} arity {}  {}", id.name(), id.arity(), row.join(", "));
    }
    println!("closed forms, series and scans agree (k = {k}, r = {r})");

    let big = count(CountId::SpTotal, 200, 0, 0)?;
    println!("SP_TOTAL(200) = {big}");
    Ok(())
}
