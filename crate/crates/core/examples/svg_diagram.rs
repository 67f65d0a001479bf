//! Writes SVG drawings of a marked path and its image pair into the
//! system temp directory.

use std::fs;

use dyckstat::bijection::theta;
use dyckstat::path::p;
use dyckstat::svg::{render_marked, render_pair, Diagram};
use dyckstat::{MarkedPath, Statistic};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = MarkedPath::at_turn(p("uduuuduuududduuddudddduudd"), Statistic::Valley, 12)?;
    let pair = theta(&m)?;
    let dir = std::env::temp_dir();

    let files = [
        ("dyckstat_marked.svg", render_marked(&m)),
        ("dyckstat_pair.svg", render_pair(&pair)),
        ("dyckstat_both.svg", Diagram::new().marked(&m).pair(&pair).render()),
    ];
    for (name, svg) in files {
        let out = dir.join(name);
        fs::write(&out, svg)?;
        println!("wrote {}", out.display());
    }
    Ok(())
}
