//! Runs the verification suites and shows the brute-force work cap.

use dyckstat::formulas::CountId;
use dyckstat::oracle::{brute_count_with_cap, planned_work};
use dyckstat::verify::{run_suite, Suite};

fn main() {
    for suite in [Suite::Tables, Suite::Sequences, Suite::Series, Suite::Bijections] {
        let report = run_suite(suite, 6);
        println!("== {suite:?}\n{report}\n");
    }

    let work = planned_work(CountId::S, 12, 0, 0).unwrap();
    println!("scanning S(12, 0) would take about {work} steps");
    match brute_count_with_cap(CountId::S, 12, 0, 0, 1_000_000) {
        Ok(v) => println!("S(12, 0) = {v}"),
        Err(e) => println!("refused under a 10^6 cap: {e}"),
    }
}
