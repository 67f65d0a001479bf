//! Scans the peaks and valleys of one path, then tallies symmetric peaks by
//! weight over all Dyck paths of semilength 5.

use std::collections::BTreeMap;

use dyckstat::path::p;
use dyckstat::stats::{count_stat, scan_records, Filter};
use dyckstat::{enumerate, PathKind, Statistic, SymmetryClass};

fn main() -> dyckstat::Result<()> {
    let path = p("uduuuduudududuuddddudduudd");
    println!("{path}");
    for statistic in [Statistic::Peak, Statistic::Valley] {
        for r in scan_records(&path, statistic) {
            println!(
                "  {statistic:?} at turn {:>2}: runs {}+{}, weight {}, {}",
                r.turn,
                r.first,
                r.second,
                r.weight(),
                r.class()
            );
        }
    }

    let mut by_weight = BTreeMap::new();
    for path in enumerate(PathKind::Dyck, 10)? {
        for r in scan_records(&path, Statistic::Peak) {
            if r.class() == SymmetryClass::Symmetric {
                *by_weight.entry(r.weight()).or_insert(0u64) += 1;
            }
        }
    }
    println!("symmetric peaks in Dyck paths of semilength 5, by weight: {by_weight:?}");

    let filter = Filter::new(Some(SymmetryClass::LeftAsymmetric), None);
    let total: usize = enumerate(PathKind::Dyck, 10)?.map(|q| count_stat(&q, Statistic::Peak, filter)).sum();
    println!("left-asymmetric peaks, all weights: {total}");
    Ok(())
}
