//! Lists the three path families for small lengths and checks the counts
//! against the lattice-walk DP.

use dyckstat::oracle::path_count;
use dyckstat::{enumerate, enumerate_primitive, PathKind};

fn main() -> dyckstat::Result<()> {
    for kind in [PathKind::Dyck, PathKind::PartialDyck(2), PathKind::FreeDyck] {
        let length = match kind {
            PathKind::PartialDyck(k) => 8 - k as usize,
            _ => 6,
        };
        let paths: Vec<String> = enumerate(kind, length)?.map(|p| p.to_string()).collect();
        println!("{kind:?}, length {length}: {} paths (dp says {})", paths.len(), path_count(kind, length));
        for chunk in paths.chunks(10) {
            println!("  {}", chunk.join(" "));
        }
    }

    let primitive: Vec<String> = enumerate_primitive(8)?.map(|p| p.to_string()).collect();
    println!("primitive, length 8: {}", primitive.join(" "));
    Ok(())
}
