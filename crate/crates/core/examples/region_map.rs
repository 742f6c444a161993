//! Counts of each region label on the admissible (α², δ) grid at several
//! temperatures.

use std::collections::BTreeMap;

use landauer::analysis::{admissible_grid, region_map_max_point};

fn main() -> landauer::Result<()> {
    let points = admissible_grid(120);
    println!("{} admissible grid points", points.len());
    for beta in [10.0, 2.0, 1.0, 0.5, 0.1] {
        let mut counts = BTreeMap::new();
        for label in region_map_max_point(beta, &points)? {
            *counts.entry(label.as_str()).or_insert(0usize) += 1;
        }
        println!("β = {beta:>4}: {counts:?}");
    }
    Ok(())
}
