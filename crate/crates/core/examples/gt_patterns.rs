//! Gelfand-Tsetlin patterns of a U(p) irrep grouped by their Delta-weight.

use std::collections::BTreeMap;

use symsplit::gt::{delta_weight, dim_unitary, enumerate_gt_patterns};

fn main() -> symsplit::Result<()> {
    let top = [3i64, 1, 0, 0];
    let pats = enumerate_gt_patterns(&top)?;
    println!("Dim{top:?} = {} ({} patterns)", dim_unitary(&top)?, pats.len());
    let mut classes: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for p in &pats {
        *classes.entry(delta_weight(p).0).or_default() += 1;
    }
    for (delta, count) in classes {
        println!("  Delta {delta:?}: inner multiplicity {count}");
    }
    Ok(())
}
