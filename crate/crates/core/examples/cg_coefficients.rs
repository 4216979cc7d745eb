//! Clebsch-Gordan coefficients: one fundamental coupling and a composite chain.

use symsplit::cg::{composite_cg, fundamental_cg_patterns};
use symsplit::gt::GtPattern;
use symsplit::splitbasis::slot_states_with_counts;
use symsplit::tableaux::StandardTableau;

fn main() -> symsplit::Result<()> {
    let parent = GtPattern::new(vec![vec![2, 1, 0, 0], vec![2, 0, 0], vec![1, 0], vec![0]])?;
    let child = GtPattern::new(vec![vec![3, 1, 0, 0], vec![2, 1, 0], vec![2, 0], vec![1]])?;
    println!("{parent} (x) a=1 -> {child}: {}", fundamental_cg_patterns(&parent, 1, &child)?);

    let s = StandardTableau::from_rows(vec![vec![1, 2], vec![3]])?;
    let m = GtPattern::new(vec![vec![2, 1, 0], vec![1, 1], vec![1]])?;
    for t in slot_states_with_counts(&m.row_weight()) {
        println!("C^{m}_{t} for {s}: {}", composite_cg(&s, &m, &t.slots)?);
    }
    Ok(())
}
