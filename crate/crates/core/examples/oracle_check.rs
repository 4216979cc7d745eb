//! Brute-force isotypic ranks against inner-multiplicity predictions.

use symsplit::oracle::{predicted_multiplicity, skew_is_column_disjoint, SplitOracle};
use symsplit::splitbasis::sub_diagrams;
use symsplit::tableaux::YoungDiagram;

fn main() -> symsplit::Result<()> {
    let big = YoungDiagram::new(vec![4, 2])?;
    let m = 2;
    let mut oracle = SplitOracle::new(&big, m)?;
    for rn in sub_diagrams(&big, m) {
        for rm in YoungDiagram::partitions(m, m) {
            let got = oracle.multiplicity(&rn, &rm)?;
            let want = predicted_multiplicity(&big, &rn, &rm)?;
            let note = if skew_is_column_disjoint(&big, &rn) { "" } else { "  (boxes share a column)" };
            println!("{rn} x {rm}: oracle {got}, predicted {want}{note}");
        }
    }
    Ok(())
}
