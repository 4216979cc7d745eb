//! Split labels of an S_N irrep and the subduction matrix for one r_n.

use symsplit::splitbasis::{enumerate_split_labels, transformation_matrix};
use symsplit::tableaux::YoungDiagram;

fn main() -> symsplit::Result<()> {
    let big = YoungDiagram::new(vec![7, 4, 1])?;
    let m = 3;
    for c in enumerate_split_labels(&big, m)? {
        println!("r_n = {:<10} r_m = {:<8} multiplicity {}", c.rn.to_string(), c.rm.to_string(), c.multiplicity);
    }
    let rn = YoungDiagram::new(vec![6, 3])?;
    let tm = transformation_matrix(&big, m, &rn)?;
    println!("\nrows: split states, columns: removal words (a_m..a_1)");
    for (row, vals) in tm.rows.iter().zip(tm.matrix.to_strings()) {
        println!("{} {}  |  {}", row.rm_tableau, row.pattern, vals.join(", "));
    }
    println!("orthogonal: {}", tm.matrix.is_orthogonal()?);
    for w in &tm.warnings {
        println!("warning: {w}");
    }
    Ok(())
}
