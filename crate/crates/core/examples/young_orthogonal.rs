//! Young's orthogonal form for one shape, exact and in the large-row limit.

use symsplit::tableaux::{enumerate_standard_tableaux, yy_matrix, YoungDiagram};

fn main() -> symsplit::Result<()> {
    let shape = YoungDiagram::new(vec![3, 2])?;
    println!("{shape}: d = {}", shape.dimension()?);
    for t in enumerate_standard_tableaux(&shape) {
        println!("  {t}");
    }
    for k in 1..shape.size() {
        let exact = yy_matrix(&shape, k, true)?;
        println!("(k, k+1) with k = {k}:");
        for row in exact.to_strings() {
            println!("  {}", row.join("  "));
        }
    }
    let limit = yy_matrix(&YoungDiagram::new(vec![6, 2])?, 3, false)?;
    println!("limit (3,4) on [6,2] is diagonal: {}", (0..limit.nrows()).all(|i| (0..limit.ncols()).all(|j| i == j || limit.get(i, j).is_zero())));
    Ok(())
}
