//! First-order corrections to split states in 1/d.

use symsplit::corrections::{first_order_corrections, two_row_convergence};
use symsplit::tableaux::YoungDiagram;

fn main() -> symsplit::Result<()> {
    let corr = first_order_corrections(&YoungDiagram::new(vec![5, 2])?, 2, &YoungDiagram::new(vec![4, 1])?)?;
    for (r, row) in corr.rows.iter().enumerate() {
        for (t, f) in corr.correction_of(r) {
            println!("delta |{}> += ({f}) |{}>", row.rm_tableau, corr.rows[t].rm_tableau);
        }
    }
    let conv = two_row_convergence(&[4, 8, 16, 32])?;
    for p in &conv.points {
        println!("d = {:>2}: |exact - inf| = {:.3e}, |exact - inf - first order| = {:.3e}", p.d, p.leading, p.first_order);
    }
    println!("fitted exponents: {:.3}, {:.3}", conv.leading_exponent, conv.first_order_exponent);

    let big = YoungDiagram::new(vec![9, 5, 2])?;
    let c3 = first_order_corrections(&big, 3, &YoungDiagram::new(vec![8, 4, 1])?)?;
    println!("\n{big}, m = 3: {} correction symbols, residual freedom {}", c3.terms.len(), c3.residual_dof);
    Ok(())
}
