//! Matrices of permutations on a sector, including the straddling two-cycle.

use symsplit::perm::Permutation;
use symsplit::rep::{element_matrix, straddling_block, Mode, Sector};
use symsplit::tableaux::YoungDiagram;

fn main() -> symsplit::Result<()> {
    let sec = Sector::new(&YoungDiagram::new(vec![12, 7, 3])?, 3, &YoungDiagram::new(vec![10, 6, 1])?)?;
    println!("sector of {} states, window {}", sec.dim(), sec.window);
    let s = straddling_block(&sec)?;
    println!("straddling block symmetric: {}, involutory: {}", s.is_symmetric(), s.checked_mul(&s)?.is_identity());

    let sigma = Permutation::from_cycles(sec.m + sec.window, "(3,4,5)")?;
    let limit = element_matrix(&sec, &sigma, Mode::Limit)?;
    let exact = element_matrix(&sec, &sigma, Mode::Exact)?;
    let diff = limit.to_f64().iter().zip(exact.to_f64()).flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()).collect::<Vec<_>>()).fold(0.0, f64::max);
    println!("{}: max |limit - exact| = {diff:.4}", sigma.to_cycle_string());
    for w in &sec.warnings {
        println!("warning: {w}");
    }
    Ok(())
}
