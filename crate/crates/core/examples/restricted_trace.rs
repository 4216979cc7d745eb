//! Restricted character of the straddling two-cycle along a two-row family.

use symsplit::oracle::exact_restricted_trace;
use symsplit::rep::{restricted_trace_straddling, two_row_closed_forms, TwoRowParams};

fn main() -> symsplit::Result<()> {
    println!("{:>3} {:>12} {:>12} {:>12} {:>12} {:>8}", "d", "leading", "limit", "exact", "brute", "bound");
    for d in [2usize, 4, 8, 16] {
        let p = TwoRowParams::new(1 + d, 1, 2, 2, 1)?;
        let cf = two_row_closed_forms(&p)?;
        let limit = restricted_trace_straddling(&p.big(), &p.rn(), &p.rm())?;
        let brute = exact_restricted_trace(&p.big(), &p.rn(), &p.rm())?;
        let bound = cf.bound.map(|b| b.to_string()).unwrap_or_default();
        println!("{d:>3} {:>12} {:>12} {:>12} {:>12} {bound:>8}", cf.leading.to_string(), limit.to_string(), cf.exact.to_string(), brute.to_string());
    }
    Ok(())
}
