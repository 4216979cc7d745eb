//! Exact arithmetic in sums of rational multiples of square roots.

use symsplit::{surd_sqrt, Rational, SurdSum};

fn main() -> symsplit::Result<()> {
    let a = surd_sqrt(Rational::new(1, 3))?;
    let b: SurdSum = "-1/24*sqrt(6)".parse()?;
    println!("sqrt(1/3)        = {a}");
    println!("a * b            = {}", a.checked_mul(&b)?);
    println!("a + b            = {}", a.checked_add(&b)?);
    println!("(a + b)^2        = {}", a.checked_add(&b)?.square()?);
    println!("as float         = {:.12}", a.checked_add(&b)?.to_f64());
    Ok(())
}
