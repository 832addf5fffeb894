//! Rational and irrational zeta functions on either side of a quotient.

use halving::reproduce::run_example as reproduce;
use halving::Result;

pub fn run_example() -> Result<String> {
    Ok(reproduce("irrational-quotient")?.to_csv())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
