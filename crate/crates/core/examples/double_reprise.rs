//! An irrational zeta function whose double is rational.

use halving::reproduce::run_example as reproduce;
use halving::Result;

pub fn run_example() -> Result<String> {
    Ok(reproduce("double-reprise")?.to_csv())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
