//! Circle doubling halved by `x ↦ -x` gives the tent map: both zeta
//! functions are rational.

use halving::reproduce::run_example as reproduce;
use halving::Result;

pub fn run_example() -> Result<String> {
    Ok(reproduce("tent")?.to_csv())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
