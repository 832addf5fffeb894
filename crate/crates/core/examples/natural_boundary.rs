//! The auxiliary sequence c_n and a quotient of the tent map whose zeta
//! function has a natural boundary on its circle of convergence.

use halving::{c_sequence, decompose, natural_boundary_sequences, Result};

pub fn run_example() -> Result<String> {
    let c = c_sequence(16)?;
    let (a, b) = natural_boundary_sequences(32)?;
    let b = b.with_horizon(16);
    let mut out = String::from("n,c_n,a_n,b_n\n");
    for n in 1..=16 {
        out.push_str(&format!("{n},{},{},{}\n", c.get(n), a[n], b[n]));
    }
    out.push_str(&format!("b_4 = {} < {} = a_8\n", b[4], a[8]));
    let dec = decompose(&a, &b, 2)?;
    out.push_str(&format!("halving orbits: {}\n", dec.halving()));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
