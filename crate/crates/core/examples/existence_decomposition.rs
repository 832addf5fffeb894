//! Recovers surviving, glued and halving orbit counts from a pair of orbit
//! count sequences, and shows a pair that is rejected.

use halving::{check_bounds, decompose, quotient_counts, CountSequence, Result};

pub fn run_example() -> Result<String> {
    let a = CountSequence::from_u64s(&[1, 2, 2, 3])?;
    let b = CountSequence::from_u64s(&[2, 1])?;
    let dec = decompose(&a, &b, 1)?;
    let mut out = format!(
        "s = {}\ng = {}\nh = {}\nquotient = {}\n",
        dec.surviving(),
        dec.glued_pairs(),
        dec.halving(),
        quotient_counts(&dec)
    );
    out.push_str(&format!("bound violations: {}\n", check_bounds(&a, &b)?.len()));
    // b_1 = a_1 / 2 leaves no surviving fixed point
    match decompose(&CountSequence::from_u64s(&[4, 2])?, &CountSequence::from_u64s(&[2, 2])?, 3) {
        Err(e) => out.push_str(&format!("rejected: {e}\n")),
        Ok(_) => out.push_str("accepted\n"),
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
