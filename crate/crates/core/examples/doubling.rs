//! Doubles a system and checks the zeta identity for the double.

use halving::{
    build_system, count_orbits, double_system, doubling_zeta_identity_check,
    fixed_points_from_orbits, quotient, BehaviorDecomposition, Result,
};

pub fn run_example() -> Result<String> {
    let dec = BehaviorDecomposition::from_u64s(&[1, 1, 2], &[0, 0, 0], &[0, 0, 0])?;
    let s = build_system(&dec)?;
    let t = double_system(&s)?;
    let f_s = fixed_points_from_orbits(&count_orbits(&s));
    let f_t = fixed_points_from_orbits(&count_orbits(&t).with_horizon(6));
    let mut out = format!("F_S = {f_s}\nF_T = {f_t}\n");
    out.push_str(&format!(
        "quotient of T has orbits {}\n",
        count_orbits(&quotient(&t)?)
    ));
    out.push_str(&format!(
        "zeta_T(z) = zeta_S(z) zeta_S(-z): {}\n",
        doubling_zeta_identity_check(&f_s.with_horizon(6), 6)?
    ));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
