//! Periodic points versus closed orbits, and the two forms of the zeta
//! function.

use halving::{
    fixed_points_from_orbits, mobius, orbits_from_fixed_points, sigma, zeta_from_fixed_points,
    zeta_from_orbits, CountSequence, Result,
};

pub fn run_example() -> Result<String> {
    let mut out = String::new();
    // binary necklaces: 2^n points of period n
    let fixed = CountSequence::from_fn(12, |n| num_bigint::BigUint::from(2u32).pow(n as u32));
    let orbits = orbits_from_fixed_points(&fixed)?;
    out.push_str(&format!("F = {fixed}\nO = {orbits}\n"));
    assert_eq!(fixed_points_from_orbits(&orbits), fixed);

    let mu: Vec<i8> = (1..=12).map(mobius).collect::<Result<_>>()?;
    let sig: Vec<String> = (1..=12).map(|n| sigma(n).map(|s| s.to_string())).collect::<Result<_>>()?;
    out.push_str(&format!("mu    = {mu:?}\nsigma = {}\n", sig.join(",")));

    let exp_form = zeta_from_fixed_points(&fixed, 12)?;
    let product_form = zeta_from_orbits(&orbits, 12)?;
    assert_eq!(exp_form, product_form);
    out.push_str(&format!("zeta  = {exp_form}\n"));

    // F(2) - F(1) counts points on 2-cycles, so it must be even
    for f in [[3u64, 4], [1, 3]] {
        match orbits_from_fixed_points(&CountSequence::from_u64s(&f)?) {
            Err(e) => out.push_str(&format!("{f:?}: {e}\n")),
            Ok(o) => out.push_str(&format!("{f:?} -> orbits {o}\n")),
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
