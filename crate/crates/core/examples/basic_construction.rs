//! Builds the explicit system for a small decomposition, prints it, and
//! measures a few distances.

use halving::{
    build_system, classify_orbits, count_orbits, distance, quotient, BehaviorDecomposition,
    Result,
};

pub fn run_example() -> Result<String> {
    // one extra surviving fixed point, a glued pair of 2-cycles, one halving
    // orbit of length 2 over a quotient fixed point
    let dec = BehaviorDecomposition::from_u64s(&[2, 0], &[0, 1], &[1, 0])?;
    let sys = build_system(&dec)?;
    let mut out = sys.to_text(1000)?;
    out.push_str(&format!("a = {}\n", count_orbits(&sys)));
    out.push_str(&format!("b = {}\n", count_orbits(&quotient(&sys)?)));
    let raw = classify_orbits(&sys)?;
    out.push_str(&format!(
        "surviving {} glued {} halving {}\n",
        raw.surviving, raw.glued, raw.halving
    ));
    let points = sys.expand(1000)?.points;
    for (i, j) in [(0, 1), (1, 2), (2, 4), (4, 5)] {
        out.push_str(&format!(
            "d({}, {}) = {}\n",
            points[i],
            points[j],
            distance(&points[i], &points[j])
        ));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
