//! Orbit growth ceil(lambda^n) upstairs and ceil(c eta^n) downstairs,
//! realized by an explicit pair of systems.

use halving::{
    build_system, cross_check, decompose, growth_sequences, GrowthSpec, Result,
};
use num_rational::BigRational;

pub fn run_example() -> Result<String> {
    let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
    let mut out = String::new();
    for (lambda, eta, c) in [(r(2, 1), r(3, 1), r(1, 1)), (r(5, 2), r(25, 4), r(1, 2))] {
        let spec = GrowthSpec::with_admissible_threshold(lambda, eta, c, 10)?;
        let (a, b) = growth_sequences(&spec);
        let dec = decompose(&a, &b, spec.threshold())?;
        let sys = build_system(&dec)?;
        cross_check(&dec, &sys)?;
        out.push_str(&format!(
            "lambda={} eta={} c={} ({:?}, threshold {})\n  a = {a}\n  b = {b}\n  points = {}\n",
            spec.lambda(),
            spec.eta(),
            spec.c(),
            spec.regime()?,
            spec.threshold(),
            sys.point_count()
        ));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
