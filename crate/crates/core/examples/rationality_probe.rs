//! Looks for short linear recurrences in zeta coefficients.

use halving::{rationality_probe, theta_series, PowerSeries, Result};

pub fn run_example() -> Result<String> {
    let d = 80;
    let rational = &PowerSeries::geometric(1, d) * &PowerSeries::geometric(2, d);
    let irrational = &theta_series(d) * &PowerSeries::geometric(2, d);
    let mut out = String::new();
    for (name, series) in [("1/((1-z)(1-2z))", rational), ("theta/(1-2z)", irrational)] {
        let report = rationality_probe(&series, 0.5, 30)?;
        out.push_str(&format!("{name}\n{report}\n"));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
