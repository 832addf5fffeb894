//! Command-line front end. Every subcommand validates its inputs, computes,
//! and renders a [`Document`] as CSV or JSON.
//!
//! Exit codes: 0 success, 2 validation failure, 3 internal assertion breach.
//! Errors print `error code=<code>` on the first line of stderr, then a
//! human-readable message.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::{fixed_points_from_orbits, orbits_from_fixed_points, CountSequence};
use crate::combinatorics::{
    big_system_counts, check_bounds, check_constraints, decompose, growth_sequences,
    quotient_counts, BehaviorDecomposition, GrowthSpec,
};
use crate::error::{Error, Result};
use crate::format::{
    parse_decomposition_csv, parse_sequence_csv, parse_series_csv, Document, OutputFormat, Table,
};
use crate::rationality::{rationality_probe, Verdict};
use crate::reproduce;
use crate::system::{build_system, classify_orbits, count_orbits, cross_check, quotient};
use crate::zeta::{zeta_from_fixed_points, zeta_from_orbits};

/// Largest system `construct` will dump point by point.
pub const DUMP_LIMIT: usize = 100_000;

#[derive(Parser, Debug)]
#[command(
    name = "halving",
    version,
    about = "Orbit counts of systems with a commuting involution and of their quotients"
)]
pub struct Cli {
    /// Truncate inputs to this many lengths
    #[arg(long, global = true)]
    pub horizon: Option<usize>,
    /// Series truncation degree
    #[arg(long, global = true)]
    pub degree: Option<usize>,
    /// Threshold N0 for the existence recursion
    #[arg(long, global = true)]
    pub threshold: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ZetaForm {
    FixedPoints,
    Orbits,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the explicit system for a decomposition and cross-check its counts
    Construct { decomposition: PathBuf },
    /// Recover a decomposition from big-system and quotient orbit counts
    Decompose { a: PathBuf, b: PathBuf },
    /// Check the fixed-point and orbit bounds between a system and its quotient
    BoundsCheck { a: PathBuf, b: PathBuf },
    /// Zeta function coefficients from fixed-point or orbit counts
    Zeta {
        counts: PathBuf,
        #[arg(long, value_enum, default_value_t = ZetaForm::FixedPoints)]
        form: ZetaForm,
    },
    /// Heuristic search for a short linear recurrence in series coefficients
    Rationality {
        series: PathBuf,
        #[arg(long, default_value_t = 40)]
        max_order: usize,
        #[arg(long, default_value_t = 0.5)]
        fit_fraction: f64,
    },
    /// Regenerate a worked example and diff it against its golden file
    Example { name: String },
    /// Orbit sequences with prescribed growth rates, decomposed and realized
    Growth {
        #[arg(long, value_parser = parse_ratio)]
        lambda: BigRational,
        #[arg(long, value_parser = parse_ratio)]
        eta: BigRational,
        #[arg(long, value_parser = parse_ratio)]
        c: BigRational,
    },
}

/// Parses `p`, `p/q` or a finite decimal like `1.5` into an exact rational.
pub fn parse_ratio(s: &str) -> std::result::Result<BigRational, String> {
    let s = s.trim();
    let bad = || format!("'{s}' is not a rational number (use p/q or a decimal)");
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
        let scale = BigInt::from(10).pow(frac.len() as u32);
        return Ok(BigRational::new(digits, scale));
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(p))
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn read_sequence(path: &Path, horizon: Option<usize>) -> Result<CountSequence> {
    let seq = parse_sequence_csv(&read(path)?)?;
    Ok(match horizon {
        Some(0) => return Err(Error::NonPositive(0)),
        Some(h) => seq.with_horizon(h),
        None => seq,
    })
}

/// Runs one parsed command, returning the document to print.
pub fn execute(cli: &Cli) -> Result<Document> {
    match &cli.command {
        Command::Construct { decomposition } => {
            let mut dec = parse_decomposition_csv(&read(decomposition)?)?;
            if let Some(h) = cli.horizon {
                if h == 0 {
                    return Err(Error::NonPositive(0));
                }
                dec = dec.with_horizon(h)?;
            }
            construct(&dec)
        }
        Command::Decompose { a, b } => {
            let a = read_sequence(a, None)?;
            let b = read_sequence(b, cli.horizon)?;
            decompose_cmd(&a, &b, cli.threshold.unwrap_or(1))
        }
        Command::BoundsCheck { a, b } => {
            let a = read_sequence(a, None)?;
            let b = read_sequence(b, cli.horizon)?;
            bounds_check(&a, &b)
        }
        Command::Zeta { counts, form } => {
            let counts = read_sequence(counts, cli.horizon)?;
            zeta_cmd(&counts, *form, cli.degree.unwrap_or(counts.horizon()))
        }
        Command::Rationality {
            series,
            max_order,
            fit_fraction,
        } => {
            let mut series = parse_series_csv(&read(series)?)?;
            if let Some(d) = cli.degree {
                if d > series.degree() {
                    return Err(Error::TooFewCoefficients {
                        needed: d + 1,
                        got: series.degree() + 1,
                    });
                }
                series = series.truncate(d);
            }
            let report = rationality_probe(&series, *fit_fraction, *max_order)?;
            let mut doc = Document::new();
            doc.text("rationality", report.to_string());
            if let (Verdict::RecurrenceFound, Some(rec)) = (&report.verdict, &report.recurrence) {
                let mut t = Table::new(&["index", "connection", "numerator"]);
                let numerator = report.numerator.clone().unwrap_or_default();
                for i in 0..=rec.order().max(numerator.len().saturating_sub(1)) {
                    t.push(vec![
                        i.to_string(),
                        rec.connection().get(i).map(ToString::to_string).unwrap_or_default(),
                        numerator.get(i).map(ToString::to_string).unwrap_or_default(),
                    ]);
                }
                doc.table("rational function", t);
            }
            Ok(doc)
        }
        Command::Example { name } => reproduce::run_example(name),
        Command::Growth { lambda, eta, c } => {
            let horizon = cli.horizon.unwrap_or(12);
            let spec = match cli.threshold {
                Some(t) => GrowthSpec::new(lambda.clone(), eta.clone(), c.clone(), horizon, t)?,
                None => GrowthSpec::with_admissible_threshold(
                    lambda.clone(),
                    eta.clone(),
                    c.clone(),
                    horizon,
                )?,
            };
            growth_cmd(&spec)
        }
    }
}

/// Builds, quotients and classifies the system for `dec`, failing with
/// [`Error::CrossCheck`] if any simulated count disagrees with the analytic
/// one.
pub fn construct(dec: &BehaviorDecomposition) -> Result<Document> {
    let sys = build_system(dec)?;
    cross_check(dec, &sys)?;
    let a = count_orbits(&sys).with_horizon(2 * dec.horizon());
    let b = count_orbits(&quotient(&sys)?).with_horizon(dec.horizon());
    let raw = classify_orbits(&sys)?;
    let violations = check_constraints(&raw.halving, &raw.glued);
    if let Some(v) = violations.first() {
        return Err(Error::CrossCheck(format!("simulated system breaks a constraint: {v}")));
    }
    let bound_violations = check_bounds(&a, &b)?;
    if let Some(v) = bound_violations.first() {
        return Err(Error::CrossCheck(format!("simulated system breaks a bound: {v}")));
    }
    let mut doc = Document::new();
    match sys.to_text(DUMP_LIMIT) {
        Ok(text) => doc.text("system", text),
        Err(Error::TooLarge { points, limit }) => doc.text(
            "system",
            format!("not dumped: {points} points exceed the limit of {limit}\n"),
        ),
        Err(e) => return Err(e),
    };
    let raw_total = raw.total();
    doc.table(
        "orbit counts",
        Table::sequences(
            &["n", "a", "b", "O_surviving", "O_glued", "O_halving", "O_total"],
            &[
                &a,
                &b,
                &raw.surviving.with_horizon(a.horizon()),
                &raw.glued.with_horizon(a.horizon()),
                &raw.halving.with_horizon(a.horizon()),
                &raw_total.with_horizon(a.horizon()),
            ],
        ),
    )
    .facts(
        "summary",
        &[
            ("points".into(), sys.point_count().to_string()),
            ("fixed points".into(), sys.fixed_point_count().to_string()),
            ("cross-check".into(), "ok".into()),
        ],
    );
    Ok(doc)
}

pub fn decompose_cmd(a: &CountSequence, b: &CountSequence, threshold: usize) -> Result<Document> {
    let dec = decompose(a, b, threshold)?;
    let realized_a = big_system_counts(&dec);
    let realized_b = quotient_counts(&dec);
    if !realized_a.agrees_with(a, dec.horizon()) || realized_b != *b {
        return Err(Error::CrossCheck(
            "decomposition does not reproduce its input".into(),
        ));
    }
    let mut doc = Document::new();
    doc.table(
        "decomposition",
        Table::sequences(
            &["n", "surviving", "glued_pairs", "halving", "a", "b"],
            &[
                dec.surviving(),
                dec.glued_pairs(),
                dec.halving(),
                &realized_a,
                &realized_b,
            ],
        ),
    )
    .facts(
        "checks",
        &[
            ("threshold".into(), threshold.to_string()),
            ("b_n = s_n + g_n + h_n".into(), "ok".into()),
            ("a_n = s_n + 2 g_n + h_n/2".into(), "ok".into()),
            ("s_1 >= 1".into(), "ok".into()),
        ],
    );
    Ok(doc)
}

pub fn bounds_check(a: &CountSequence, b: &CountSequence) -> Result<Document> {
    let violations = check_bounds(a, b)?;
    if let Some(v) = violations.first() {
        return Err(Error::HypothesisViolated {
            index: v.index,
            hypothesis: format!("{v} ({} violation(s) in total)", violations.len()),
        });
    }
    let fa = fixed_points_from_orbits(a);
    let fb = fixed_points_from_orbits(b);
    let mut doc = Document::new();
    doc.table(
        "fixed points",
        Table::sequences(&["n", "F_big", "F_quot"], &[&fa.with_horizon(b.horizon()), &fb]),
    )
    .facts(
        "checks",
        &[
            ("horizon".into(), b.horizon().to_string()),
            ("violations".into(), "0".into()),
        ],
    );
    Ok(doc)
}

pub fn zeta_cmd(counts: &CountSequence, form: ZetaForm, degree: usize) -> Result<Document> {
    let (zeta, fixed, orbits) = match form {
        ZetaForm::FixedPoints => {
            let orbits = orbits_from_fixed_points(counts).ok();
            (zeta_from_fixed_points(counts, degree)?, counts.clone(), orbits)
        }
        ZetaForm::Orbits => (
            zeta_from_orbits(counts, degree)?,
            fixed_points_from_orbits(counts),
            Some(counts.clone()),
        ),
    };
    // both forms must agree whenever the orbit counts exist
    if let Some(o) = &orbits {
        let other = match form {
            ZetaForm::FixedPoints => zeta_from_orbits(o, degree)?,
            ZetaForm::Orbits => zeta_from_fixed_points(&fixed, degree)?,
        };
        if other != zeta {
            return Err(Error::CrossCheck("exp and product forms disagree".into()));
        }
    }
    let mut t = Table::new(&["degree", "numerator", "denominator"]);
    for (d, c) in zeta.coeffs().iter().enumerate() {
        t.push(vec![d.to_string(), c.numer().to_string(), c.denom().to_string()]);
    }
    let mut doc = Document::new();
    doc.table("zeta", t);
    Ok(doc)
}

pub fn growth_cmd(spec: &GrowthSpec) -> Result<Document> {
    let (a, b) = growth_sequences(spec);
    let dec = decompose(&a, &b, spec.threshold())?;
    let sys = build_system(&dec)?;
    cross_check(&dec, &sys)?;
    let mut doc = Document::new();
    doc.table(
        "sequences",
        Table::sequences(
            &["n", "a", "b", "surviving", "glued_pairs", "halving"],
            &[&a, &b, dec.surviving(), dec.glued_pairs(), dec.halving()],
        ),
    )
    .facts(
        "summary",
        &[
            ("lambda".into(), spec.lambda().to_string()),
            ("eta".into(), spec.eta().to_string()),
            ("c".into(), spec.c().to_string()),
            ("regime".into(), format!("{:?}", spec.regime()?).to_lowercase()),
            ("threshold".into(), spec.threshold().to_string()),
            ("points".into(), sys.point_count().to_string()),
            ("cross-check".into(), "ok".into()),
        ],
    );
    Ok(doc)
}

/// Output of a whole invocation: exit code plus the bytes for each stream.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command. Output
/// files named by `--output` are written here; nothing touches the real
/// stdout or stderr.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: format!("error code=usage\n{text}"),
                }
            };
        }
    };
    let result = execute(&cli).and_then(|doc| {
        let rendered = doc.render(cli.format.into());
        match &cli.output {
            Some(path) => {
                fs::File::create(path)?.write_all(rendered.as_bytes())?;
                Ok(String::new())
            }
            None => Ok(rendered),
        }
    });
    match result {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: if e.is_internal() { 3 } else { 2 },
            stdout: String::new(),
            stderr: format!("error code={}\n{e}\n", e.code()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios() {
        assert_eq!(parse_ratio("3/2").unwrap(), BigRational::new(3.into(), 2.into()));
        assert_eq!(parse_ratio("1.25").unwrap(), BigRational::new(5.into(), 4.into()));
        assert_eq!(parse_ratio("2").unwrap(), BigRational::from_integer(2.into()));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("x").is_err());
        assert!(parse_ratio("1.").is_err());
    }

    #[test]
    fn construct_examples() {
        let dec = BehaviorDecomposition::from_u64s(&[1], &[0], &[0]).unwrap();
        let doc = construct(&dec).unwrap().to_csv();
        assert!(doc.contains("points 1\n"));
        assert!(doc.contains("n,a,b,"));
        assert!(doc.contains("\n1,1,1,"));

        let dec = BehaviorDecomposition::from_u64s(&[1], &[1], &[0]).unwrap();
        let doc = construct(&dec).unwrap().to_csv();
        assert!(doc.contains("\n1,3,2,"));
    }

    #[test]
    fn cross_check_rejects_a_foreign_system() {
        let dec = BehaviorDecomposition::from_u64s(&[1], &[1], &[0]).unwrap();
        let other = build_system(&BehaviorDecomposition::from_u64s(&[1], &[0], &[1]).unwrap())
            .unwrap();
        let err = cross_check(&dec, &other).unwrap_err();
        assert!(matches!(err, Error::CrossCheck(_)));
        assert!(err.is_internal());
    }

    #[test]
    fn decompose_command() {
        let a = CountSequence::from_u64s(&[2, 1]).unwrap();
        let doc = decompose_cmd(&a, &a, 1).unwrap().to_csv();
        assert!(doc.contains("1,2,0,0,2,2\n2,1,0,0,1,1\n"));
    }

    #[test]
    fn zeta_command_geometric() {
        let o = CountSequence::from_u64s(&[1, 0, 0]).unwrap();
        let doc = zeta_cmd(&o, ZetaForm::Orbits, 3).unwrap().to_csv();
        assert!(doc.ends_with("0,1,1\n1,1,1\n2,1,1\n3,1,1\n"));
    }

    #[test]
    fn exit_codes() {
        let out = run(["halving", "example", "nope"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.starts_with("error code=unknown_example\n"));
        let out = run(["halving", "frobnicate"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.starts_with("error code=usage\n"));
        let out = run(["halving", "--help"]);
        assert_eq!(out.code, 0);
    }
}
