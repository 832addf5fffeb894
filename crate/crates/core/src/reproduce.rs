//! Worked examples regenerated from scratch and diffed against golden files.
//!
//! Each example recomputes its numbers, asserts the identities it is about
//! (failures surface as [`Error::CrossCheck`]) and renders a [`Document`]. The
//! CSV rendering must match `golden/<name>.csv` byte for byte.

use std::fmt::Display;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{
    fixed_points_from_orbits, is_prime, orbits_from_fixed_points, pow2, sigma, CountSequence,
};
use crate::boundary::{c_sequence, natural_boundary_sequences};
use crate::combinatorics::{
    check_bounds, decompose, growth_sequences, quotient_counts, BehaviorDecomposition, GrowthSpec,
};
use crate::error::{Error, Result};
use crate::format::{Document, Table};
use crate::rationality::{rationality_probe, RationalityReport, Verdict};
use crate::series::PowerSeries;
use crate::system::{build_system, count_orbits, cross_check, double_system, quotient};
use crate::zeta::{
    double_reprise_fixed_points, doubled_fixed_points, doubling_zeta_identity_check,
    log_derivative_counts, phi_series, theta_series, zeta_from_fixed_points, zeta_from_orbits,
};

pub const EXAMPLES: [&str; 5] = [
    "tent",
    "double-reprise",
    "irrational-quotient",
    "natural-boundary",
    "growth",
];

pub fn golden(name: &str) -> Option<&'static str> {
    Some(match name {
        "tent" => include_str!("../golden/tent.csv"),
        "double-reprise" => include_str!("../golden/double-reprise.csv"),
        "irrational-quotient" => include_str!("../golden/irrational-quotient.csv"),
        "natural-boundary" => include_str!("../golden/natural-boundary.csv"),
        "growth" => include_str!("../golden/growth.csv"),
        _ => return None,
    })
}

/// Builds the named example without comparing it to its golden file.
pub fn example_document(name: &str) -> Result<Document> {
    match name {
        "tent" => tent(),
        "double-reprise" => double_reprise(),
        "irrational-quotient" => irrational_quotient(),
        "natural-boundary" => natural_boundary(),
        "growth" => growth(),
        _ => Err(Error::UnknownExample(name.to_string())),
    }
}

/// Builds the named example and diffs its CSV rendering against the golden
/// file.
pub fn run_example(name: &str) -> Result<Document> {
    let expected = golden(name).ok_or_else(|| Error::UnknownExample(name.to_string()))?;
    let doc = example_document(name)?;
    compare_golden(name, &doc.to_csv(), expected)?;
    Ok(doc)
}

/// First differing line (1-based) between `actual` and `expected`.
pub fn compare_golden(name: &str, actual: &str, expected: &str) -> Result<()> {
    if actual == expected {
        return Ok(());
    }
    let mut a = actual.lines();
    let mut e = expected.lines();
    let mut line = 1;
    loop {
        match (a.next(), e.next()) {
            (Some(x), Some(y)) if x == y => line += 1,
            _ => break,
        }
    }
    Err(Error::GoldenMismatch {
        name: name.to_string(),
        line,
    })
}

/// Key/value facts; each check either records `ok` or aborts the example.
#[derive(Default)]
struct Facts(Vec<(String, String)>);

impl Facts {
    fn value(&mut self, key: &str, v: impl Display) {
        self.0.push((key.to_string(), v.to_string()));
    }

    fn check(&mut self, key: &str, holds: bool) -> Result<()> {
        if !holds {
            return Err(Error::CrossCheck(format!("example check failed: {key}")));
        }
        self.value(key, "ok");
        Ok(())
    }

    fn probe(&mut self, key: &str, report: &RationalityReport) {
        match (&report.verdict, &report.recurrence) {
            (Verdict::RecurrenceFound, Some(rec)) => {
                self.value(&format!("{key} verdict"), "recurrence_found");
                self.value(&format!("{key} order"), rec.order());
                self.value(&format!("{key} denominator degree"), rec.denominator_degree());
            }
            _ => {
                self.value(&format!("{key} verdict"), "no_short_recurrence");
                let last = report.linear_complexity_profile.last().copied().unwrap_or(0);
                self.value(&format!("{key} final linear complexity"), last);
            }
        }
        self.value(
            &format!("{key} window"),
            format!(
                "fit 0..={} validate 0..={} max order {}",
                report.fit_degree, report.validation_degree, report.max_order
            ),
        );
    }
}

fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn geometric_times(numerator: &[i64], ratio: i64, degree: usize) -> PowerSeries {
    &PowerSeries::polynomial(numerator, degree) * &PowerSeries::geometric(ratio, degree)
}

/// `1 / ((1 - z)(1 - 2z))`.
fn one_and_two(degree: usize) -> PowerSeries {
    &PowerSeries::geometric(1, degree) * &PowerSeries::geometric(2, degree)
}

fn tent_orbits(horizon: usize) -> Result<CountSequence> {
    orbits_from_fixed_points(&CountSequence::from_fn(horizon, pow2))
}

fn signed_table(headers: &[&str], columns: &[Vec<BigInt>]) -> Table {
    let mut t = Table::new(headers);
    let horizon = columns.iter().map(Vec::len).max().unwrap_or(0);
    for n in 1..=horizon {
        let mut row = vec![n.to_string()];
        row.extend(columns.iter().map(|c| c[n - 1].to_string()));
        t.push(row);
    }
    t
}

/// Natural log of a positive big integer, good to double precision.
fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().expect("fits").ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("fits").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Circle doubling modulo `x ↦ -x`: the quotient is the tent map.
fn tent() -> Result<Document> {
    const N: usize = 20;
    let f_big = CountSequence::from_fn(2 * N, |n| pow2(n) - 1u32);
    let f_quot = CountSequence::from_fn(N, pow2);
    let o_big = orbits_from_fixed_points(&f_big)?;
    let o_quot = orbits_from_fixed_points(&f_quot)?;
    let zeta_big = zeta_from_fixed_points(&f_big, N)?;
    let zeta_big_product = zeta_from_orbits(&o_big, N)?;
    let zeta_quot = zeta_from_fixed_points(&f_quot, N)?;

    let mut facts = Facts::default();
    facts.check(
        "zeta big == (1-z)/(1-2z)",
        zeta_big == geometric_times(&[1, -1], 2, N),
    )?;
    facts.check("zeta quotient == 1/(1-2z)", zeta_quot == PowerSeries::geometric(2, N))?;
    facts.check("exp form == product form", zeta_big == zeta_big_product)?;
    facts.check(
        "log derivative recovers F",
        log_derivative_counts(&zeta_big)? == f_big.with_horizon(N),
    )?;
    let violations = check_bounds(&o_big, &o_quot)?;
    facts.check("fixed-point and orbit bounds hold", violations.is_empty())?;
    let degree = 60;
    let big_probe = rationality_probe(
        &geometric_times(&[1, -1], 2, degree),
        0.5,
        10,
    )?;
    let quot_probe = rationality_probe(&PowerSeries::geometric(2, degree), 0.5, 10)?;
    facts.probe("probe zeta big", &big_probe);
    facts.probe("probe zeta quotient", &quot_probe);

    let mut doc = Document::new();
    doc.table(
        "periodic points and orbits",
        Table::sequences(
            &["n", "F_big", "O_big", "F_quot", "O_quot"],
            &[
                &f_big.with_horizon(N),
                &o_big.with_horizon(N),
                &f_quot,
                &o_quot,
            ],
        ),
    )
    .table(
        "zeta coefficients",
        Table::series(&["degree", "zeta_big", "zeta_quot"], &[&zeta_big, &zeta_quot]),
    )
    .facts("checks", &facts.0);
    Ok(doc)
}

/// A system whose zeta function is irrational but whose double is rational.
fn double_reprise() -> Result<Document> {
    const N: usize = 30;
    let f_s = double_reprise_fixed_points(N);
    let o_s = orbits_from_fixed_points(&f_s)?;
    let f_t = doubled_fixed_points(&f_s);
    let zeta_t = zeta_from_fixed_points(&f_t, N)?;
    let zeta_s = zeta_from_fixed_points(&f_s, N)?;
    let phi = phi_series(N);

    let mut facts = Facts::default();
    facts.check("orbit counts of S are integral to n=30", true)?;
    let expected_t = (&PowerSeries::polynomial(&[1, 0, -1], N)
        * &PowerSeries::polynomial(&[1, 0, -4], N))
        .inverse()?;
    facts.check("zeta T == 1/((1-z^2)(1-4z^2))", zeta_t == expected_t)?;
    facts.check("zeta T == zeta S(z) zeta S(-z)", doubling_zeta_identity_check(&f_s, N)?)?;
    let vanishing = (0..=N).all(|m| {
        let vanishes = m % 2 == 0 || m == 1 || is_prime(m as u64);
        phi.coeff(m).is_zero() == vanishes
    });
    facts.check("phi vanishes exactly at even n, 1 and odd primes", vanishing)?;

    // explicit systems: S with trivial involution, T its double
    const M: usize = 8;
    let dec = BehaviorDecomposition::new(
        o_s.with_horizon(M),
        CountSequence::zeros(M),
        CountSequence::zeros(M),
    )?;
    let s_sys = build_system(&dec)?;
    cross_check(&dec, &s_sys)?;
    let t_sys = double_system(&s_sys)?;
    let o_t = count_orbits(&t_sys);
    facts.check(
        "simulated F_T matches 0 / 2F_S to n=8",
        fixed_points_from_orbits(&o_t.with_horizon(M)) == f_t.with_horizon(M),
    )?;
    facts.check(
        "quotient of the double recovers S",
        count_orbits(&quotient(&t_sys)?).same_counts(&o_s.with_horizon(M)),
    )?;
    facts.value("points in S to n=8", s_sys.point_count());
    facts.value("points in T to n=8", t_sys.point_count());

    let degree = 60;
    let probe_t = rationality_probe(
        &(&PowerSeries::polynomial(&[1, 0, -1], degree)
            * &PowerSeries::polynomial(&[1, 0, -4], degree))
            .inverse()?,
        0.5,
        20,
    )?;
    let probe_s = rationality_probe(&zeta_from_fixed_points(&double_reprise_fixed_points(degree), degree)?, 0.5, 20)?;
    facts.probe("probe zeta T", &probe_t);
    facts.probe("probe zeta S", &probe_s);

    let mut doc = Document::new();
    doc.table(
        "counts",
        Table::sequences(&["n", "F_S", "O_S", "F_T"], &[&f_s, &o_s, &f_t]),
    )
    .table(
        "series",
        Table::series(&["degree", "zeta_S", "zeta_T", "phi"], &[&zeta_s, &zeta_t, &phi]),
    )
    .facts("checks", &facts.0);
    Ok(doc)
}

/// Rational big system over an irrational quotient, and the reverse.
fn irrational_quotient() -> Result<Document> {
    const N: usize = 30;
    let tent = tent_orbits(N)?;
    let theta = theta_series(N);
    let mut facts = Facts::default();

    // forward: one glued pair per length, the rest of the tent orbits survive
    let forward = BehaviorDecomposition::new(
        CountSequence::from_fn(N, |n| &tent[n] - 1u32),
        CountSequence::from_fn(N, |_| 1u32.into()),
        CountSequence::zeros(N),
    )?;
    let a = forward.realized_big_counts().with_horizon(N);
    let b = quotient_counts(&forward);
    facts.check("forward: quotient orbits are the tent orbits", b == tent)?;
    let f_big = fixed_points_from_orbits(&a);
    facts.check(
        "forward: F_big(n) = 2^n + sigma(n)",
        (1..=N).all(|n| f_big[n] == pow2(n) + sigma(n as u64).expect("positive")),
    )?;
    let zeta_big = zeta_from_fixed_points(&f_big, N)?;
    facts.check(
        "forward: zeta big == theta/(1-2z)",
        zeta_big == &theta * &PowerSeries::geometric(2, N),
    )?;
    facts.check(
        "forward: zeta quot == 1/(1-2z)",
        zeta_from_orbits(&b, N)? == PowerSeries::geometric(2, N),
    )?;
    const M: usize = 8;
    let small = forward.with_horizon(M)?;
    let sys = build_system(&small)?;
    cross_check(&small, &sys)?;
    facts.value("forward: points in explicit system to n=8", sys.point_count());

    // reverse: big system has 2^n + 1 points of period n
    let f_big_rev = CountSequence::from_fn(N, |n| pow2(n) + 1u32);
    let a_rev = orbits_from_fixed_points(&f_big_rev)?;
    let literal_s: Vec<BigInt> = (1..=N)
        .map(|n| {
            if n == 1 {
                BigInt::from(1)
            } else {
                BigInt::from(tent[n].clone()) - 2
            }
        })
        .collect();
    let negative: Vec<String> = literal_s
        .iter()
        .enumerate()
        .filter(|(_, s)| *s < &BigInt::zero())
        .map(|(i, s)| format!("n={} s={s}", i + 1))
        .collect();
    facts.value("reverse: negative literal surviving counts", negative.join(" "));
    let f_quot_rev = CountSequence::from_fn(N, |n| {
        pow2(n) + 1u32 - sigma(n as u64).expect("positive")
    });
    let b_rev = orbits_from_fixed_points(&f_quot_rev)?;
    facts.check(
        "reverse: quotient orbits b_n = a_n - 1",
        (1..=N).all(|n| &b_rev[n] + 1u32 == a_rev[n]),
    )?;
    facts.check(
        "reverse: zeta big == 1/((1-z)(1-2z))",
        zeta_from_orbits(&a_rev, N)? == one_and_two(N),
    )?;
    let zeta_quot_rev = zeta_from_fixed_points(&f_quot_rev, N)?;
    facts.check(
        "reverse: zeta quot == 1/((1-z)(1-2z)theta)",
        zeta_quot_rev == (&one_and_two(N) * &theta.inverse()?),
    )?;

    let degree = 100;
    let probe_forward = rationality_probe(
        &(&theta_series(degree) * &PowerSeries::geometric(2, degree)),
        0.5,
        40,
    )?;
    let f_quot_long = CountSequence::from_fn(degree, |n| {
        pow2(n) + 1u32 - sigma(n as u64).expect("positive")
    });
    let probe_reverse = rationality_probe(&zeta_from_fixed_points(&f_quot_long, degree)?, 0.5, 40)?;
    let probe_rational = rationality_probe(&one_and_two(degree), 0.5, 40)?;
    facts.probe("probe forward zeta big", &probe_forward);
    facts.probe("probe reverse zeta quot", &probe_reverse);
    facts.probe("probe reverse zeta big", &probe_rational);

    let s_rev = signed_table(&["n", "s_literal"], &[literal_s]);
    let mut doc = Document::new();
    doc.table(
        "forward counts",
        Table::sequences(&["n", "a", "b", "F_big"], &[&a, &b, &f_big]),
    )
    .table(
        "reverse counts",
        Table::sequences(&["n", "a", "b", "F_quot"], &[&a_rev, &b_rev, &f_quot_rev]),
    )
    .table("reverse literal surviving counts", s_rev)
    .table(
        "series",
        Table::series(
            &["degree", "theta", "zeta_big_forward", "zeta_quot_reverse"],
            &[&theta, &zeta_big, &zeta_quot_rev],
        ),
    )
    .facts("checks", &facts.0);
    Ok(doc)
}

/// Tent map as the big system; the quotient zeta has a natural boundary.
fn natural_boundary() -> Result<Document> {
    const N: usize = 24;
    let c = c_sequence(2 * N)?;
    let (a, b_long) = natural_boundary_sequences(2 * N)?;
    let b = b_long.with_horizon(N);
    let mut facts = Facts::default();
    facts.value("a_8", &a[8]);
    facts.value("b_4", &b[4]);
    facts.check("b_4 = 19 < 30 = a_8", b[4] == 19u32.into() && a[8] == 30u32.into())?;
    facts.check(
        "b_p = a_p for primes p",
        (1..=N).filter(|&p| is_prime(p as u64)).all(|p| a[p] == b[p]),
    )?;
    facts.check("a_2n > b_n for n >= 6", (6..=N).all(|n| a[2 * n] > b[n]))?;
    let f_quot = fixed_points_from_orbits(&b);
    facts.check(
        "F_quot(n) = 2^n (1 + c_n)",
        (1..=N).all(|n| f_quot[n] == pow2(n) * (1 + c.get(n))),
    )?;
    facts.check(
        "zeta big == 1/(1-2z)",
        zeta_from_orbits(&a, N)? == PowerSeries::geometric(2, N),
    )?;
    let dec = decompose(&a, &b, 2)?;
    facts.check("decomposition with threshold 2 reproduces (a, b)", {
        dec.realized_big_counts().agrees_with(&a, N) && quotient_counts(&dec) == b
    })?;
    const M: usize = 12;
    let small = dec.with_horizon(M)?;
    let sys = build_system(&small)?;
    cross_check(&small, &sys)?;
    facts.value("points in explicit system to n=12", sys.point_count());
    let degree = 60;
    let (_, b_probe) = natural_boundary_sequences(degree)?;
    let probe = rationality_probe(&zeta_from_orbits(&b_probe, degree)?, 0.5, 20)?;
    facts.probe("probe zeta quot", &probe);

    let c_n = CountSequence::from_fn(N, |n| c.get(n).into());
    let mut doc = Document::new();
    doc.table(
        "counts",
        Table::sequences(
            &["n", "c", "a", "b", "F_quot", "surviving", "glued_pairs", "halving"],
            &[
                &c_n,
                &a.with_horizon(N),
                &b,
                &f_quot,
                dec.surviving(),
                dec.glued_pairs(),
                dec.halving(),
            ],
        ),
    )
    .facts("checks", &facts.0);
    Ok(doc)
}

/// Orbit sequences with prescribed exponential growth rates.
fn growth() -> Result<Document> {
    const N: usize = 16;
    const LONG: usize = 40;
    const EPS: f64 = 0.1;
    let cases = [
        (ratio(2, 1), ratio(2, 1), ratio(1, 1)),
        (ratio(2, 1), ratio(3, 1), ratio(1, 1)),
        (ratio(2, 1), ratio(4, 1), ratio(1, 2)),
        (ratio(3, 2), ratio(2, 1), ratio(1, 3)),
        (ratio(3, 1), ratio(9, 1), ratio(1, 1)),
    ];
    let mut doc = Document::new();
    let mut summary = Table::new(&[
        "lambda",
        "eta",
        "c",
        "regime",
        "threshold",
        "log_lambda",
        "log_F_big_over_n",
        "log_F_quot_over_n",
        "two_log_lambda",
    ]);
    let mut facts = Facts::default();
    for (lambda, eta, c) in cases {
        let label = format!("lambda={lambda} eta={eta} c={c}");
        let spec = GrowthSpec::with_admissible_threshold(lambda.clone(), eta.clone(), c.clone(), N)?;
        let (a, b) = growth_sequences(&spec);
        let dec = decompose(&a, &b, spec.threshold())?;
        let sys = build_system(&dec)?;
        cross_check(&dec, &sys)?;
        facts.check(&format!("{label}: decomposition realized"), true)?;

        let long = GrowthSpec::new(lambda.clone(), eta.clone(), c.clone(), LONG, spec.threshold())?;
        let (a_long, b_long) = growth_sequences(&long);
        let rate_big = ln_big(&fixed_points_from_orbits(&a_long)[LONG]) / LONG as f64;
        let rate_quot = ln_big(&fixed_points_from_orbits(&b_long)[LONG]) / LONG as f64;
        let log_lambda = lambda.to_f64().expect("finite").ln();
        facts.check(
            &format!("{label}: quotient growth within envelope at n=40"),
            rate_quot >= log_lambda - EPS && rate_quot <= 2.0 * log_lambda + EPS,
        )?;
        summary.push(vec![
            lambda.to_string(),
            eta.to_string(),
            c.to_string(),
            format!("{:?}", spec.regime()?).to_lowercase(),
            spec.threshold().to_string(),
            format!("{log_lambda:.4}"),
            format!("{rate_big:.4}"),
            format!("{rate_quot:.4}"),
            format!("{:.4}", 2.0 * log_lambda),
        ]);
        doc.table(
            &label,
            Table::sequences(
                &["n", "a", "b", "surviving", "glued_pairs", "halving"],
                &[&a, &b, dec.surviving(), dec.glued_pairs(), dec.halving()],
            ),
        );
    }
    doc.table("growth rates at n=40", summary)
        .facts("checks", &facts.0);
    Ok(doc)
}
