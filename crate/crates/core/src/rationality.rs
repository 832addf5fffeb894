//! Heuristic rationality probe for power series.
//!
//! A series is rational exactly when its coefficients obey a linear
//! recurrence. The probe fits the shortest recurrence to a prefix with
//! Berlekamp–Massey over the rationals and accepts it only if it reproduces
//! every remaining coefficient. A negative answer only says that no
//! recurrence of order at most `max_order` fits the available coefficients;
//! it never claims irrationality.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::series::PowerSeries;

/// Linear recurrence `Σ_{i=0}^{L} c_i a_{n-i} = 0` for `n >= L`, with
/// `c_0 = 1`. The connection polynomial `Σ c_i z^i` is the denominator of
/// the rational function generating the sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    connection: Vec<BigRational>,
    order: usize,
}

impl Recurrence {
    pub fn order(&self) -> usize {
        self.order
    }

    /// `c_0, ..., c_L`.
    pub fn connection(&self) -> &[BigRational] {
        &self.connection
    }

    /// `r_1, ..., r_L` in `a_n = Σ r_i a_{n-i}`.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.connection[1..].iter().map(|c| -c).collect()
    }

    /// Denominator degree: the connection polynomial without trailing zeros.
    pub fn denominator_degree(&self) -> usize {
        self.connection
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// First index at which the recurrence mispredicts `seq`, if any.
    pub fn first_mismatch(&self, seq: &[BigRational]) -> Option<usize> {
        (self.order..seq.len()).find(|&n| {
            let mut acc = BigRational::zero();
            for (i, c) in self.connection.iter().enumerate() {
                if !c.is_zero() {
                    acc += c * &seq[n - i];
                }
            }
            !acc.is_zero()
        })
    }

    /// Numerator `(C(z) A(z)) mod z^L` for the sequence `A`, without trailing
    /// zeros; `A = numerator / connection` when the recurrence holds.
    pub fn numerator(&self, seq: &[BigRational]) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = (0..self.order.min(seq.len()))
            .map(|n| {
                let mut acc = BigRational::zero();
                for i in 0..=n.min(self.order) {
                    acc += &self.connection[i] * &seq[n - i];
                }
                acc
            })
            .collect();
        while out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        out
    }
}

/// Shortest linear recurrence generating `seq`, together with the linear
/// complexity of every prefix (`profile[k]` is the order for `seq[..=k]`).
pub fn berlekamp_massey(seq: &[BigRational]) -> (Recurrence, Vec<usize>) {
    let mut current = vec![BigRational::one()];
    let mut previous = vec![BigRational::one()];
    let mut order = 0usize;
    let mut shift = 1usize;
    let mut last_discrepancy = BigRational::one();
    let mut profile = Vec::with_capacity(seq.len());
    for n in 0..seq.len() {
        let mut d = seq[n].clone();
        for i in 1..=order.min(current.len() - 1) {
            if !current[i].is_zero() {
                d += &current[i] * &seq[n - i];
            }
        }
        if d.is_zero() {
            shift += 1;
        } else {
            let factor = &d / &last_discrepancy;
            let mut updated = current.clone();
            if updated.len() < previous.len() + shift {
                updated.resize(previous.len() + shift, BigRational::zero());
            }
            for (i, b) in previous.iter().enumerate() {
                if !b.is_zero() {
                    updated[i + shift] -= &factor * b;
                }
            }
            if 2 * order <= n {
                previous = std::mem::replace(&mut current, updated);
                order = n + 1 - order;
                last_discrepancy = d;
                shift = 1;
            } else {
                current = updated;
                shift += 1;
            }
        }
        profile.push(order);
    }
    current.resize(order + 1, BigRational::zero());
    (
        Recurrence {
            connection: current,
            order,
        },
        profile,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    RecurrenceFound,
    NoShortRecurrence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalityReport {
    pub verdict: Verdict,
    /// The validated recurrence, when one was found.
    pub recurrence: Option<Recurrence>,
    /// Numerator coefficients of the rational function, when found.
    pub numerator: Option<Vec<BigRational>>,
    /// Highest degree used for fitting.
    pub fit_degree: usize,
    /// Highest degree checked against the fitted recurrence.
    pub validation_degree: usize,
    pub max_order: usize,
    /// Linear complexity of each prefix of the full coefficient window.
    pub linear_complexity_profile: Vec<usize>,
}

impl RationalityReport {
    pub fn order(&self) -> Option<usize> {
        self.recurrence.as_ref().map(Recurrence::order)
    }
}

impl fmt::Display for RationalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.verdict, &self.recurrence) {
            (Verdict::RecurrenceFound, Some(rec)) => {
                writeln!(f, "verdict: recurrence_found (heuristic)")?;
                writeln!(f, "order: {}", rec.order())?;
                let coeffs: Vec<String> =
                    rec.coefficients().iter().map(ToString::to_string).collect();
                writeln!(f, "recurrence: a_n = [{}] . (a_n-1 .. a_n-L)", coeffs.join(", "))?;
                writeln!(f, "denominator_degree: {}", rec.denominator_degree())?;
                let num_deg = self
                    .numerator
                    .as_ref()
                    .map_or(0, |n| n.len().saturating_sub(1));
                writeln!(f, "numerator_degree: {num_deg}")?;
            }
            _ => {
                writeln!(f, "verdict: no_short_recurrence (heuristic)")?;
                writeln!(
                    f,
                    "note: no recurrence of order <= {} reproduces coefficients 0..={}",
                    self.max_order, self.validation_degree
                )?;
            }
        }
        writeln!(f, "fit_degree: {}", self.fit_degree)?;
        writeln!(f, "validation_degree: {}", self.validation_degree)?;
        let profile: Vec<String> = self
            .linear_complexity_profile
            .iter()
            .map(ToString::to_string)
            .collect();
        writeln!(f, "linear_complexity_profile: {}", profile.join(","))
    }
}

/// Fits on the first `fit_fraction` of the coefficients and validates on the
/// rest.
///
/// Requires `D >= 2 max_order`. A fitted recurrence is only trusted when its
/// order is at most `max_order` and the fit window holds at least twice that
/// many coefficients.
pub fn rationality_probe(
    series: &PowerSeries,
    fit_fraction: f64,
    max_order: usize,
) -> Result<RationalityReport> {
    if !(fit_fraction > 0.0 && fit_fraction <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "fit fraction must lie in (0, 1], got {fit_fraction}"
        )));
    }
    let coeffs = series.coeffs();
    let degree = series.degree();
    if degree < 2 * max_order || degree == 0 {
        return Err(Error::TooFewCoefficients {
            needed: (2 * max_order).max(1) + 1,
            got: coeffs.len(),
        });
    }
    let fit_len = ((fit_fraction * coeffs.len() as f64).ceil() as usize).clamp(1, coeffs.len());
    let (fitted, _) = berlekamp_massey(&coeffs[..fit_len]);
    let (_, profile) = berlekamp_massey(coeffs);
    let trusted = fitted.order() <= max_order && 2 * fitted.order() <= fit_len;
    let found = trusted && fitted.first_mismatch(coeffs).is_none();
    let (verdict, recurrence, numerator) = if found {
        let numerator = fitted.numerator(coeffs);
        (Verdict::RecurrenceFound, Some(fitted), Some(numerator))
    } else {
        (Verdict::NoShortRecurrence, None, None)
    };
    Ok(RationalityReport {
        verdict,
        recurrence,
        numerator,
        fit_degree: fit_len - 1,
        validation_degree: degree,
        max_order,
        linear_complexity_profile: profile,
    })
}
