//! Dynamical zeta functions `ζ(z) = exp(Σ F(n) z^n / n) = Π (1 - z^n)^{-O(n)}`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{divisors, pow2, sigma, CountSequence};
use crate::error::{Error, Result};
use crate::series::PowerSeries;

fn require_horizon(seq: &CountSequence, degree: usize) -> Result<()> {
    if seq.horizon() < degree {
        return Err(Error::HorizonTooSmall {
            needed: degree,
            got: seq.horizon(),
        });
    }
    Ok(())
}

/// `Σ_{n=1}^{D} x_n z^n / n`.
fn counting_log(values: impl Fn(usize) -> BigInt, degree: usize) -> PowerSeries {
    PowerSeries::new(
        (0..=degree)
            .map(|n| {
                if n == 0 {
                    BigRational::zero()
                } else {
                    BigRational::new(values(n), n.into())
                }
            })
            .collect(),
    )
}

/// Zeta function from periodic-point counts, via the exponential form.
pub fn zeta_from_fixed_points(fixed: &CountSequence, degree: usize) -> Result<PowerSeries> {
    require_horizon(fixed, degree)?;
    counting_log(|n| fixed[n].clone().into(), degree).exp()
}

/// Zeta function from orbit counts, via the Euler product
/// `Π_{n ≤ D} (1 - z^n)^{-O(n)}`. Factors with `n > D` do not reach degree `D`.
pub fn zeta_from_orbits(orbits: &CountSequence, degree: usize) -> Result<PowerSeries> {
    require_horizon(orbits, degree)?;
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); degree + 1];
    acc[0] = BigInt::one();
    for n in 1..=degree {
        let m = BigInt::from(orbits[n].clone());
        if m.is_zero() {
            continue;
        }
        // (1 - z^n)^{-m} = Σ_j C(m + j - 1, j) z^{nj}
        let terms = degree / n;
        let mut binom = Vec::with_capacity(terms + 1);
        binom.push(BigInt::one());
        for j in 1..=terms {
            let prev: &BigInt = &binom[j - 1];
            binom.push(prev * (&m + (j - 1)) / j);
        }
        let mut next = vec![BigInt::zero(); degree + 1];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, c) in binom.iter().enumerate() {
                let k = i + n * j;
                if k > degree {
                    break;
                }
                next[k] += a * c;
            }
        }
        acc = next;
    }
    Ok(PowerSeries::from_integers(acc))
}

/// Recovers `F(n)` from `z ζ'(z) / ζ(z) = Σ F(n) z^n`, using
/// `n ζ_n = Σ_{k=1}^{n} F(k) ζ_{n-k}`.
///
/// Fails unless the constant term is 1 and every recovered `F(n)` is a
/// non-negative integer.
pub fn log_derivative_counts(zeta: &PowerSeries) -> Result<CountSequence> {
    let c = zeta.coeffs();
    if !c[0].is_one() {
        return Err(Error::ConstantTerm {
            expected: "1",
            got: c[0].to_string(),
        });
    }
    let degree = zeta.degree();
    if degree == 0 {
        return Err(Error::TooFewCoefficients { needed: 2, got: 1 });
    }
    let mut f: Vec<BigRational> = Vec::with_capacity(degree);
    for n in 1..=degree {
        let mut v = &c[n] * BigRational::from_integer(n.into());
        for k in 1..n {
            v -= &f[k - 1] * &c[n - k];
        }
        f.push(v);
    }
    let mut out = Vec::with_capacity(degree);
    for (i, v) in f.into_iter().enumerate() {
        if !v.is_integer() || v.is_negative() {
            return Err(Error::NotCountSequence {
                index: i + 1,
                value: v.to_string(),
            });
        }
        out.push(v.to_integer().to_biguint().expect("non-negative"));
    }
    CountSequence::new(out)
}

/// `θ(z) = exp Σ σ(n) z^n / n`, whose reciprocal is `Π (1 - z^n)`.
pub fn theta_series(degree: usize) -> PowerSeries {
    counting_log(
        |n| sigma(n as u64).expect("positive index").into(),
        degree,
    )
    .exp()
    .expect("zero constant term")
}

/// `φ(z) = Σ_{n ≥ 1} z^{2n+1} Σ_{d | 2n+1, 1 < d < 2n+1} d 2^{(d-1)/2}`.
///
/// The coefficient of `z^m` vanishes exactly when `m` is even, 1, or an odd
/// prime.
pub fn phi_series(degree: usize) -> PowerSeries {
    PowerSeries::from_integers((0..=degree).map(|m| -> BigInt {
        if m < 3 || m % 2 == 0 {
            return BigInt::zero();
        }
        divisors(m as u64)
            .into_iter()
            .filter(|&d| d != 1 && d != m as u64)
            .map(|d| BigInt::from(d) * BigInt::from(pow2((d as usize - 1) / 2)))
            .sum()
    }))
}

/// Periodic-point counts of the doubled system: `0` at odd `n`, `2 F_S(n)`
/// at even `n`.
pub fn doubled_fixed_points(fixed: &CountSequence) -> CountSequence {
    CountSequence::from_fn(fixed.horizon(), |n| {
        if n % 2 == 0 {
            &fixed[n] * 2u32
        } else {
            BigUint::zero()
        }
    })
}

/// Checks `ζ_T(z) = ζ_S(z) ζ_S(-z)` to degree `D`, where `T` is the double
/// of `S`, computing both sides independently.
pub fn doubling_zeta_identity_check(fixed: &CountSequence, degree: usize) -> Result<bool> {
    let lhs = zeta_from_fixed_points(&doubled_fixed_points(fixed), degree)?;
    let zs = zeta_from_fixed_points(fixed, degree)?;
    Ok(lhs == &zs * &zs.reflect())
}

/// Periodic-point counts `F_S(n)` of the reprise of the doubling example:
/// `2^n + 1` at even `n` and `Σ_{d | n} d 2^{(d-1)/2}` at odd `n`. The double
/// of this system has rational zeta `1 / ((1 - z^2)(1 - 4z^2))`.
pub fn double_reprise_fixed_points(horizon: usize) -> CountSequence {
    CountSequence::from_fn(horizon, |n| {
        if n % 2 == 0 {
            pow2(n) + 1u32
        } else {
            divisors(n as u64)
                .into_iter()
                .map(|d| BigUint::from(d) * pow2((d as usize - 1) / 2))
                .sum()
        }
    })
}
