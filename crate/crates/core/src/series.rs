//! Truncated formal power series with exact rational coefficients.
//!
//! A series of degree `D` carries coefficients of `z^0..=z^D`; every
//! operation is exact modulo `z^(D+1)`. Binary operations truncate to the
//! smaller degree. Integer-only inputs take a `BigInt` fast path, which keeps
//! degree-2000 products and reciprocals practical.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

fn all_integral(v: &[BigRational]) -> bool {
    v.iter().all(|c| c.is_integer())
}

fn numerators(v: &[BigRational]) -> Vec<BigInt> {
    v.iter().map(|c| c.numer().clone()).collect()
}

/// Integers `c_i L` with `L` the lcm of the denominators, and `L`.
fn scaled_integers(v: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let l = v.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints = v
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect();
    (ints, l)
}

fn from_ints(v: Vec<BigInt>) -> Vec<BigRational> {
    v.into_iter().map(BigRational::from_integer).collect()
}

impl PowerSeries {
    /// Series with the given coefficients; degree is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a constant term");
        Self { coeffs }
    }

    pub fn from_integers<I: Into<BigInt>>(coeffs: impl IntoIterator<Item = I>) -> Self {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero(degree: usize) -> Self {
        Self::new(vec![BigRational::zero(); degree + 1])
    }

    pub fn one(degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// `1 / (1 - r z)` truncated at `degree`.
    pub fn geometric(ratio: i64, degree: usize) -> Self {
        let mut c = BigInt::one();
        let mut out = Vec::with_capacity(degree + 1);
        for _ in 0..=degree {
            out.push(c.clone());
            c *= ratio;
        }
        Self::from_integers(out)
    }

    /// A polynomial, zero-padded or truncated to `degree`.
    pub fn polynomial(coeffs: &[i64], degree: usize) -> Self {
        Self::from_integers((0..=degree).map(|i| coeffs.get(i).copied().unwrap_or(0)))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `z^n`, zero past the truncation degree.
    pub fn coeff(&self, n: usize) -> BigRational {
        self.coeffs.get(n).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_integral(&self) -> bool {
        all_integral(&self.coeffs)
    }

    pub fn truncate(&self, degree: usize) -> Self {
        Self::new((0..=degree).map(|n| self.coeff(n)).collect())
    }

    /// `f(-z)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| if n % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn derivative(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::zero(0);
        }
        Self::new(
            (1..=d)
                .map(|n| &self.coeffs[n] * BigRational::from_integer(n.into()))
                .collect(),
        )
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ConstantTerm {
                expected: "nonzero",
                got: "0".into(),
            });
        }
        let d = self.degree();
        if all_integral(&self.coeffs) && (c0.is_one() || (-c0).is_one()) {
            let a = numerators(&self.coeffs);
            let unit = a[0].clone();
            let mut inv: Vec<BigInt> = Vec::with_capacity(d + 1);
            inv.push(unit.clone());
            for n in 1..=d {
                let mut acc = BigInt::zero();
                for k in 1..=n {
                    if !a[k].is_zero() {
                        acc += &a[k] * &inv[n - k];
                    }
                }
                inv.push(-acc * &unit);
            }
            return Ok(Self::new(from_ints(inv)));
        }
        let c0_inv = c0.recip();
        let mut inv: Vec<BigRational> = Vec::with_capacity(d + 1);
        inv.push(c0_inv.clone());
        for n in 1..=d {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &inv[n - k];
                }
            }
            inv.push(-acc * &c0_inv);
        }
        Ok(Self::new(inv))
    }

    /// `exp(f)` for `f` with zero constant term, from `n e_n = sum_k k f_k e_{n-k}`.
    ///
    /// When every `k f_k` is an integer the recurrence runs on integers: on
    /// `e_n` itself while it stays integral, then on `n! e_n`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm {
                expected: "0",
                got: self.coeffs[0].to_string(),
            });
        }
        let d = self.degree();
        let weighted: Vec<BigRational> = (0..=d)
            .map(|k| &self.coeffs[k] * BigRational::from_integer(k.into()))
            .collect();
        if all_integral(&weighted) {
            return Ok(Self::new(exp_integer_weights(&numerators(&weighted))));
        }
        let mut out: Vec<BigRational> = Vec::with_capacity(d + 1);
        out.push(BigRational::one());
        for n in 1..=d {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !weighted[k].is_zero() {
                    acc += &weighted[k] * &out[n - k];
                }
            }
            out.push(acc / BigRational::from_integer(n.into()));
        }
        Ok(Self::new(out))
    }

    /// `log(f)` for `f` with constant term 1, as the integral of `f'/f`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTerm {
                expected: "1",
                got: self.coeffs[0].to_string(),
            });
        }
        let d = self.degree();
        let mut out = vec![BigRational::zero(); d + 1];
        if d == 0 {
            return Ok(Self::new(out));
        }
        let ratio = &self.derivative() * &self.truncate(d - 1).inverse()?;
        for n in 1..=d {
            out[n] = ratio.coeff(n - 1) / BigRational::from_integer(n.into());
        }
        Ok(Self::new(out))
    }
}

/// `exp` of the series whose log-derivative weights `k f_k` are `w_k`.
fn exp_integer_weights(w: &[BigInt]) -> Vec<BigRational> {
    let d = w.len() - 1;
    let mut plain: Vec<BigInt> = vec![BigInt::one()];
    let mut n = 1;
    while n <= d {
        let mut acc = BigInt::zero();
        for k in 1..=n {
            if !w[k].is_zero() {
                acc += &w[k] * &plain[n - k];
            }
        }
        let (q, r) = acc.div_rem(&BigInt::from(n));
        if !r.is_zero() {
            break;
        }
        plain.push(q);
        n += 1;
    }
    if n > d {
        return plain.into_iter().map(BigRational::from_integer).collect();
    }
    // scaled[m] = m! e_m, and n! e_n = sum_k w_k (n-1)!/(n-k)! scaled[n-k]
    let mut factorial = BigInt::one();
    let mut factorials = vec![BigInt::one()];
    let mut scaled: Vec<BigInt> = Vec::with_capacity(d + 1);
    for (m, e) in plain.iter().enumerate() {
        if m > 0 {
            factorial *= m;
            factorials.push(factorial.clone());
        }
        scaled.push(e * &factorial);
    }
    for n in n..=d {
        let mut acc = BigInt::zero();
        let mut falling = BigInt::one();
        for k in 1..=n {
            if k > 1 {
                falling *= n - k + 1;
            }
            if !w[k].is_zero() {
                acc += &w[k] * &falling * &scaled[n - k];
            }
        }
        factorial *= n;
        factorials.push(factorial.clone());
        scaled.push(acc);
    }
    scaled
        .into_iter()
        .zip(factorials)
        .map(|(e, f)| BigRational::new(e, f))
        .collect()
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.degree() + 1)
    }
}

impl<'a> Mul<&'a PowerSeries> for &'a PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        // clear denominators, convolve integers, divide once per coefficient
        let d = self.degree().min(rhs.degree());
        let (a, da) = scaled_integers(&self.coeffs[..=d]);
        let (b, db) = scaled_integers(&rhs.coeffs[..=d]);
        let mut out = vec![BigInt::zero(); d + 1];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b[..=d - i].iter().enumerate() {
                if !bj.is_zero() {
                    out[i + j] += ai * bj;
                }
            }
        }
        let den = da * db;
        if den.is_one() {
            return PowerSeries::new(from_ints(out));
        }
        PowerSeries::new(
            out.into_iter()
                .map(|c| BigRational::new(c, den.clone()))
                .collect(),
        )
    }
}

impl<'a> Add<&'a PowerSeries> for &'a PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let d = self.degree().min(rhs.degree());
        PowerSeries::new((0..=d).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect())
    }
}

impl<'a> Sub<&'a PowerSeries> for &'a PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let d = self.degree().min(rhs.degree());
        PowerSeries::new((0..=d).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect())
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;

    fn neg(self) -> PowerSeries {
        PowerSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exp_of_zero_and_z() {
        assert_eq!(PowerSeries::zero(5).exp().unwrap(), PowerSeries::one(5));
        let e = PowerSeries::polynomial(&[0, 1], 8).exp().unwrap();
        let mut fact = 1i64;
        for n in 0..=8i64 {
            if n > 0 {
                fact *= n;
            }
            assert_eq!(e.coeff(n as usize), r(1, fact));
        }
    }

    #[test]
    fn exp_of_log_geometric() {
        // sum 2^n z^n / n = -log(1 - 2z)
        let d = 30;
        let s = PowerSeries::new(
            (0..=d)
                .map(|n| {
                    if n == 0 {
                        BigRational::zero()
                    } else {
                        BigRational::new(BigInt::one() << n, n.into())
                    }
                })
                .collect(),
        );
        let e = s.exp().unwrap();
        assert_eq!(e, PowerSeries::geometric(2, d));
        let back = PowerSeries::polynomial(&[1, -2], d).inverse().unwrap();
        assert_eq!(e, back);
        assert_eq!(e.log().unwrap(), s);
    }

    #[test]
    fn constant_term_checks() {
        assert!(PowerSeries::one(3).exp().is_err());
        assert!(PowerSeries::zero(3).log().is_err());
        assert!(PowerSeries::zero(3).inverse().is_err());
    }

    #[test]
    fn rational_inverse_and_product() {
        let f = PowerSeries::new(vec![r(2, 1), r(1, 3), r(-1, 2), r(5, 7)]);
        let prod = &f * &f.inverse().unwrap();
        assert_eq!(prod, PowerSeries::one(3));
        let g = PowerSeries::polynomial(&[-1, 3], 3);
        assert_eq!(&g * &g.inverse().unwrap(), PowerSeries::one(3));
    }

    #[test]
    fn reflect_and_arithmetic() {
        let f = PowerSeries::geometric(2, 4);
        assert_eq!(f.reflect(), PowerSeries::geometric(-2, 4));
        let prod = &f * &f.reflect();
        assert_eq!(prod, PowerSeries::from_integers([1i64, 0, 4, 0, 16]));
        assert_eq!(&(&f + &f) - &f, f);
        assert_eq!(-&(-&f), f);
        assert_eq!(f.truncate(2).degree(), 2);
        assert_eq!(f.derivative(), PowerSeries::from_integers([2i64, 8, 24, 64]));
    }

    #[test]
    fn display() {
        let f = PowerSeries::polynomial(&[1, 0, -2], 3);
        assert_eq!(f.to_string(), "1 + (-2)z^2 + O(z^4)");
    }
}
