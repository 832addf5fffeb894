//! Exact arithmetic on orbit and periodic-point counts.
//!
//! A map with `O(d)` closed orbits of length `d` has
//! `F(n) = sum_{d | n} d * O(d)` points of period `n`; Möbius inversion
//! recovers `O` from `F` and certifies that a candidate `F` can occur at all.

use std::fmt;
use std::ops::Index;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense, 1-indexed sequence of non-negative integers `x_1, ..., x_N`.
///
/// Used both for orbit counts `O(n)` and periodic-point counts `F(n)`; which
/// one an instance holds is up to the caller.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CountSequence {
    values: Vec<BigUint>,
}

impl CountSequence {
    pub fn new(values: Vec<BigUint>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(Self { values })
    }

    pub fn from_u64s(values: &[u64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| BigUint::from(v)).collect())
    }

    /// Builds `x_n = f(n)` for `n = 1..=horizon`.
    ///
    /// # Panics
    /// If `horizon` is zero.
    pub fn from_fn(horizon: usize, f: impl FnMut(usize) -> BigUint) -> Self {
        assert!(horizon > 0, "count sequences need a positive horizon");
        Self {
            values: (1..=horizon).map(f).collect(),
        }
    }

    pub fn zeros(horizon: usize) -> Self {
        Self::from_fn(horizon, |_| BigUint::zero())
    }

    pub fn horizon(&self) -> usize {
        self.values.len()
    }

    /// Entry `n`, or `None` outside `1..=horizon`.
    pub fn get(&self, n: usize) -> Option<&BigUint> {
        n.checked_sub(1).and_then(|i| self.values.get(i))
    }

    /// Entry `n`, treating everything past the horizon as zero.
    pub fn get_or_zero(&self, n: usize) -> BigUint {
        self.get(n).cloned().unwrap_or_default()
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.values.iter().enumerate().map(|(i, v)| (i + 1, v))
    }

    /// Keeps the first `horizon` entries, zero-padding if `horizon` is larger.
    pub fn with_horizon(&self, horizon: usize) -> Self {
        Self::from_fn(horizon, |n| self.get_or_zero(n))
    }

    /// Equality on `1..=horizon`, reading missing entries as zero.
    pub fn agrees_with(&self, other: &Self, horizon: usize) -> bool {
        (1..=horizon).all(|n| self.get_or_zero(n) == other.get_or_zero(n))
    }

    /// Equality after stripping trailing zeros.
    pub fn same_counts(&self, other: &Self) -> bool {
        self.agrees_with(other, self.horizon().max(other.horizon()))
    }
}

impl Index<usize> for CountSequence {
    type Output = BigUint;

    fn index(&self, n: usize) -> &BigUint {
        self.get(n)
            .unwrap_or_else(|| panic!("index {n} outside 1..={}", self.horizon()))
    }
}

impl fmt::Display for CountSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing prime order. Returns an empty list for `n <= 1`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

pub fn is_prime(n: u64) -> bool {
    matches!(factorize(n).as_slice(), [(_, 1)])
}

/// Exponent of `p` in `n` (`ord_p(n)`); zero when `p` does not divide `n`.
pub fn ord_p(mut n: u64, p: u64) -> u32 {
    if n == 0 || p < 2 {
        return 0;
    }
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize(n) {
        let existing = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..existing {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// The Möbius function.
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::NonPositive(n));
    }
    let factors = factorize(n);
    if factors.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if factors.len() % 2 == 0 { 1 } else { -1 })
}

/// Sum of divisors `sigma(n)`.
pub fn sigma(n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::NonPositive(n));
    }
    Ok(divisors(n).into_iter().map(BigUint::from).sum())
}

/// `F(n) = sum_{d | n} d * O(d)` for every `n` up to the horizon of `orbits`.
///
/// `F(n)` only needs `O(d)` for `d | n`, so the output horizon equals the
/// input horizon.
pub fn fixed_points_from_orbits(orbits: &CountSequence) -> CountSequence {
    CountSequence::from_fn(orbits.horizon(), |n| {
        divisors(n as u64)
            .into_iter()
            .map(|d| &orbits[d as usize] * BigUint::from(d))
            .sum()
    })
}

/// Möbius inversion `O(n) = (1/n) sum_{d | n} mu(n/d) F(d)`.
///
/// Fails with [`Error::NotRealizable`] at the first `n` where the sum is
/// negative or not a multiple of `n`; such an `F` is not the periodic-point
/// count of any map.
pub fn orbits_from_fixed_points(fixed: &CountSequence) -> Result<CountSequence> {
    let mut out = Vec::with_capacity(fixed.horizon());
    for n in 1..=fixed.horizon() {
        let total = mobius_sum(n as u64, |d| BigInt::from(fixed[d as usize].clone()))?;
        out.push(divide_count(n, total)?);
    }
    CountSequence::new(out)
}

/// `sum_{d | n} mu(n/d) g(d)` with exact signed arithmetic.
pub fn mobius_sum(n: u64, mut g: impl FnMut(u64) -> BigInt) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for d in divisors(n) {
        match mobius(n / d)? {
            0 => {}
            1 => total += g(d),
            _ => total -= g(d),
        }
    }
    Ok(total)
}

/// Divides a Möbius sum by `n`, requiring an exact non-negative quotient.
pub(crate) fn divide_count(n: usize, total: BigInt) -> Result<BigUint> {
    let (q, r) = total.div_rem(&BigInt::from(n));
    if total.is_negative() || !r.is_zero() {
        return Err(Error::NotRealizable {
            index: n,
            witness: format!("{total}/{n}"),
        });
    }
    Ok(q.to_biguint().expect("non-negative quotient"))
}

/// Tests `r^m ≡ r^{m/p} (mod p^{ord_p(m)})` for a prime `p` dividing `m`.
pub fn euler_congruence_holds(r: &BigInt, m: u64, p: u64) -> Result<bool> {
    if m == 0 {
        return Err(Error::NonPositive(m));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m % p != 0 {
        return Err(Error::NotDivisor { p, m });
    }
    let modulus = BigInt::from(p).pow(ord_p(m, p));
    let base = r.mod_floor(&modulus);
    let lhs = base.modpow(&BigInt::from(m), &modulus);
    let rhs = base.modpow(&BigInt::from(m / p), &modulus);
    Ok(lhs == rhs)
}

/// Converts a signed value known to be non-negative.
pub(crate) fn to_count(index: usize, value: BigInt) -> Result<BigUint> {
    match value.sign() {
        Sign::Minus => Err(Error::NegativeCount { index, value }),
        _ => Ok(value.to_biguint().expect("non-negative")),
    }
}

pub(crate) fn pow2(n: usize) -> BigUint {
    BigUint::one() << n
}
