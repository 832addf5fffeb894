//! The auxiliary sequence `c_n` and the orbit counts of a quotient whose
//! zeta function has its natural boundary on the circle of convergence.
//!
//! `c_n = 0` for `n = 1` and `n` prime; for composite `n` it is the unique
//! integer in `[n, 2n)` with `c_n ≡ c_{n/p} (mod p^{ord_p(n)})` for every prime
//! `p | n`. The big system is the tent map (`2^n` points of period `n`) and
//! the quotient has `F(n) = 2^n + c_n 2^n`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{divide_count, factorize, mobius_sum, pow2, CountSequence};
use crate::error::{Error, Result};

/// `c_1, ..., c_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxiliarySequence {
    values: Vec<u64>,
}

impl AuxiliarySequence {
    pub fn horizon(&self) -> usize {
        self.values.len()
    }

    /// `c_n` for `1 <= n <= N`.
    pub fn get(&self, n: usize) -> u64 {
        self.values[n - 1]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }
}

/// Solves `x ≡ r_i (mod m_i)` for pairwise coprime moduli, returning the
/// residue modulo their product.
pub fn crt(congruences: &[(u64, u64)]) -> Option<(u64, u64)> {
    let mut residue = BigInt::zero();
    let mut modulus = BigInt::one();
    for &(r, m) in congruences {
        let m = BigInt::from(m);
        let ext = modulus.extended_gcd(&m);
        if !ext.gcd.is_one() {
            return None;
        }
        // residue + modulus * t ≡ r (mod m)
        let t = ((BigInt::from(r) - &residue) * ext.x).mod_floor(&m);
        residue += &modulus * t;
        modulus *= m;
        residue = residue.mod_floor(&modulus);
    }
    Some((
        u64::try_from(residue).ok()?,
        u64::try_from(modulus).ok()?,
    ))
}

/// Computes `c_1..c_N` in increasing order: CRT over the prime-power
/// congruences gives `c_n mod n`, which is then lifted into `[n, 2n)`.
pub fn c_sequence(horizon: usize) -> Result<AuxiliarySequence> {
    if horizon == 0 {
        return Err(Error::NonPositive(0));
    }
    let mut values: Vec<u64> = Vec::with_capacity(horizon);
    for n in 1..=horizon as u64 {
        let factors = factorize(n);
        let composite = factors.iter().map(|&(_, e)| e).sum::<u32>() > 1;
        if !composite {
            values.push(0);
            continue;
        }
        let congruences: Vec<(u64, u64)> = factors
            .iter()
            .map(|&(p, e)| {
                let pe = p.pow(e);
                (values[(n / p) as usize - 1] % pe, pe)
            })
            .collect();
        let (r, m) = crt(&congruences).ok_or(Error::NoSolution(n))?;
        debug_assert_eq!(m, n);
        values.push(n + r);
    }
    Ok(AuxiliarySequence { values })
}

/// Orbit counts `(a, b)`: `a_n = (1/n) Σ_{d|n} μ(n/d) 2^d` and
/// `b_n = a_n + (1/n) Σ_{d|n} μ(n/d) c_d 2^d`.
///
/// Integrality and positivity of the correction are re-verified at runtime,
/// including the lower estimate `n 2^n - Σ_{d ≤ n/2} n 2^d > 0` behind it.
pub fn natural_boundary_sequences(horizon: usize) -> Result<(CountSequence, CountSequence)> {
    let c = c_sequence(horizon)?;
    let mut a = Vec::with_capacity(horizon);
    let mut b = Vec::with_capacity(horizon);
    for n in 1..=horizon {
        let an_total = mobius_sum(n as u64, |d| pow2(d as usize).into())?;
        let an = divide_count(n, an_total).map_err(|e| Error::IntegralityFailure {
            index: n,
            detail: e.to_string(),
        })?;
        let correction = mobius_sum(n as u64, |d| {
            BigInt::from(c.get(d as usize)) * BigInt::from(pow2(d as usize))
        })?;
        if !correction.is_multiple_of(&BigInt::from(n)) {
            return Err(Error::IntegralityFailure {
                index: n,
                detail: format!("{n} does not divide {correction}"),
            });
        }
        if correction.is_negative() {
            return Err(Error::NegativityFailure {
                index: n,
                detail: format!("correction sum is {correction}"),
            });
        }
        if c.get(n) > 0 {
            let nn = BigInt::from(n);
            let floor: BigInt = (1..=n / 2).map(|d| &nn * BigInt::from(pow2(d))).sum();
            let estimate = &nn * BigInt::from(pow2(n)) - floor;
            if !estimate.is_positive() || correction <= estimate {
                return Err(Error::NegativityFailure {
                    index: n,
                    detail: format!("correction {correction} not above estimate {estimate}"),
                });
            }
        }
        let extra: BigUint = (correction / n).to_biguint().expect("checked non-negative");
        b.push(&an + extra);
        a.push(an);
    }
    Ok((CountSequence::new(a)?, CountSequence::new(b)?))
}
