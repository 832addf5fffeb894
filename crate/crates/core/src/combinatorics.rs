//! Orbit bookkeeping for a system and its quotient by a commuting involution.
//!
//! Each closed orbit of the big system either survives (fixed pointwise by the
//! involution), is glued to a partner orbit of the same length, or is mapped
//! to itself by a half-turn and halves in length. [`BehaviorDecomposition`]
//! records those three populations indexed by *quotient* length, which makes
//! the two combinatorial constraints (no odd-length halving orbits, an even
//! number of glued orbits) hold by construction.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{fixed_points_from_orbits, to_count, CountSequence};
use crate::error::{Error, Result};

/// Per-length counts `(s_n, g_n, h_n)` of surviving orbits, glued pairs and
/// halving orbits.
///
/// `glued_pairs[n]` counts *pairs*, so the big system has `2 g_n` glued orbits
/// of length `n`. `halving[n]` counts big-system orbits of length `2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BehaviorDecomposition {
    surviving: CountSequence,
    glued_pairs: CountSequence,
    halving: CountSequence,
}

impl BehaviorDecomposition {
    pub fn new(
        surviving: CountSequence,
        glued_pairs: CountSequence,
        halving: CountSequence,
    ) -> Result<Self> {
        let horizon = surviving.horizon();
        if glued_pairs.horizon() != horizon || halving.horizon() != horizon {
            return Err(Error::HorizonMismatch(format!(
                "surviving/glued/halving horizons are {}/{}/{}",
                horizon,
                glued_pairs.horizon(),
                halving.horizon()
            )));
        }
        if surviving[1].is_zero() {
            return Err(Error::EmptyFixedPoint);
        }
        Ok(Self {
            surviving,
            glued_pairs,
            halving,
        })
    }

    /// Convenience constructor from machine integers; shorter inputs are
    /// zero-padded to the longest one.
    pub fn from_u64s(surviving: &[u64], glued_pairs: &[u64], halving: &[u64]) -> Result<Self> {
        let horizon = surviving.len().max(glued_pairs.len()).max(halving.len());
        let pad = |v: &[u64]| {
            CountSequence::from_fn(horizon, |n| v.get(n - 1).copied().unwrap_or(0).into())
        };
        Self::new(pad(surviving), pad(glued_pairs), pad(halving))
    }

    pub fn horizon(&self) -> usize {
        self.surviving.horizon()
    }

    pub fn surviving(&self) -> &CountSequence {
        &self.surviving
    }

    pub fn glued_pairs(&self) -> &CountSequence {
        &self.glued_pairs
    }

    pub fn halving(&self) -> &CountSequence {
        &self.halving
    }

    pub fn with_horizon(&self, horizon: usize) -> Result<Self> {
        Self::new(
            self.surviving.with_horizon(horizon),
            self.glued_pairs.with_horizon(horizon),
            self.halving.with_horizon(horizon),
        )
    }

    /// Orbit counts of the finite system this decomposition describes, which
    /// has orbits up to length `2N` (the halving orbits of quotient length
    /// `n <= N`).
    pub fn realized_big_counts(&self) -> CountSequence {
        big_counts_to(self, 2 * self.horizon())
    }

    /// The raw big-system populations `O^s`, `O^g`, `O^h`, up to length `2N`.
    pub fn to_raw(&self) -> RawBehavior {
        let horizon = 2 * self.horizon();
        RawBehavior {
            surviving: self.surviving.with_horizon(horizon),
            glued: CountSequence::from_fn(horizon, |n| self.glued_pairs.get_or_zero(n) * 2u32),
            halving: CountSequence::from_fn(horizon, |n| {
                if n % 2 == 0 {
                    self.halving.get_or_zero(n / 2)
                } else {
                    BigUint::zero()
                }
            }),
        }
    }
}

/// Big-system orbit populations in raw form: `glued` counts orbits, not
/// pairs, and `halving` is indexed by the big-system length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawBehavior {
    pub surviving: CountSequence,
    pub glued: CountSequence,
    pub halving: CountSequence,
}

impl RawBehavior {
    pub fn horizon(&self) -> usize {
        self.surviving
            .horizon()
            .max(self.glued.horizon())
            .max(self.halving.horizon())
    }

    /// Equality that ignores trailing zeros in each component.
    pub fn same_counts(&self, other: &Self) -> bool {
        self.surviving.same_counts(&other.surviving)
            && self.glued.same_counts(&other.glued)
            && self.halving.same_counts(&other.halving)
    }

    /// `O(n) = O^s(n) + O^g(n) + O^h(n)`.
    pub fn total(&self) -> CountSequence {
        CountSequence::from_fn(self.horizon(), |n| {
            self.surviving.get_or_zero(n) + self.glued.get_or_zero(n) + self.halving.get_or_zero(n)
        })
    }
}

fn big_counts_to(dec: &BehaviorDecomposition, horizon: usize) -> CountSequence {
    CountSequence::from_fn(horizon, |n| {
        let mut a = dec.surviving.get_or_zero(n) + dec.glued_pairs.get_or_zero(n) * 2u32;
        if n % 2 == 0 {
            a += dec.halving.get_or_zero(n / 2);
        }
        a
    })
}

/// `a_n = s_n + 2 g_n + h_{n/2}` for `n` up to the decomposition horizon.
pub fn big_system_counts(dec: &BehaviorDecomposition) -> CountSequence {
    big_counts_to(dec, dec.horizon())
}

/// `b_n = s_n + g_n + h_n`.
pub fn quotient_counts(dec: &BehaviorDecomposition) -> CountSequence {
    CountSequence::from_fn(dec.horizon(), |n| {
        &dec.surviving[n] + &dec.glued_pairs[n] + &dec.halving[n]
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// Halving orbits must have even length.
    HalvingLengthEven,
    /// Glued orbits come in pairs.
    GluedCountEven,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintViolation {
    pub constraint: Constraint,
    pub index: usize,
    pub value: BigUint,
}

impl fmt::Display for ConstraintViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.constraint {
            Constraint::HalvingLengthEven => {
                write!(f, "O^h({}) = {} but n is odd", self.index, self.value)
            }
            Constraint::GluedCountEven => {
                write!(f, "O^g({}) = {} is odd", self.index, self.value)
            }
        }
    }
}

/// Checks `O^h(n) = 0` for odd `n` and `O^g(n)` even for all `n`.
pub fn check_constraints(
    halving: &CountSequence,
    glued: &CountSequence,
) -> Vec<ConstraintViolation> {
    let mut violations = Vec::new();
    for (n, v) in halving.iter() {
        if n % 2 == 1 && !v.is_zero() {
            violations.push(ConstraintViolation {
                constraint: Constraint::HalvingLengthEven,
                index: n,
                value: v.clone(),
            });
        }
    }
    for (n, v) in glued.iter() {
        if v.bit(0) {
            violations.push(ConstraintViolation {
                constraint: Constraint::GluedCountEven,
                index: n,
                value: v.clone(),
            });
        }
    }
    violations
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    /// `F_T(n) / 2 <= F_quot(n)`
    FixedPointsLower,
    /// `F_quot(n) <= (F_T(n) + F_T(2n)) / 2`
    FixedPointsUpper,
    /// `O_quot(n) <= O_T(n) + O_T(2n)`
    OrbitsUpper,
    /// `O_quot(n) >= O_T(n) / 2` for odd `n`
    OrbitsLowerOdd,
}

/// A failed inequality, stated as `lhs <= rhs` after clearing the halves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundViolation {
    pub bound: Bound,
    pub index: usize,
    pub lhs: BigUint,
    pub rhs: BigUint,
}

impl fmt::Display for BoundViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.bound {
            Bound::FixedPointsLower => "F_T(n) <= 2 F_quot(n)",
            Bound::FixedPointsUpper => "2 F_quot(n) <= F_T(n) + F_T(2n)",
            Bound::OrbitsUpper => "O_quot(n) <= O_T(n) + O_T(2n)",
            Bound::OrbitsLowerOdd => "O_T(n) <= 2 O_quot(n) (n odd)",
        };
        write!(f, "{what} fails at n={}: {} > {}", self.index, self.lhs, self.rhs)
    }
}

/// Checks the halving inequalities between big-system orbit counts `a` and
/// quotient orbit counts `b` for every `n` up to the horizon of `b`.
///
/// `a` must reach `2N` since `O_T(2n)` and `F_T(2n)` both appear. Equality is
/// accepted throughout.
pub fn check_bounds(a: &CountSequence, b: &CountSequence) -> Result<Vec<BoundViolation>> {
    let n_max = b.horizon();
    if a.horizon() < 2 * n_max {
        return Err(Error::HorizonMismatch(format!(
            "big system horizon {} is below twice the quotient horizon {}",
            a.horizon(),
            n_max
        )));
    }
    let fa = fixed_points_from_orbits(a);
    let fb = fixed_points_from_orbits(b);
    let mut out = Vec::new();
    let mut check = |bound, index, lhs: BigUint, rhs: BigUint| {
        if lhs > rhs {
            out.push(BoundViolation {
                bound,
                index,
                lhs,
                rhs,
            });
        }
    };
    for n in 1..=n_max {
        check(Bound::FixedPointsLower, n, fa[n].clone(), &fb[n] * 2u32);
        check(Bound::FixedPointsUpper, n, &fb[n] * 2u32, &fa[n] + &fa[2 * n]);
        check(Bound::OrbitsUpper, n, b[n].clone(), &a[n] + &a[2 * n]);
        if n % 2 == 1 {
            check(Bound::OrbitsLowerOdd, n, a[n].clone(), &b[n] * 2u32);
        }
    }
    Ok(out)
}

/// Checks the sufficient conditions under which [`decompose`] succeeds, as
/// far as the supplied horizons allow: conditions involving `a_{2n}` are only
/// checked where `2n` lies within the horizon of `a`.
pub fn check_existence_hypotheses(
    a: &CountSequence,
    b: &CountSequence,
    threshold: usize,
) -> Result<()> {
    check_hypotheses(a, b, threshold, true)
}

fn check_hypotheses(
    a: &CountSequence,
    b: &CountSequence,
    threshold: usize,
    upper_from_threshold: bool,
) -> Result<()> {
    if threshold == 0 {
        return Err(Error::NonPositive(0));
    }
    if a.horizon() < b.horizon() {
        return Err(Error::HorizonMismatch(format!(
            "a has horizon {} but b has horizon {}",
            a.horizon(),
            b.horizon()
        )));
    }
    let violated = |index: usize, hypothesis: &str| Error::HypothesisViolated {
        index,
        hypothesis: hypothesis.to_string(),
    };
    if a[1].is_zero() {
        return Err(violated(1, "a_1 >= 1"));
    }
    if &b[1] * 2u32 <= a[1] {
        return Err(violated(1, "b_1 > a_1/2"));
    }
    for n in threshold..=a.horizon() / 2 {
        if &a[2 * n] * 2u32 < a[n] {
            return Err(violated(n, "a_2n >= a_n/2 for n >= threshold"));
        }
    }
    for n in 1..=b.horizon() {
        if &b[n] * 2u32 < a[n] {
            return Err(violated(n, "b_n >= a_n/2"));
        }
        if n < threshold {
            if b[n] > a[n] {
                return Err(violated(n, "b_n <= a_n below threshold"));
            }
        } else if let Some(a2n) = a.get(2 * n).filter(|_| upper_from_threshold) {
            if &b[n] > a2n {
                return Err(violated(n, "b_n <= a_2n from threshold on"));
            }
        }
    }
    Ok(())
}

/// Recovers a behavior decomposition realizing big-system orbit counts `a`
/// and quotient orbit counts `b`.
///
/// Lengths are processed in increasing order. Whenever `b_k` fits under the
/// orbits still unassigned at length `k` (always the case below `threshold`),
/// the excess `a_k - b_k` is glued in pairs; otherwise every free orbit
/// survives and the shortfall is made up by halving orbits of length `2k`.
///
/// The bound `b_n <= a_2n` from [`check_existence_hypotheses`] is only
/// enforced in the form it is needed, `h_n <= a_2n`, so pairs that need no
/// halving orbits at some length are accepted there regardless.
pub fn decompose(
    a: &CountSequence,
    b: &CountSequence,
    threshold: usize,
) -> Result<BehaviorDecomposition> {
    check_hypotheses(a, b, threshold, false)?;
    let horizon = b.horizon();
    let mut surviving = Vec::with_capacity(horizon);
    let mut glued = Vec::with_capacity(horizon);
    let mut halving: Vec<BigUint> = Vec::with_capacity(horizon);
    for k in 1..=horizon {
        let ak = BigInt::from(a[k].clone());
        let bk = BigInt::from(b[k].clone());
        let inherited = if k % 2 == 0 {
            BigInt::from(halving[k / 2 - 1].clone())
        } else {
            BigInt::zero()
        };
        let free = &ak - &inherited;
        let (g, s, h) = if bk <= free {
            let g = &free - &bk;
            let s = &bk - &g;
            (g, s, BigInt::zero())
        } else {
            let s = free;
            let h = &bk - &s;
            (BigInt::zero(), s, h)
        };
        if k < threshold && h.is_positive() {
            return Err(Error::InvariantBreach(format!(
                "halving orbit assigned below threshold at n={k}"
            )));
        }
        surviving.push(to_count(k, s)?);
        glued.push(to_count(k, g)?);
        let h = to_count(k, h)?;
        if let Some(a2k) = a.get(2 * k) {
            if &h > a2k {
                return Err(Error::HypothesisViolated {
                    index: k,
                    hypothesis: format!("b_n <= a_2n where halving orbits are needed (h_{k} = {h} > a_{} = {a2k})", 2 * k),
                });
            }
        }
        halving.push(h);
    }
    if surviving[0].is_zero() {
        return Err(Error::InvariantBreach("s_1 = 0 after recursion".into()));
    }
    BehaviorDecomposition::new(
        CountSequence::new(surviving)?,
        CountSequence::new(glued)?,
        CountSequence::new(halving)?,
    )
}

/// Parameters for orbit sequences with `O_T(n) = ceil(lambda^n)` and
/// `O_quot(n) = ceil(c eta^n)` from `threshold` on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthSpec {
    lambda: BigRational,
    eta: BigRational,
    c: BigRational,
    horizon: usize,
    threshold: usize,
}

/// Which of the three admissible `(lambda, eta, c)` regimes a spec is in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthRegime {
    /// `eta = lambda`, `c >= 1/2`
    Equal,
    /// `lambda < eta < lambda^2`
    Between,
    /// `eta = lambda^2`, `0 < c <= 1`
    Square,
}

impl GrowthSpec {
    pub fn new(
        lambda: BigRational,
        eta: BigRational,
        c: BigRational,
        horizon: usize,
        threshold: usize,
    ) -> Result<Self> {
        let spec = Self {
            lambda,
            eta,
            c,
            horizon,
            threshold,
        };
        spec.regime()?;
        if horizon == 0 || threshold == 0 {
            return Err(Error::InvalidGrowthSpec(
                "horizon and threshold must be positive".into(),
            ));
        }
        if !spec.threshold_separates(threshold) {
            return Err(Error::InvalidGrowthSpec(format!(
                "c*eta^N exceeds lambda^(2N) at N={threshold}"
            )));
        }
        Ok(spec)
    }

    /// Picks the smallest threshold for which the generated pair satisfies
    /// every hypothesis of [`decompose`] within the horizon.
    pub fn with_admissible_threshold(
        lambda: BigRational,
        eta: BigRational,
        c: BigRational,
        horizon: usize,
    ) -> Result<Self> {
        const SEARCH_LIMIT: usize = 10_000;
        for threshold in 1..=SEARCH_LIMIT {
            match Self::new(lambda.clone(), eta.clone(), c.clone(), horizon, threshold) {
                Ok(spec) => {
                    let (a, b) = growth_sequences(&spec);
                    if check_existence_hypotheses(&a, &b, threshold).is_ok() {
                        return Ok(spec);
                    }
                }
                Err(Error::InvalidGrowthSpec(msg)) if msg.starts_with("c*eta^N") => {}
                Err(e) => return Err(e),
            }
        }
        Err(Error::InvalidGrowthSpec(format!(
            "no admissible threshold up to {SEARCH_LIMIT}"
        )))
    }

    pub fn lambda(&self) -> &BigRational {
        &self.lambda
    }

    pub fn eta(&self) -> &BigRational {
        &self.eta
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn regime(&self) -> Result<GrowthRegime> {
        let one = BigRational::one();
        let half = BigRational::new(1.into(), 2.into());
        if self.lambda <= one {
            return Err(Error::InvalidGrowthSpec("lambda must exceed 1".into()));
        }
        if !self.c.is_positive() || !self.eta.is_positive() {
            return Err(Error::InvalidGrowthSpec("eta and c must be positive".into()));
        }
        let square = &self.lambda * &self.lambda;
        if self.eta == self.lambda {
            if self.c >= half {
                return Ok(GrowthRegime::Equal);
            }
            return Err(Error::InvalidGrowthSpec("eta = lambda needs c >= 1/2".into()));
        }
        if self.eta > self.lambda && self.eta < square {
            return Ok(GrowthRegime::Between);
        }
        if self.eta == square {
            if self.c <= one {
                return Ok(GrowthRegime::Square);
            }
            return Err(Error::InvalidGrowthSpec("eta = lambda^2 needs c <= 1".into()));
        }
        Err(Error::InvalidGrowthSpec(
            "eta must lie in [lambda, lambda^2]".into(),
        ))
    }

    fn threshold_separates(&self, threshold: usize) -> bool {
        let exp = i32::try_from(threshold).unwrap_or(i32::MAX);
        &self.c * self.eta.pow(exp) <= self.lambda.pow(2 * exp)
    }
}

fn ceil_to_count(x: BigRational) -> BigUint {
    x.ceil().to_integer().to_biguint().expect("positive power")
}

/// `a_n = ceil(lambda^n)`; `b_n = a_n` below the threshold and
/// `ceil(c eta^n)` from it on. All powers are exact.
pub fn growth_sequences(spec: &GrowthSpec) -> (CountSequence, CountSequence) {
    let mut lambda_pow = BigRational::one();
    let mut eta_pow = BigRational::one();
    let mut a = Vec::with_capacity(spec.horizon);
    let mut b = Vec::with_capacity(spec.horizon);
    for n in 1..=spec.horizon {
        lambda_pow *= &spec.lambda;
        eta_pow *= &spec.eta;
        let an = ceil_to_count(lambda_pow.clone());
        let bn = if n < spec.threshold {
            an.clone()
        } else {
            ceil_to_count(&spec.c * &eta_pow)
        };
        a.push(an);
        b.push(bn);
    }
    (
        CountSequence::new(a).expect("positive horizon"),
        CountSequence::new(b).expect("positive horizon"),
    )
}
