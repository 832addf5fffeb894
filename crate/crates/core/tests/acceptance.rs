//! Acceptance criteria 1-8, each with its time limit. Prints one PASS/FAIL
//! line per criterion and exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use halving::combinatorics::big_system_counts;
use halving::rationality::Verdict;
use halving::*;

fn pow2(n: usize) -> BigUint {
    BigUint::one() << n
}

fn ints(v: impl IntoIterator<Item = BigInt>) -> PowerSeries {
    PowerSeries::from_integers(v)
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// Möbius function by trial division, independent of the library.
fn mu(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn sigma_oracle(n: u64) -> u64 {
    (1..=n).filter(|d| n % d == 0).sum()
}

fn criterion_1() {
    let (a, b) = natural_boundary_sequences(8).unwrap();
    assert_eq!(a[8], BigUint::from(30u32));
    assert_eq!(b[4], BigUint::from(19u32));
}

fn criterion_2() {
    const D: usize = 40;
    let cases: [(Box<dyn Fn(usize) -> BigUint>, Box<dyn Fn(usize) -> BigInt>); 3] = [
        // (1 - z)/(1 - 2z) = 1 + Σ_{n>=1} 2^{n-1} z^n
        (
            Box::new(|n| pow2(n) - 1u32),
            Box::new(|n| if n == 0 { BigInt::one() } else { pow2(n - 1).into() }),
        ),
        (Box::new(pow2), Box::new(|n| pow2(n).into())),
        // 1/((1 - z)(1 - 2z)) = Σ (2^{n+1} - 1) z^n
        (
            Box::new(|n| pow2(n) + 1u32),
            Box::new(|n| BigInt::from(pow2(n + 1)) - 1),
        ),
    ];
    for (f, closed) in cases {
        let start = Instant::now();
        let fixed = CountSequence::from_fn(D, f);
        let zeta = zeta_from_fixed_points(&fixed, D).unwrap();
        assert_eq!(zeta, ints((0..=D).map(closed)));
        assert!(start.elapsed() < Duration::from_secs(1));
    }
}

fn criterion_3() {
    const D: usize = 2000;
    let inv = theta_series(D).inverse().unwrap();
    let mut pentagonal = std::collections::BTreeMap::new();
    for k in 0i64.. {
        let p1 = (k * (3 * k - 1) / 2) as usize;
        if p1 > D {
            break;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        pentagonal.insert(p1, sign);
        let p2 = (k * (3 * k + 1) / 2) as usize;
        if p2 <= D {
            pentagonal.insert(p2, sign);
        }
    }
    for n in 0..=D {
        let c = inv.coeff(n);
        match pentagonal.get(&n) {
            Some(&s) => assert_eq!(c, BigRational::from_integer(s.into()), "index {n}"),
            None => assert!(c.is_zero(), "index {n}"),
        }
    }
}

fn random_decomposition(rng: &mut ChaCha8Rng, horizon: usize, max: u64) -> BehaviorDecomposition {
    let mut s: Vec<u64> = (0..horizon).map(|_| rng.gen_range(0..=max)).collect();
    s[0] = rng.gen_range(1..=max);
    let g: Vec<u64> = (0..horizon).map(|_| rng.gen_range(0..=max)).collect();
    let h: Vec<u64> = (0..horizon).map(|_| rng.gen_range(0..=max)).collect();
    BehaviorDecomposition::from_u64s(&s, &g, &h).unwrap()
}

fn criterion_4() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..500 {
        let horizon = rng.gen_range(1..=10);
        let d = random_decomposition(&mut rng, horizon, 5);
        let sys = build_system(&d).unwrap();
        let a = count_orbits(&sys).with_horizon(2 * horizon);
        let b = count_orbits(&quotient(&sys).unwrap()).with_horizon(horizon);
        assert_eq!(a, d.realized_big_counts());
        assert_eq!(b, quotient_counts(&d));
        let raw = classify_orbits(&sys).unwrap();
        assert!(raw.same_counts(&d.to_raw()));
        assert!(check_bounds(&a, &b).unwrap().is_empty());
        assert!(check_constraints(&raw.halving, &raw.glued).is_empty());
    }
}

/// Random pair meeting every existence hypothesis: `a` to `2N`, `b` to `N`.
fn random_admissible_pair(rng: &mut ChaCha8Rng, n: usize) -> (CountSequence, CountSequence, usize) {
    let threshold = rng.gen_range(1..=4);
    let mut a: Vec<u64> = vec![rng.gen_range(1..=6)];
    for k in 2..=2 * n {
        let floor = if k % 2 == 0 && k / 2 >= threshold { a[k / 2 - 1].div_ceil(2) } else { 0 };
        a.push(rng.gen_range(floor..=floor + 6));
    }
    let b: Vec<u64> = (1..=n)
        .map(|k| {
            let lo = if k == 1 { a[0] / 2 + 1 } else { a[k - 1].div_ceil(2) };
            let hi = if k < threshold { a[k - 1] } else { a[2 * k - 1] };
            rng.gen_range(lo..=hi.max(lo))
        })
        .collect();
    (
        CountSequence::from_u64s(&a).unwrap(),
        CountSequence::from_u64s(&b).unwrap(),
        threshold,
    )
}

fn random_growth_pair(rng: &mut ChaCha8Rng, n: usize) -> (CountSequence, CountSequence, usize) {
    loop {
        let q = rng.gen_range(1..=6i64);
        let lambda = rat(q + rng.gen_range(1..=2 * q), q);
        let eta = match rng.gen_range(0..3) {
            0 => lambda.clone(),
            1 => {
                let t = rat(rng.gen_range(1..=9), 10);
                &lambda + (&lambda * &lambda - &lambda) * t
            }
            _ => &lambda * &lambda,
        };
        let c = if eta == lambda {
            rat(rng.gen_range(5..=30), 10)
        } else {
            rat(rng.gen_range(1..=10), 10)
        };
        if let Ok(spec) = GrowthSpec::with_admissible_threshold(lambda, eta, c, n) {
            let (a, b) = growth_sequences(&spec);
            return (a, b, spec.threshold());
        }
    }
}

fn criterion_5() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    const N: usize = 20;
    for i in 0..200 {
        let (a, b, threshold) = if i % 2 == 0 {
            random_growth_pair(&mut rng, N)
        } else {
            random_admissible_pair(&mut rng, N)
        };
        check_existence_hypotheses(&a, &b, threshold).unwrap();
        let d = decompose(&a, &b, threshold).unwrap();
        for n in 1..=N {
            assert_eq!(
                b[n],
                &d.surviving()[n] + &d.glued_pairs()[n] + &d.halving()[n]
            );
            let mut an = &d.surviving()[n] + &d.glued_pairs()[n] * 2u32;
            if n % 2 == 0 {
                an += &d.halving()[n / 2];
            }
            assert_eq!(a[n], an);
            if let Some(a2n) = a.get(2 * n) {
                assert!(&d.halving()[n] <= a2n);
            }
        }
        assert!(big_system_counts(&d).agrees_with(&a, N));
        let sys = build_system(&d).unwrap();
        let simulated_a = count_orbits(&sys);
        let simulated_b = count_orbits(&quotient(&sys).unwrap());
        assert!(simulated_a.agrees_with(&a, N));
        assert_eq!(simulated_b.with_horizon(N), b);
    }
}

fn criterion_6() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let f: Vec<u64> = (0..40).map(|_| rng.gen_range(0..=1_000_000)).collect();
        assert!(doubling_zeta_identity_check(&CountSequence::from_u64s(&f).unwrap(), 40).unwrap());
    }
    // reprise: 2^n + 1 at even n, Σ_{d|n} d 2^{(d-1)/2} at odd n
    let reprise = CountSequence::from_fn(30, |n| {
        if n % 2 == 0 {
            pow2(n) + 1u32
        } else {
            (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| BigUint::from(d) * pow2((d - 1) / 2))
                .sum()
        }
    });
    assert!(doubling_zeta_identity_check(&reprise, 30).unwrap());
    // integrality of the orbit counts, checked directly
    for n in 1..=30u64 {
        let total: BigInt = (1..=n)
            .filter(|d| n % d == 0)
            .map(|d| BigInt::from(reprise[d as usize].clone()) * mu(n / d))
            .sum();
        assert!(total.is_multiple_of(&BigInt::from(n)), "n={n}");
        assert!(total >= BigInt::zero());
    }
    // ζ_T for the reprise is 1/((1-z^2)(1-4z^2)): coefficient of z^{2k} is (4^{k+1}-1)/3
    let doubled = CountSequence::from_fn(30, |n| {
        if n % 2 == 0 {
            &reprise[n] * 2u32
        } else {
            BigUint::zero()
        }
    });
    let zeta_t = zeta_from_fixed_points(&doubled, 30).unwrap();
    let expected = ints((0..=30).map(|n| {
        if n % 2 == 1 {
            BigInt::zero()
        } else {
            (BigInt::from(4).pow(n as u32 / 2 + 1) - 1) / 3
        }
    }));
    assert_eq!(zeta_t, expected);
}

fn criterion_7() {
    const D: usize = 60;
    let geometric = ints((0..=D).map(|n| pow2(n).into()));
    let both = ints((0..=D).map(|n| BigInt::from(pow2(n + 1)) - 1));
    let r = rationality_probe(&geometric, 0.5, 20).unwrap();
    assert_eq!(r.verdict, Verdict::RecurrenceFound);
    assert_eq!(r.order(), Some(1));
    let r = rationality_probe(&both, 0.5, 20).unwrap();
    assert_eq!(r.verdict, Verdict::RecurrenceFound);
    assert_eq!(r.order(), Some(2));
    assert_eq!(r.recurrence.unwrap().coefficients(), vec![rat(3, 1), rat(-2, 1)]);
    // (1 - z)/(1 - 2z): linear complexity 2, denominator of degree 1
    let tent = ints((0..=D).map(|n| if n == 0 { BigInt::one() } else { pow2(n - 1).into() }));
    let r = rationality_probe(&tent, 0.5, 20).unwrap();
    assert_eq!(r.order(), Some(2));
    assert_eq!(r.recurrence.unwrap().denominator_degree(), 1);

    const BIG: usize = 200;
    const MAX_ORDER: usize = 40;
    let theta_over = &theta_series(BIG) * &PowerSeries::geometric(2, BIG);
    let quotient_fixed = CountSequence::from_fn(BIG, |n| {
        pow2(n) + 1u32 - BigUint::from(sigma_oracle(n as u64))
    });
    let quotient_zeta = zeta_from_fixed_points(&quotient_fixed, BIG).unwrap();
    for series in [theta_over, quotient_zeta] {
        let r = rationality_probe(&series, 0.5, MAX_ORDER).unwrap();
        assert_eq!(r.verdict, Verdict::NoShortRecurrence);
        let profile = &r.linear_complexity_profile;
        assert_eq!(profile.len(), BIG + 1);
        assert!(profile.windows(2).all(|w| w[0] <= w[1]));
        // never settles: complexity keeps rising through the whole window
        assert!(*profile.last().unwrap() > MAX_ORDER);
        assert!(profile[BIG] > profile[BIG * 3 / 4]);
        assert!(profile[BIG * 3 / 4] > profile[BIG / 2]);
    }
}

fn criterion_8() {
    let c = c_sequence(2000).unwrap();
    for n in 1..=2000u64 {
        let cn = c.get(n as usize);
        let mut primes = Vec::new();
        let mut m = n;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                primes.push(p);
                while m % p == 0 {
                    m /= p;
                }
            }
            p += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        if n == 1 || primes == [n] {
            assert_eq!(cn, 0);
            continue;
        }
        assert!(n <= cn && cn < 2 * n);
        for p in primes {
            let mut pe = p;
            while n % (pe * p) == 0 {
                pe *= p;
            }
            assert_eq!(cn % pe, c.get((n / p) as usize) % pe);
        }
    }
    for n in 1..=500u64 {
        let total: BigInt = (1..=n)
            .filter(|d| n % d == 0)
            .map(|d| BigInt::from(c.get(d as usize)) * BigInt::from(pow2(d as usize)) * mu(n / d))
            .sum();
        assert!(total.is_multiple_of(&BigInt::from(n)), "n={n}");
    }
}

fn main() {
    let criteria: [(&str, fn(), u64); 8] = [
        ("natural-boundary checkpoint a_8 = 30, b_4 = 19", criterion_1, 1),
        ("zeta closed forms to degree 40", criterion_2, 3),
        ("pentagonal identity for 1/theta to degree 2000", criterion_3, 10),
        ("oracle equivalence on 500 random decompositions", criterion_4, 30),
        ("existence round trip on 200 admissible pairs", criterion_5, 30),
        ("doubling identity and reprise zeta", criterion_6, 5),
        ("rationality probe discrimination", criterion_7, 20),
        ("c-sequence certification", criterion_8, 20),
    ];
    std::panic::set_hook(Box::new(|info| eprintln!("  {info}")));
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(limit);
        let pass = outcome.is_ok() && within;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {}: {} - {name} ({:.2}s, limit {limit}s{})",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            if within { "" } else { ", too slow" }
        );
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
