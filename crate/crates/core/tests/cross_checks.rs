//! Cross-module invariants that tie the arithmetic, summation, and
//! asymptotic layers together.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use primelab_core::abel;
use primelab_core::asymptotics::{self, SumKind};
use primelab_core::primes::{self, PrimeTable};
use primelab_core::ModeSet;

#[test]
fn every_even_number_to_one_million_has_a_prime_pair() {
    // a zero partition count anywhere below 1e6 would be a bug (the
    // conjecture is verified far beyond); early-exit on the first pair
    let table = PrimeTable::sieve(1_000_000).unwrap();
    let primes = table.primes();
    for n in (4..=1_000_000u64).step_by(2) {
        let mut found = false;
        for &p in primes {
            if p > n / 2 {
                break;
            }
            if table.is_prime(n - p) {
                found = true;
                break;
            }
        }
        assert!(found, "no prime pair for {n}");
    }
}

#[test]
fn partition_relation_on_random_even_inputs() {
    // ordered = 2 * unordered - [n/2 in family], sampled widely
    let table = PrimeTable::sieve(100_000).unwrap();
    let mut rng = StdRng::seed_from_u64(1);
    for _ in 0..10_000 {
        let n = 2 * rng.gen_range(2..=50_000u64);
        let c = primes::goldbach_partitions(n, ModeSet::PrimesP, &table).unwrap();
        let diag = u64::from(table.is_prime(n / 2));
        assert_eq!(c.ordered, 2 * c.unordered - diag, "n={n}");
        let c = primes::goldbach_partitions(n, ModeSet::PrimesPPrime, &table).unwrap();
        let half = n / 2;
        let diag = u64::from(half == 1 || (half % 2 == 1 && table.is_prime(half)));
        assert_eq!(c.ordered, 2 * c.unordered - diag, "P' n={n}");
    }
}

#[test]
fn derivative_of_harmonic_sum_is_exponential_sum() {
    // -d/da sum e^{-ap}/p = sum e^{-ap}, via central differences
    for a in [0.5, 0.1, 0.01] {
        let h = 1e-4 * a;
        let fp = abel::harmonic_sum(a + h, ModeSet::PrimesP, 1e-13).unwrap().value;
        let fm = abel::harmonic_sum(a - h, ModeSet::PrimesP, 1e-13).unwrap().value;
        let deriv = -(fp - fm) / (2.0 * h);
        let e = abel::exp_sum(Complex64::new(a, 0.0), ModeSet::PrimesP, 1e-13)
            .unwrap()
            .value
            .re;
        assert!((deriv / e - 1.0).abs() < 1e-6, "a={a}");
    }
}

#[test]
fn residual_exponents_stable_under_tolerance_refinement() {
    let grid = [1e-2, 1e-3, 1e-4];
    let coarse = asymptotics::residual_report(SumKind::Harmonic, &grid, 3, 1e-9).unwrap();
    let fine = asymptotics::residual_report(SumKind::Harmonic, &grid, 3, 1e-11).unwrap();
    let a = coarse.integral_decay_exponent.unwrap();
    let b = fine.integral_decay_exponent.unwrap();
    assert!((a - b).abs() < 1e-2, "{a} vs {b}");

    let coarse = asymptotics::residual_report(SumKind::Linear, &grid, 3, 1e-8).unwrap();
    let fine = asymptotics::residual_report(SumKind::Linear, &grid, 3, 1e-10).unwrap();
    let a = coarse.integral_decay_exponent.unwrap();
    let b = fine.integral_decay_exponent.unwrap();
    assert!((a - b).abs() < 1e-2, "{a} vs {b}");
}

#[test]
fn prime_zeta_routes_agree_on_moderate_grid() {
    // same statement as the acceptance criterion, on a faster grid
    for s in [1.5, 2.0, 3.0, 5.0] {
        let d = primes::prime_zeta_direct(s, 10_000_000).unwrap();
        let m = primes::prime_zeta_mobius(s, 64).unwrap();
        let budget = d.tail_bound + primes::prime_zeta_mobius_bound(s, 64) + 1e-12;
        assert!((d.value - m).abs() <= budget, "s={s}");
    }
}

#[test]
fn abel_results_identical_across_runs() {
    // determinism contract: equal inputs give equal bits
    let a = abel::harmonic_sum(0.003, ModeSet::PrimesP, 1e-12).unwrap();
    let b = abel::harmonic_sum(0.003, ModeSet::PrimesP, 1e-12).unwrap();
    assert_eq!(a.value.to_bits(), b.value.to_bits());
    assert_eq!(a.cutoff, b.cutoff);
}
