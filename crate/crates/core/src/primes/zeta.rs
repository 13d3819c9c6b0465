//! Prime zeta function and the Mertens constant.
//!
//! Two independent routes to P(s) = sum over primes of p^{-s}:
//! a direct sieved sum with an integral tail bound, and the
//! Möbius-inverted series sum_k mu(k)/k * log zeta(k s). The constant
//! B1 = gamma + sum_{k>=2} mu(k)/k * log zeta(k) shows up as the O(1)
//! term of every damped reciprocal prime sum.

use crate::abel::AbelSum;
use crate::error::{Error, Result};
use crate::primes::sum_over_primes;
use crate::special;
use crate::EULER_GAMMA;

/// Möbius function by direct factorization (intended for small k).
pub fn mobius(k: u64) -> i32 {
    assert!(k >= 1, "mobius is defined on positive integers");
    let mut n = k;
    let mut factors = 0u32;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0; // squareful
            }
            factors += 1;
        }
        d += 1;
    }
    if n > 1 {
        factors += 1;
    }
    if factors % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Direct evaluation of P(s) truncated at `limit`, with the tail bound
/// sum_{n > limit} n^{-s} <= limit^{1-s}/(s-1).
pub fn prime_zeta_direct(s: f64, limit: u64) -> Result<AbelSum<f64>> {
    if !(s > 1.0) {
        return Err(Error::domain(format!(
            "prime zeta diverges for s <= 1 (s = {s}); the line Re s = 0 is a natural boundary"
        )));
    }
    if limit < 2 {
        return Err(Error::domain(format!("limit must be >= 2, got {limit}")));
    }
    let (acc, terms) = sum_over_primes(limit, |p| (p as f64).powf(-s));
    let tail_bound = (limit as f64).powf(1.0 - s) / (s - 1.0);
    Ok(AbelSum {
        value: acc.value(),
        damping: 0.0,
        cutoff: limit,
        tail_bound,
        terms,
    })
}

/// P(s) by Möbius inversion: sum_{k=1}^{k_max} mu(k)/k * log zeta(k s).
pub fn prime_zeta_mobius(s: f64, k_max: u64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::domain(format!(
            "prime zeta diverges for s <= 1 (s = {s})"
        )));
    }
    if k_max < 1 {
        return Err(Error::domain("k_max must be >= 1".to_string()));
    }
    let mut acc = 0.0;
    for k in 1..=k_max {
        let mu = mobius(k);
        if mu == 0 {
            continue;
        }
        // ln zeta via ln(1 + (zeta-1)) keeps accuracy once zeta(ks) ~ 1
        let term = special::zeta_m1(k as f64 * s)?.ln_1p() / k as f64;
        acc += f64::from(mu) * term;
    }
    Ok(acc)
}

/// Tail bound for the Möbius series: |sum_{k > k_max}| is dominated by
/// a geometric series in 2^{-s}.
pub fn prime_zeta_mobius_bound(s: f64, k_max: u64) -> f64 {
    // log zeta(x) <= zeta(x) - 1 <= 2^{1-x} for x >= 3
    let k1 = (k_max + 1) as f64;
    2f64.powf(1.0 - k1 * s) / (k1 * (1.0 - 2f64.powf(-s)))
}

/// Mertens constant B1 = gamma + sum_{k=2}^{k_max} mu(k)/k * log zeta(k).
///
/// Terms decay like 2^{-k}; k_max = 64 exhausts f64 precision.
pub fn mertens_constant(k_max: u64) -> Result<f64> {
    if k_max < 2 {
        return Err(Error::domain(format!("k_max must be >= 2, got {k_max}")));
    }
    let mut acc = EULER_GAMMA;
    for k in 2..=k_max {
        let mu = mobius(k);
        if mu == 0 {
            continue;
        }
        acc += f64::from(mu) / k as f64 * special::zeta_m1(k as f64)?.ln_1p();
    }
    Ok(acc)
}
