//! Exponentially damped mode sums with certified truncation.
//!
//! Cutoffs come from closed-form tail bounds, never from
//! run-until-small heuristics:
//!
//! * reciprocal weight: sum_{n>N} e^{-an}/n <= e^{-a(N+1)} / ((N+1)(1-e^{-a}))
//!   (bound 1/n by 1/(N+1), then the geometric series);
//! * linear weight: sum_{n>N} n x^n = x^{N+1}((N+1) - N x)/(1-x)^2 with
//!   x = e^{-a} (differentiate the geometric series);
//! * unit weight: sum_{n>N} |e^{-nz}| = e^{-(N+1) Re z}/(1 - e^{-Re z}).
//!
//! Prime-family sums are subsets of the positive-integer sums with
//! positive terms, so the same bounds certify them. Primes stream
//! through the segmented sieve without being materialized.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::modes::ModeSet;
use crate::primes;
use crate::sum::{self, NeumaierSum};

/// Result of a damped (or truncated power) sum: the value, the cutoff
/// actually used, a certified bound on the omitted tail, and the number
/// of terms summed. `damping` is 0 for undamped power sums.
#[derive(Debug, Clone, Copy)]
pub struct AbelSum<T> {
    pub value: T,
    pub damping: f64,
    pub cutoff: u64,
    pub tail_bound: f64,
    pub terms: u64,
}

/// Largest cutoff the streaming summation will attempt.
pub const MAX_STREAM_CUTOFF: u64 = 1 << 32;

/// Smallest admissible damping.
pub const MIN_DAMPING: f64 = 1e-8;

/// Smallest admissible certified tolerance.
pub const MIN_TOL: f64 = 1e-13;

fn one_minus_exp_neg(a: f64) -> f64 {
    -(-a).exp_m1()
}

pub(crate) fn harmonic_tail(a: f64, n: u64) -> f64 {
    let n1 = (n + 1) as f64;
    (-a * n1).exp() / (n1 * one_minus_exp_neg(a))
}

pub(crate) fn linear_tail(a: f64, n: u64) -> f64 {
    let x = (-a).exp();
    let n1 = (n + 1) as f64;
    let d = one_minus_exp_neg(a);
    x.powf(n1) * (n1 - (n as f64) * x) / (d * d)
}

pub(crate) fn exp_tail(re_z: f64, n: u64) -> f64 {
    (-re_z * (n + 1) as f64).exp() / one_minus_exp_neg(re_z)
}

/// Smallest cutoff N with tail(N) <= tol (doubling then binary search),
/// or a capacity error carrying the best achievable bound.
fn minimal_cutoff(tol: f64, tail: impl Fn(u64) -> f64) -> Result<u64> {
    const FLOOR: u64 = 16; // keep the leading primes even when the bound allows N=0
    if tail(FLOOR) <= tol {
        return Ok(FLOOR);
    }
    let mut lo = FLOOR;
    let mut hi = FLOOR;
    loop {
        hi = (hi * 2).min(MAX_STREAM_CUTOFF);
        if tail(hi) <= tol {
            break;
        }
        if hi == MAX_STREAM_CUTOFF {
            return Err(Error::Capacity {
                requested: tol,
                achievable: tail(MAX_STREAM_CUTOFF),
                needed_cutoff: MAX_STREAM_CUTOFF,
                capability: MAX_STREAM_CUTOFF,
            });
        }
        lo = hi;
    }
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if tail(mid) <= tol {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

fn check_prime_family(modes: ModeSet, what: &str) -> Result<()> {
    if !modes.is_prime_family() {
        return Err(Error::Unsupported(format!(
            "{what} is defined on prime families, got {modes}"
        )));
    }
    Ok(())
}

fn check_damping_tol(a: f64, tol: f64) -> Result<()> {
    if !(a >= MIN_DAMPING) {
        return Err(Error::domain(format!(
            "damping a = {a} below capability minimum {MIN_DAMPING}"
        )));
    }
    if !(tol >= MIN_TOL) {
        return Err(Error::domain(format!(
            "tolerance {tol} below certified minimum {MIN_TOL}"
        )));
    }
    Ok(())
}

/// Stream `term(p)` over the prime family members up to `cutoff`
/// (for the odd-primes-with-1 family this swaps out 2 and adds 1).
fn family_sum(
    modes: ModeSet,
    cutoff: u64,
    term: impl Fn(u64) -> f64 + Sync,
) -> (NeumaierSum, u64) {
    match modes {
        ModeSet::PrimesP => primes::sum_over_primes(cutoff, term),
        ModeSet::PrimesPPrime => {
            let mut acc = NeumaierSum::new();
            acc.add(term(1));
            let mut count = 1u64;
            let (s, n) = primes::sum_over_primes(cutoff, |p| if p == 2 { 0.0 } else { term(p) });
            acc.merge(s);
            count += n.saturating_sub(u64::from(cutoff >= 2));
            (acc, count)
        }
        _ => unreachable!("validated earlier"),
    }
}

/// Damped reciprocal sum over a prime family: sum e^{-ap}/p.
pub fn harmonic_sum(a: f64, modes: ModeSet, tol: f64) -> Result<AbelSum<f64>> {
    check_prime_family(modes, "the damped reciprocal sum")?;
    check_damping_tol(a, tol)?;
    let cutoff = minimal_cutoff(tol, |n| harmonic_tail(a, n))?;
    let (acc, terms) = family_sum(modes, cutoff, |p| (-a * p as f64).exp() / p as f64);
    Ok(AbelSum {
        value: acc.value(),
        damping: a,
        cutoff,
        tail_bound: harmonic_tail(a, cutoff),
        terms,
    })
}

#[cfg(test)]
fn harmonic_sum_at_cutoff(a: f64, modes: ModeSet, cutoff: u64) -> f64 {
    family_sum(modes, cutoff, |p| (-a * p as f64).exp() / p as f64)
        .0
        .value()
}

/// Damped linear sum over a prime family: sum p e^{-ap}.
pub fn linear_sum(a: f64, modes: ModeSet, tol: f64) -> Result<AbelSum<f64>> {
    check_prime_family(modes, "the damped linear sum")?;
    check_damping_tol(a, tol)?;
    let cutoff = minimal_cutoff(tol, |n| linear_tail(a, n))?;
    let (acc, terms) = family_sum(modes, cutoff, |p| p as f64 * (-a * p as f64).exp());
    Ok(AbelSum {
        value: acc.value(),
        damping: a,
        cutoff,
        tail_bound: linear_tail(a, cutoff),
        terms,
    })
}

#[cfg(test)]
fn linear_sum_at_cutoff(a: f64, modes: ModeSet, cutoff: u64) -> f64 {
    family_sum(modes, cutoff, |p| p as f64 * (-a * p as f64).exp())
        .0
        .value()
}

/// Damped exponential sum: sum over the family of e^{-nz}, Re z > 0.
///
/// Integer families collapse to exact geometric closed forms (tail
/// bound 0); prime families stream the sieve with the geometric bound
/// taken at Re z.
pub fn exp_sum(z: Complex64, modes: ModeSet, tol: f64) -> Result<AbelSum<Complex64>> {
    let a = z.re;
    check_damping_tol(a, tol)?;
    let q = (-z).exp();
    match modes {
        ModeSet::AllIntegers | ModeSet::Even | ModeSet::Odd => {
            let value = match modes {
                ModeSet::AllIntegers => q / (1.0 - q),
                ModeSet::Even => q * q / (1.0 - q * q),
                ModeSet::Odd => q / (1.0 - q * q),
                _ => unreachable!(),
            };
            Ok(AbelSum {
                value,
                damping: a,
                cutoff: 0,
                tail_bound: 0.0,
                terms: 0,
            })
        }
        ModeSet::PrimesP | ModeSet::PrimesPPrime => {
            let cutoff = minimal_cutoff(tol, |n| exp_tail(a, n))?;
            let (re, im, terms) = match modes {
                ModeSet::PrimesP => {
                    let (re, n) = primes::sum_over_primes(cutoff, |p| ((-z) * p as f64).exp().re);
                    let (im, _) = primes::sum_over_primes(cutoff, |p| ((-z) * p as f64).exp().im);
                    (re, im, n)
                }
                ModeSet::PrimesPPrime => {
                    let skip2 = |p: u64, part: fn(Complex64) -> f64| {
                        if p == 2 {
                            0.0
                        } else {
                            part(((-z) * p as f64).exp())
                        }
                    };
                    let mut re = NeumaierSum::new();
                    re.add((-z).exp().re);
                    let mut im = NeumaierSum::new();
                    im.add((-z).exp().im);
                    let (r, n) = primes::sum_over_primes(cutoff, |p| skip2(p, |v| v.re));
                    let (i, _) = primes::sum_over_primes(cutoff, |p| skip2(p, |v| v.im));
                    re.merge(r);
                    im.merge(i);
                    (re, im, n.saturating_sub(u64::from(cutoff >= 2)) + 1)
                }
                _ => unreachable!(),
            };
            Ok(AbelSum {
                value: Complex64::new(re.value(), im.value()),
                damping: a,
                cutoff,
                tail_bound: exp_tail(a, cutoff),
                terms,
            })
        }
    }
}

/// Internal tolerance (relative to the leading 1/a^2 divergence) for the
/// integer-family energy sums.
const ENERGY_REL_TOL: f64 = 1e-13;
/// Recompute the exponential exactly every BLOCK terms; in between use
/// the one-step recurrence (drift <= BLOCK ulps, ~6e-14 relative).
const BLOCK: u64 = 512;
const CHUNK_STEPS: u64 = 1 << 16;

/// Damped sum of n e^{-an} over the positive members of an integer family.
fn integer_linear_sum(a: f64, first: u64, step: u64, cutoff: u64) -> (f64, u64) {
    if first > cutoff {
        return (0.0, 0);
    }
    let total_steps = (cutoff - first) / step + 1;
    let chunks = total_steps.div_ceil(CHUNK_STEPS);
    let parts = sum::indexed_chunks(chunks as usize, |c| {
        let begin = first + (c as u64) * CHUNK_STEPS * step;
        let steps = CHUNK_STEPS.min(total_steps - (c as u64) * CHUNK_STEPS);
        let ratio = (-a * step as f64).exp();
        let mut acc = NeumaierSum::new();
        let mut i = 0u64;
        while i < steps {
            let block = BLOCK.min(steps - i);
            let mut n = begin + i * step;
            let mut e = (-a * n as f64).exp();
            for _ in 0..block {
                acc.add(n as f64 * e);
                e *= ratio;
                n += step;
            }
            i += block;
        }
        acc
    });
    (sum::combine(parts).value(), total_steps)
}

/// Regularized vacuum energy density as a damped mode sum:
/// for the integer families (2 pi R)^{-1} sum w_n e^{-eps w_n} with
/// w_n = n/R; for the prime families -(1/(4 pi R^2)) sum p e^{-ap}
/// with a = eps/R (the fermionic sum carries the minus sign).
pub fn damped_energy_density(modes: ModeSet, eps: f64, radius: f64) -> Result<AbelSum<f64>> {
    if !(eps > 0.0) || !(radius > 0.0) {
        return Err(Error::domain(format!(
            "eps and R must be positive (eps = {eps}, R = {radius})"
        )));
    }
    let a = eps / radius;
    if !(a >= MIN_DAMPING) {
        return Err(Error::domain(format!(
            "eps/R = {a} below capability minimum {MIN_DAMPING}"
        )));
    }
    let r2 = radius * radius;
    match modes {
        ModeSet::AllIntegers | ModeSet::Even | ModeSet::Odd => {
            let scale = 1.0 / (2.0 * std::f64::consts::PI * r2);
            let tol = ENERGY_REL_TOL * (1.0 / (a * a)).max(1.0);
            let cutoff = minimal_cutoff(tol, |n| linear_tail(a, n))?;
            let (first, step) = match modes {
                ModeSet::AllIntegers => (1, 1),
                ModeSet::Even => (2, 2),
                ModeSet::Odd => (1, 2),
            _ => unreachable!(),
            };
            let (value, terms) = integer_linear_sum(a, first, step, cutoff);
            Ok(AbelSum {
                value: scale * value,
                damping: a,
                cutoff,
                tail_bound: scale * linear_tail(a, cutoff),
                terms,
            })
        }
        ModeSet::PrimesP | ModeSet::PrimesPPrime => {
            let tol = (ENERGY_REL_TOL * (1.0 / (a * a)).max(1.0)).max(MIN_TOL);
            let g = linear_sum(a, modes, tol)?;
            let scale = 1.0 / (4.0 * std::f64::consts::PI * r2);
            Ok(AbelSum {
                value: -scale * g.value,
                damping: a,
                cutoff: g.cutoff,
                tail_bound: scale * g.tail_bound,
                terms: g.terms,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    // trial-division brute-force oracle over the first primes
    fn brute<F: Fn(u64) -> f64>(limit: u64, pprime: bool, term: F) -> f64 {
        let mut acc = if pprime { term(1) } else { 0.0 };
        'n: for n in 2..=limit {
            let mut d = 2;
            while d * d <= n {
                if n % d == 0 {
                    continue 'n;
                }
                d += 1;
            }
            if pprime && n == 2 {
                continue;
            }
            acc += term(n);
        }
        acc
    }

    #[test]
    fn harmonic_small_damping_free_values() {
        // 30 terms suffice at a = 1
        let r = harmonic_sum(1.0, ModeSet::PrimesP, 1e-12).unwrap();
        let oracle = brute(120, false, |p| (-(p as f64)).exp() / p as f64);
        assert!((r.value - oracle).abs() < 1e-12);
        assert!((r.value - 0.08574288426884157).abs() < 1e-12);
        assert!(r.tail_bound <= 1e-12);

        let r = harmonic_sum(1.0, ModeSet::PrimesPPrime, 1e-12).unwrap();
        let oracle = brute(120, true, |p| (-(p as f64)).exp() / p as f64);
        assert!((r.value - oracle).abs() < 1e-12);
        assert!((r.value - 0.38595468382197756).abs() < 1e-12);
    }

    #[test]
    fn harmonic_large_damping_dominated_by_first_prime() {
        let r = harmonic_sum(50.0, ModeSet::PrimesP, 1e-13).unwrap();
        assert!(r.value < 1e-40);
        assert!((r.value / ((-100.0f64).exp() / 2.0) - 1.0).abs() < 1e-20);
    }

    #[test]
    fn linear_values() {
        let r = linear_sum(1.0, ModeSet::PrimesP, 1e-12).unwrap();
        let oracle = brute(150, false, |p| p as f64 * (-(p as f64)).exp());
        assert!((r.value - oracle).abs() < 1e-12);
        assert!((r.value - 0.46031859593333346).abs() < 1e-12);

        let r = linear_sum(50.0, ModeSet::PrimesP, 1e-13).unwrap();
        assert!((r.value / (2.0 * (-100.0f64).exp()) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn exp_sum_values_and_symmetry() {
        let r = exp_sum(Complex64::new(1.0, 0.0), ModeSet::PrimesP, 1e-12).unwrap();
        assert!((r.value.re - 0.19279118970439516).abs() < 1e-12);
        assert_eq!(r.value.im, 0.0);

        // Schwarz reflection of a real-coefficient sum
        let z = Complex64::new(0.3, 0.7);
        let a = exp_sum(z, ModeSet::PrimesPPrime, 1e-12).unwrap().value;
        let b = exp_sum(z.conj(), ModeSet::PrimesPPrime, 1e-12).unwrap().value;
        assert!((a.conj() - b).norm() < 1e-14);
    }

    #[test]
    fn exp_sum_closed_forms_match_direct() {
        let z = Complex64::new(0.05, 0.3);
        for modes in [ModeSet::AllIntegers, ModeSet::Even, ModeSet::Odd] {
            let closed = exp_sum(z, modes, 1e-12).unwrap().value;
            let mut direct = Complex64::new(0.0, 0.0);
            let (first, step) = match modes {
                ModeSet::AllIntegers => (1, 1),
                ModeSet::Even => (2, 2),
                _ => (1, 2),
            };
            let mut n = first;
            while n < 2000 {
                direct += (-z * n as f64).exp();
                n += step;
            }
            assert!(
                (closed - direct).norm() < 1e-12 * direct.norm() + exp_tail(z.re, 1999),
                "{modes}"
            );
        }
    }

    #[test]
    fn tail_certification_doubling() {
        // recomputing with cutoff 2N moves the value by at most tail_bound
        let cases = [
            (0.9, 1e-10),
            (0.13, 1e-9),
            (0.031, 1e-11),
            (0.007, 1e-12),
            (0.0019, 1e-10),
        ];
        for (a, tol) in cases {
            let r = harmonic_sum(a, ModeSet::PrimesP, tol).unwrap();
            let doubled = harmonic_sum_at_cutoff(a, ModeSet::PrimesP, r.cutoff * 2);
            assert!((doubled - r.value).abs() <= r.tail_bound, "harmonic a={a}");

            let r = linear_sum(a, ModeSet::PrimesP, tol).unwrap();
            let doubled = linear_sum_at_cutoff(a, ModeSet::PrimesP, r.cutoff * 2);
            assert!((doubled - r.value).abs() <= r.tail_bound, "linear a={a}");
        }
    }

    #[test]
    fn monotone_in_damping() {
        // both sums strictly decrease as the damping grows
        let grid = [0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 0.9];
        let mut prev_f = f64::INFINITY;
        let mut prev_g = f64::INFINITY;
        for &a in grid.iter() {
            let f = harmonic_sum(a, ModeSet::PrimesP, 1e-12).unwrap().value;
            let g = linear_sum(a, ModeSet::PrimesP, 1e-12).unwrap().value;
            assert!(f < prev_f && g < prev_g, "a={a}");
            prev_f = f;
            prev_g = g;
        }
    }

    #[test]
    fn energy_density_all_matches_closed_form() {
        // (2 pi R^2)^{-1} sum n e^{-an} = 1/(2 pi R^2 (e^{a/2}-e^{-a/2})^2)
        for (eps, radius) in [(0.1, 1.0), (0.05, 0.7), (0.3, 1.3), (1.0, 1.0)] {
            let v = damped_energy_density(ModeSet::AllIntegers, eps, radius)
                .unwrap()
                .value;
            let a: f64 = eps / radius;
            let closed = 1.0
                / (2.0 * PI * radius * radius * ((a / 2.0).exp() - (-a / 2.0).exp()).powi(2));
            assert!((v / closed - 1.0).abs() < 1e-12, "eps={eps} R={radius}");
        }
    }

    #[test]
    fn energy_density_reindexing_identities() {
        // sum_{even n} n e^{-an} = sum_m 2m e^{-2am}: even at (eps) = 2 * all at (2 eps)
        let eps = 0.12;
        let even = damped_energy_density(ModeSet::Even, eps, 1.0).unwrap().value;
        let all2 = damped_energy_density(ModeSet::AllIntegers, 2.0 * eps, 1.0)
            .unwrap()
            .value;
        assert!((even - 2.0 * all2).abs() < 1e-13 * even.abs());

        let odd = damped_energy_density(ModeSet::Odd, eps, 1.0).unwrap().value;
        let all = damped_energy_density(ModeSet::AllIntegers, eps, 1.0)
            .unwrap()
            .value;
        assert!(((even + odd) - all).abs() < 1e-12 * all.abs());
    }

    #[test]
    fn energy_density_prime_reuses_linear_sum() {
        let v = damped_energy_density(ModeSet::PrimesP, 1.0, 1.0).unwrap().value;
        assert!((v - (-0.46031859593333346 / (4.0 * PI))).abs() < 1e-13);
        assert!(v < 0.0);
    }

    #[test]
    fn rejects_out_of_capability_inputs() {
        assert!(harmonic_sum(1e-9, ModeSet::PrimesP, 1e-10).is_err());
        assert!(harmonic_sum(0.1, ModeSet::PrimesP, 1e-14).is_err());
        assert!(harmonic_sum(0.1, ModeSet::Even, 1e-10).is_err());
        // linear sum at the capability corner: cutoff would exceed 2^33
        match linear_sum(1e-8, ModeSet::PrimesP, 1e-13) {
            Err(Error::Capacity { achievable, .. }) => assert!(achievable > 1e-13),
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn bit_reproducible_across_thread_counts() {
        crate::threads::set_max_threads(1);
        let a = harmonic_sum(0.001, ModeSet::PrimesP, 1e-12).unwrap().value;
        crate::threads::set_max_threads(4);
        let b = harmonic_sum(0.001, ModeSet::PrimesP, 1e-12).unwrap().value;
        crate::threads::set_max_threads(0);
        let c = harmonic_sum(0.001, ModeSet::PrimesP, 1e-12).unwrap().value;
        assert_eq!(a.to_bits(), b.to_bits());
        assert_eq!(a.to_bits(), c.to_bits());
    }
}
