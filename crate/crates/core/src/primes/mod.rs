//! Prime generation and purely arithmetic prime sums.
//!
//! The sieve is a segmented, odd-only Eratosthenes sieve. Segments are
//! sized to fit in L2 cache (256 KiB of bits covers a span of ~4.2e6
//! integers), so sieving scratch is O(segment) regardless of the limit.
//! Long prime sums stream the segments without materializing the primes
//! and reduce per-segment compensated partials in index order, which
//! makes them bit-reproducible for any worker-thread count.

mod partitions;
mod zeta;

pub use partitions::{goldbach_partitions, polignac_count, PartitionCount};
pub use zeta::{
    mertens_constant, mobius, prime_zeta_direct, prime_zeta_mobius, prime_zeta_mobius_bound,
};

use crate::error::{Error, Result};
use crate::sum::{self, NeumaierSum};

/// Largest admissible sieve limit.
pub const MAX_SIEVE_LIMIT: u64 = 1 << 40;

/// Bits per sieve segment (one bit per odd number).
const SEG_BITS: usize = 1 << 21;
const SEG_WORDS: usize = SEG_BITS / 64;

/// Sieved primes up to a limit with O(1) membership queries.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    /// Bit k set iff 2k+1 is prime (bit 0, the number 1, is clear).
    odd_bits: Vec<u64>,
}

impl PrimeTable {
    /// Sieve all primes `<= limit`.
    pub fn sieve(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::domain(format!("sieve limit must be >= 2, got {limit}")));
        }
        if limit > MAX_SIEVE_LIMIT {
            return Err(Error::domain(format!(
                "sieve limit {limit} exceeds {MAX_SIEVE_LIMIT}"
            )));
        }
        let base = base_primes(limit);
        let n_segs = segment_count(limit);
        let mut primes = vec![2u64];
        let mut odd_bits = Vec::with_capacity(n_segs * SEG_WORDS);

        let parts = sum::indexed_chunks(n_segs, |i| {
            let mut words = vec![u64::MAX; SEG_WORDS];
            fill_segment(&mut words, i, limit, &base);
            let mut segment_primes = Vec::new();
            collect_segment(&words, i, |p| segment_primes.push(p));
            (segment_primes, words)
        });
        for (seg_primes, words) in parts {
            primes.extend_from_slice(&seg_primes);
            odd_bits.extend_from_slice(&words);
        }
        odd_bits.truncate(((limit as usize - 1) / 2) / 64 + 1);
        Ok(PrimeTable {
            limit,
            primes,
            odd_bits,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Ascending list of all primes `<= limit`.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn count(&self) -> usize {
        self.primes.len()
    }

    /// O(1) membership for `1 <= n <= limit`.
    ///
    /// Panics if `n` is 0 or beyond the sieved limit.
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(
            n >= 1 && n <= self.limit,
            "membership query {n} outside [1, {}]",
            self.limit
        );
        if n == 2 {
            return true;
        }
        if n < 2 || n % 2 == 0 {
            return false;
        }
        let k = ((n - 1) / 2) as usize;
        self.odd_bits[k / 64] >> (k % 64) & 1 == 1
    }
}

/// Odd base primes up to `isqrt(limit)` by a plain sieve.
fn base_primes(limit: u64) -> Vec<u64> {
    let root = limit.isqrt() as usize;
    if root < 3 {
        return Vec::new();
    }
    let mut composite = vec![false; root + 1];
    let mut out = Vec::new();
    let mut p = 3usize;
    while p <= root {
        if !composite[p] {
            out.push(p as u64);
            let mut m = p * p;
            while m <= root {
                composite[m] = true;
                m += 2 * p;
            }
        }
        p += 2;
    }
    out
}

fn segment_count(limit: u64) -> usize {
    if limit < 3 {
        0
    } else {
        // bit indices 0..=(limit-1)/2 must exist
        ((limit - 1) / 2 + 1).div_ceil(SEG_BITS as u64) as usize
    }
}

/// Sieve segment `i`: afterwards bit k is set iff `seg_start + 2k` is prime,
/// where `seg_start = 1 + i*SEG_SPAN` (bit k stands for the odd number
/// `2*(i*SEG_BITS + k) + 1`).
fn fill_segment(words: &mut [u64], i: usize, limit: u64, base: &[u64]) {
    debug_assert_eq!(words.len(), SEG_WORDS);
    let k_lo = (i * SEG_BITS) as u64;
    let k_hi = k_lo + SEG_BITS as u64;
    let lo = 2 * k_lo + 1;
    for &p in base {
        if p * p > 2 * k_hi {
            break;
        }
        // first odd multiple of p that is >= max(p^2, lo)
        let mut m = p * p;
        if m < lo {
            let q = lo.div_ceil(p);
            m = p * (q | 1); // round the cofactor up to odd
        }
        let mut k = (m - 1) / 2 - k_lo;
        while k < SEG_BITS as u64 {
            words[(k / 64) as usize] &= !(1u64 << (k % 64));
            k += p;
        }
    }
    if i == 0 {
        words[0] &= !1; // 1 is not prime
    }
    // clear bits beyond the limit
    let k_max = (limit.saturating_sub(1)) / 2; // largest valid bit index
    if k_max < k_hi - 1 {
        let local = (k_max + 1 - k_lo) as usize; // first invalid local index
        let w = local / 64;
        let b = local % 64;
        if b > 0 {
            words[w] &= (1u64 << b) - 1;
            for word in words.iter_mut().skip(w + 1) {
                *word = 0;
            }
        } else {
            for word in words.iter_mut().skip(w) {
                *word = 0;
            }
        }
    }
}

fn collect_segment(words: &[u64], i: usize, mut f: impl FnMut(u64)) {
    let k_lo = (i * SEG_BITS) as u64;
    for (w, &word) in words.iter().enumerate() {
        let mut bits = word;
        while bits != 0 {
            let b = bits.trailing_zeros() as u64;
            f(2 * (k_lo + w as u64 * 64 + b) + 1);
            bits &= bits - 1;
        }
    }
}

/// Visit every prime `<= limit` in ascending order (sequential, O(segment) memory).
pub fn for_each_prime(limit: u64, mut f: impl FnMut(u64)) {
    if limit >= 2 {
        f(2);
    }
    let base = base_primes(limit);
    let mut words = vec![0u64; SEG_WORDS];
    for i in 0..segment_count(limit) {
        words.fill(u64::MAX);
        fill_segment(&mut words, i, limit, &base);
        collect_segment(&words, i, &mut f);
    }
}

/// Compensated sum of `term(p)` over all primes `p <= limit`.
///
/// Segments are processed in parallel; partials merge in segment order,
/// so the bits of the result do not depend on the thread count.
/// Returns the accumulator and the number of terms.
pub fn sum_over_primes<F>(limit: u64, term: F) -> (NeumaierSum, u64)
where
    F: Fn(u64) -> f64 + Sync,
{
    let mut total = NeumaierSum::new();
    let mut count = 0u64;
    if limit >= 2 {
        total.add(term(2));
        count = 1;
    }
    let base = base_primes(limit);
    let parts = sum::indexed_chunks(segment_count(limit), |i| {
        let mut words = vec![u64::MAX; SEG_WORDS];
        fill_segment(&mut words, i, limit, &base);
        let mut s = NeumaierSum::new();
        let mut n = 0u64;
        collect_segment(&words, i, |p| {
            s.add(term(p));
            n += 1;
        });
        (s, n)
    });
    for (s, n) in parts {
        total.merge(s);
        count += n;
    }
    (total, count)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_primes(limit: u64) -> Vec<u64> {
        let mut out = Vec::new();
        'outer: for n in 2..=limit {
            let mut d = 2;
            while d * d <= n {
                if n % d == 0 {
                    continue 'outer;
                }
                d += 1;
            }
            out.push(n);
        }
        out
    }

    #[test]
    fn tiny_limits() {
        assert_eq!(PrimeTable::sieve(10).unwrap().primes(), &[2, 3, 5, 7]);
        assert_eq!(PrimeTable::sieve(2).unwrap().primes(), &[2]);
        assert_eq!(PrimeTable::sieve(3).unwrap().primes(), &[2, 3]);
        assert!(PrimeTable::sieve(1).is_err());
    }

    #[test]
    fn matches_trial_division_to_1e5() {
        let t = PrimeTable::sieve(100_000).unwrap();
        let reference = trial_division_primes(100_000);
        assert_eq!(t.primes(), reference.as_slice());
        assert_eq!(t.count(), 9592);
        for n in 1..=1000u64 {
            assert_eq!(t.is_prime(n), reference.binary_search(&n).is_ok(), "n={n}");
        }
    }

    #[test]
    fn pi_of_1e8() {
        let t = PrimeTable::sieve(100_000_000).unwrap();
        assert_eq!(t.count(), 5_761_455);
        assert_eq!(*t.primes().last().unwrap(), 99_999_989);
    }

    #[test]
    fn streaming_agrees_with_table() {
        let t = PrimeTable::sieve(1_000_000).unwrap();
        let mut streamed = Vec::new();
        for_each_prime(1_000_000, |p| streamed.push(p));
        assert_eq!(t.primes(), streamed.as_slice());
        assert_eq!(t.count(), 78_498);

        let (s, n) = sum_over_primes(1_000_000, |p| 1.0 / p as f64);
        assert_eq!(n, 78_498);
        let mut reference = NeumaierSum::new();
        for &p in t.primes() {
            reference.add(1.0 / p as f64);
        }
        assert!((s.value() - reference.value()).abs() < 1e-14);
    }

    #[test]
    fn segment_boundaries_have_no_gaps() {
        // limits straddling the first segment boundary (span 2*SEG_BITS)
        let span = 2 * super::SEG_BITS as u64;
        for limit in [span - 1, span, span + 1, span + 2, 2 * span - 1] {
            let t = PrimeTable::sieve(limit).unwrap();
            for n in limit - 60..=limit {
                let mut d = 2u64;
                let mut composite = false;
                while d * d <= n {
                    if n % d == 0 {
                        composite = true;
                        break;
                    }
                    d += 1;
                }
                assert_eq!(t.is_prime(n), !composite, "n={n} limit={limit}");
            }
        }
    }
}
