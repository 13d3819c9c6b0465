//! Goldbach partition and Polignac pair counts by direct enumeration.

use crate::error::{Error, Result};
use crate::modes::ModeSet;
use crate::primes::PrimeTable;

/// Representations of an even `n` as an ordered / unordered sum of two
/// members of a prime family.
///
/// The diagonal pair (n/2, n/2) counts once in `unordered` and once in
/// `ordered`, so `ordered = 2*unordered - [n/2 in family]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionCount {
    pub n: u64,
    pub ordered: u64,
    pub unordered: u64,
}

fn family_member(modes: ModeSet, x: u64, table: &PrimeTable) -> bool {
    match modes {
        ModeSet::PrimesP => x >= 2 && table.is_prime(x),
        ModeSet::PrimesPPrime => x == 1 || (x % 2 == 1 && table.is_prime(x)),
        _ => unreachable!("prime families only"),
    }
}

/// Count the ways to write even `n` as a sum of two members of `modes`.
///
/// `table.limit()` must cover `n - 1` so membership of the partner is
/// queryable.
pub fn goldbach_partitions(
    n: u64,
    modes: ModeSet,
    table: &PrimeTable,
) -> Result<PartitionCount> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::domain(format!("n must be even and >= 2, got {n}")));
    }
    if !modes.is_prime_family() {
        return Err(Error::Unsupported(format!(
            "goldbach partitions are defined on prime families, got {modes}"
        )));
    }
    if table.limit() < n - 1 {
        return Err(Error::domain(format!(
            "prime table limit {} is below n-1 = {}",
            table.limit(),
            n - 1
        )));
    }
    let mut unordered = 0u64;
    let mut diagonal = 0u64;
    let start = if modes == ModeSet::PrimesPPrime { 1 } else { 2 };
    for p in start..=n / 2 {
        if family_member(modes, p, table) && family_member(modes, n - p, table) {
            unordered += 1;
            if 2 * p == n {
                diagonal = 1;
            }
        }
    }
    Ok(PartitionCount {
        n,
        ordered: 2 * unordered - diagonal,
        unordered,
    })
}

/// Number of prime pairs `(p, q)` with `q - p = gap` and `q <= limit`.
pub fn polignac_count(gap: u64, limit: u64, table: &PrimeTable) -> Result<u64> {
    if gap < 2 || gap % 2 != 0 {
        return Err(Error::domain(format!("gap must be even and >= 2, got {gap}")));
    }
    if limit < gap + 2 {
        return Err(Error::domain(format!(
            "limit {limit} must be at least gap+2 = {}",
            gap + 2
        )));
    }
    if table.limit() < limit {
        return Err(Error::domain(format!(
            "prime table limit {} is below requested limit {limit}",
            table.limit()
        )));
    }
    let mut count = 0u64;
    for &p in table.primes() {
        if p + gap > limit {
            break;
        }
        if table.is_prime(p + gap) {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force oracle: enumerate all (p, q) pairs with a trial-division
    /// primality test, independent of the sieve and the counting loop.
    fn brute_goldbach(n: u64, pprime: bool) -> (u64, u64) {
        fn is_pr(x: u64) -> bool {
            if x < 2 {
                return false;
            }
            let mut d = 2;
            while d * d <= x {
                if x % d == 0 {
                    return false;
                }
                d += 1;
            }
            true
        }
        let member = |x: u64| {
            if pprime {
                x == 1 || (x % 2 == 1 && is_pr(x))
            } else {
                is_pr(x)
            }
        };
        let mut unordered = 0;
        let mut ordered = 0;
        for p in 1..=n / 2 {
            if member(p) && member(n - p) {
                unordered += 1;
                ordered += if 2 * p == n { 1 } else { 2 };
            }
        }
        (unordered, ordered)
    }

    #[test]
    fn spec_examples() {
        let t = PrimeTable::sieve(100).unwrap();
        let c = goldbach_partitions(10, ModeSet::PrimesP, &t).unwrap();
        assert_eq!((c.unordered, c.ordered), (2, 3)); // {3,7},{5,5}
        let c = goldbach_partitions(2, ModeSet::PrimesPPrime, &t).unwrap();
        assert_eq!((c.unordered, c.ordered), (1, 1)); // {1,1}
        let c = goldbach_partitions(4, ModeSet::PrimesP, &t).unwrap();
        assert_eq!((c.unordered, c.ordered), (1, 1)); // {2,2}
    }

    #[test]
    fn matches_brute_force_to_200() {
        let t = PrimeTable::sieve(250).unwrap();
        for n in (2..=200).step_by(2) {
            if n >= 4 {
                let c = goldbach_partitions(n, ModeSet::PrimesP, &t).unwrap();
                assert_eq!((c.unordered, c.ordered), brute_goldbach(n, false), "P n={n}");
            }
            let c = goldbach_partitions(n, ModeSet::PrimesPPrime, &t).unwrap();
            assert_eq!((c.unordered, c.ordered), brute_goldbach(n, true), "P' n={n}");
        }
    }

    #[test]
    fn ordered_unordered_relation() {
        let t = PrimeTable::sieve(20_000).unwrap();
        for n in (4..=2000).step_by(2) {
            let c = goldbach_partitions(n, ModeSet::PrimesP, &t).unwrap();
            let diag = if t.is_prime(n / 2) { 1 } else { 0 };
            assert_eq!(c.ordered, 2 * c.unordered - diag, "n={n}");
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let t = PrimeTable::sieve(100).unwrap();
        assert!(goldbach_partitions(9, ModeSet::PrimesP, &t).is_err());
        assert!(goldbach_partitions(10, ModeSet::Even, &t).is_err());
        assert!(goldbach_partitions(104, ModeSet::PrimesP, &t).is_err()); // table too small
        assert!(polignac_count(3, 100, &t).is_err());
        assert!(polignac_count(2, 3, &t).is_err());
    }

    #[test]
    fn polignac_small_cases() {
        let t = PrimeTable::sieve(1000).unwrap();
        // (3,5),(5,7),(11,13),(17,19)
        assert_eq!(polignac_count(2, 20, &t).unwrap(), 4);
        assert_eq!(polignac_count(2, 5, &t).unwrap(), 1);
        // (3,7),(7,11),(13,17),(19,23)
        assert_eq!(polignac_count(4, 30, &t).unwrap(), 4);
        assert_eq!(polignac_count(2, 1000, &t).unwrap(), 35);
        assert_eq!(polignac_count(6, 100, &t).unwrap(), 15);
    }
}
