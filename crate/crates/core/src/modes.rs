use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Which integer family labels the Fourier modes of a field.
///
/// `PrimesPPrime` is the odd primes together with 1 (it excludes 2);
/// `PrimesP` is the ordinary primes including 2. The two differ by
/// swapping 1 and 2, so every damped sum over one can be converted to
/// the other by adjusting two terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeSet {
    AllIntegers,
    Even,
    Odd,
    PrimesP,
    PrimesPPrime,
}

impl ModeSet {
    /// True for the two prime families.
    pub fn is_prime_family(self) -> bool {
        matches!(self, ModeSet::PrimesP | ModeSet::PrimesPPrime)
    }

    /// True for the families whose label set contains 0 (the integer
    /// families closed under negation that include the zero mode).
    pub fn includes_zero(self) -> bool {
        matches!(self, ModeSet::AllIntegers | ModeSet::Even)
    }

    /// Membership of a positive integer in the family, given a primality
    /// predicate for the prime families.
    pub fn contains(self, n: u64, is_prime: impl Fn(u64) -> bool) -> bool {
        match self {
            ModeSet::AllIntegers => n >= 1,
            ModeSet::Even => n >= 2 && n % 2 == 0,
            ModeSet::Odd => n % 2 == 1,
            ModeSet::PrimesP => is_prime(n),
            ModeSet::PrimesPPrime => n == 1 || (n % 2 == 1 && is_prime(n)),
        }
    }
}

impl fmt::Display for ModeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ModeSet::AllIntegers => "all",
            ModeSet::Even => "even",
            ModeSet::Odd => "odd",
            ModeSet::PrimesP => "p",
            ModeSet::PrimesPPrime => "pprime",
        };
        f.write_str(s)
    }
}

impl FromStr for ModeSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "all" | "integers" => Ok(ModeSet::AllIntegers),
            "even" => Ok(ModeSet::Even),
            "odd" => Ok(ModeSet::Odd),
            "p" | "primes" => Ok(ModeSet::PrimesP),
            "pprime" | "p1" | "primes1" => Ok(ModeSet::PrimesPPrime),
            other => Err(Error::domain(format!(
                "unknown mode set `{other}` (expected all|even|odd|p|pprime)"
            ))),
        }
    }
}
