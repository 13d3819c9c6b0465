//! Numerical laboratory for fields on a circle whose Fourier modes are
//! restricted to a family of integers (all, even, odd, primes, or odd
//! primes together with 1).
//!
//! The crate provides, roughly bottom-up:
//!
//! * [`primes`] — segmented sieve, Goldbach/Polignac partition counts,
//!   prime zeta function (direct and Möbius-inverted), Mertens constant;
//! * [`special`] — real zeta, complex gamma, and the gamma-derivative
//!   series that feed every asymptotic coefficient;
//! * [`abel`] — exponentially damped mode sums with certified truncation
//!   bounds (the regularized vacuum sums);
//! * [`asymptotics`] — log series and oscillatory-integral forms of the
//!   damped prime sums, plus residual-decay reports;
//! * [`casimir`] — point-splitting renormalization of vacuum energy
//!   densities and the two-point functions they derive from;
//! * [`fock`] — exact fermionic Fock-space algebra on truncated mode
//!   sets; the central terms of composite-boson commutators count
//!   Goldbach partitions;
//! * [`acceptance`] — the end-to-end check suite wired into both
//!   `cargo test` and the `primelab report` subcommand.

pub mod abel;
pub mod acceptance;
pub mod asymptotics;
pub mod casimir;
pub mod error;
pub mod fock;
pub mod modes;
pub mod primes;
pub mod special;
pub mod sum;
pub mod threads;

pub use error::{Error, Result};
pub use modes::ModeSet;
pub use num_complex::Complex64;
pub use primes::PrimeTable;

/// Euler–Mascheroni constant to f64 precision.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
