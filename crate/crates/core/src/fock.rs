//! Exact fermionic Fock-space algebra on truncated mode sets.
//!
//! Two species of real fermion operators b^j_r obey
//! {b^i_r, b^j_s} = delta^{ij} delta_{r,-s}; negative modes create,
//! positive modes annihilate, and b^j_0 (present when the family
//! contains 0) is a Majorana zero mode with (b_0)^2 = 1/2. The
//! composite boson operators are bilinear sums
//!
//! ```text
//! a_n = i sum_r b^1_r b^2_{n-r} ,    r and n-r in the mode family,
//! ```
//!
//! with the negative-index composite defined as the adjoint of the
//! positive one (taking the sign prefactor of the defining formula
//! literally on negative indices would instead give a_{-n} = -a_n*
//! and flip every central term's sign). Since the two species always
//! anticommute, normal ordering the cross-species bilinear is the
//! identity rearrangement and carries no vacuum subtraction.
//!
//! The vacuum expectation of [a_n, a_{-m}] is then a finite contraction
//! count: it vanishes for n != m, and on the diagonal it counts the
//! ordered pairs (p, q) of family members with p + q = n (each pair
//! once, the diagonal pair p = q once, zero-mode pairs contributing
//! 1/2 each). On the prime families that count is exactly the ordered
//! Goldbach partition number.
//!
//! Everything here is exact: amplitudes are Gaussian integers scaled
//! by powers of 1/2 (the zero-mode factor), stored as
//! [`DyadicComplex`], so a central term is never a float artifact.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::modes::ModeSet;
use crate::primes::{goldbach_partitions, PrimeTable};

// ---------------------------------------------------------------------------
// exact amplitudes
// ---------------------------------------------------------------------------

/// (re + i im) / 2^shift with integer re, im.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DyadicComplex {
    re: i64,
    im: i64,
    shift: u8,
}

impl DyadicComplex {
    pub const ZERO: DyadicComplex = DyadicComplex { re: 0, im: 0, shift: 0 };
    pub const ONE: DyadicComplex = DyadicComplex { re: 1, im: 0, shift: 0 };
    pub const I: DyadicComplex = DyadicComplex { re: 0, im: 1, shift: 0 };

    fn normalize(mut self) -> Self {
        if self.re == 0 && self.im == 0 {
            self.shift = 0;
            return self;
        }
        while self.shift > 0 && self.re % 2 == 0 && self.im % 2 == 0 {
            self.re /= 2;
            self.im /= 2;
            self.shift -= 1;
        }
        self
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn mul(self, other: DyadicComplex) -> DyadicComplex {
        DyadicComplex {
            re: self.re * other.re - self.im * other.im,
            im: self.re * other.im + self.im * other.re,
            shift: self.shift + other.shift,
        }
        .normalize()
    }

    pub fn add(self, other: DyadicComplex) -> DyadicComplex {
        let shift = self.shift.max(other.shift);
        let a = 1i64 << (shift - self.shift);
        let b = 1i64 << (shift - other.shift);
        DyadicComplex {
            re: self.re * a + other.re * b,
            im: self.im * a + other.im * b,
            shift,
        }
        .normalize()
    }

    pub fn negate(self) -> DyadicComplex {
        DyadicComplex {
            re: -self.re,
            im: -self.im,
            shift: self.shift,
        }
    }

    /// Multiply by 1/2 (zero-mode matrix element).
    fn half(self) -> DyadicComplex {
        DyadicComplex {
            re: self.re,
            im: self.im,
            shift: self.shift + 1,
        }
        .normalize()
    }

    pub fn to_complex(self) -> Complex64 {
        let scale = (0.5f64).powi(self.shift as i32);
        Complex64::new(self.re as f64 * scale, self.im as f64 * scale)
    }
}

// ---------------------------------------------------------------------------
// states and vectors
// ---------------------------------------------------------------------------

/// Occupied positive mode labels per species, ascending, occupation <= 1,
/// plus one zero-mode occupancy flag per species.
///
/// The basis ket is Z1 C1 Z2 C2 |0> with C_j the ascending product of
/// creation operators b^j_{-p} and Z_j the (rescaled) zero-mode factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FockState {
    pub zero1: bool,
    pub species1: Vec<u32>,
    pub zero2: bool,
    pub species2: Vec<u32>,
}

impl FockState {
    pub fn vacuum() -> Self {
        FockState {
            zero1: false,
            species1: Vec::new(),
            zero2: false,
            species2: Vec::new(),
        }
    }

    pub fn is_vacuum(&self) -> bool {
        !self.zero1 && !self.zero2 && self.species1.is_empty() && self.species2.is_empty()
    }
}

/// Sparse vector over Fock basis states with exact amplitudes.
#[derive(Debug, Clone, Default)]
pub struct FockVector {
    amps: BTreeMap<FockState, DyadicComplex>,
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector::default()
    }

    pub fn vacuum() -> Self {
        let mut v = FockVector::default();
        v.amps.insert(FockState::vacuum(), DyadicComplex::ONE);
        v
    }

    pub fn basis(state: FockState, amp: DyadicComplex) -> Self {
        let mut v = FockVector::default();
        v.accumulate(state, amp);
        v
    }

    fn accumulate(&mut self, state: FockState, amp: DyadicComplex) {
        if amp.is_zero() {
            return;
        }
        match self.amps.entry(state) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let merged = e.get().add(amp);
                if merged.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = merged;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(amp);
            }
        }
    }

    pub fn amplitude(&self, state: &FockState) -> DyadicComplex {
        self.amps.get(state).copied().unwrap_or(DyadicComplex::ZERO)
    }

    pub fn vacuum_amplitude(&self) -> DyadicComplex {
        self.amplitude(&FockState::vacuum())
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FockState, &DyadicComplex)> {
        self.amps.iter()
    }

    pub fn add(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (s, a) in other.iter() {
            out.accumulate(s.clone(), *a);
        }
        out
    }

    pub fn sub(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (s, a) in other.iter() {
            out.accumulate(s.clone(), a.negate());
        }
        out
    }
}

/// Fermion species label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Species {
    One,
    Two,
}

/// Apply one fermion operator b^{species}_mode to a basis state.
///
/// Returns the image state and the exact scalar factor, or None when
/// the action annihilates (creating an occupied label or annihilating
/// an absent one).
fn apply_mode(
    state: &FockState,
    species: Species,
    mode: i64,
    amp: DyadicComplex,
) -> Option<(FockState, DyadicComplex)> {
    let mut s = state.clone();
    // operators standing to the left of the acted-on slot in Z1 C1 Z2 C2
    let species2_offset = |st: &FockState| u32::from(st.zero1) as usize + st.species1.len();
    let (crossings, factor) = match (species, mode.cmp(&0)) {
        (Species::One, std::cmp::Ordering::Equal) => {
            let f = if s.zero1 {
                s.zero1 = false;
                amp
            } else {
                s.zero1 = true;
                amp.half()
            };
            (0usize, f)
        }
        (Species::Two, std::cmp::Ordering::Equal) => {
            let cross = species2_offset(state);
            let f = if s.zero2 {
                s.zero2 = false;
                amp
            } else {
                s.zero2 = true;
                amp.half()
            };
            (cross, f)
        }
        (sp, std::cmp::Ordering::Less) => {
            // creation of label p = -mode
            let p = (-mode) as u32;
            let (list, base) = match sp {
                Species::One => (&mut s.species1, u32::from(state.zero1) as usize),
                Species::Two => (
                    &mut s.species2,
                    species2_offset(state) + u32::from(state.zero2) as usize,
                ),
            };
            match list.binary_search(&p) {
                Ok(_) => return None, // occupied: b_{-p} b_{-p} = 0
                Err(idx) => {
                    list.insert(idx, p);
                    (base + idx, amp)
                }
            }
        }
        (sp, std::cmp::Ordering::Greater) => {
            // annihilation of label p = mode
            let p = mode as u32;
            let (list, base) = match sp {
                Species::One => (&mut s.species1, u32::from(state.zero1) as usize),
                Species::Two => (
                    &mut s.species2,
                    species2_offset(state) + u32::from(state.zero2) as usize,
                ),
            };
            match list.binary_search(&p) {
                Ok(idx) => {
                    list.remove(idx);
                    (base + idx, amp)
                }
                Err(_) => return None,
            }
        }
    };
    let signed = if crossings % 2 == 1 {
        factor.negate()
    } else {
        factor
    };
    Some((s, signed))
}

/// Apply b^{species}_mode to every component of a vector.
pub fn apply_fermion(species: Species, mode: i64, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    for (state, amp) in v.iter() {
        if let Some((s, a)) = apply_mode(state, species, mode, *amp) {
            out.accumulate(s, a);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// bilinear operators
// ---------------------------------------------------------------------------

/// One term coeff * b^1_r b^2_s (b^2_s acts first).
#[derive(Debug, Clone, Copy)]
pub struct BilinearTerm {
    pub r: i64,
    pub s: i64,
    pub coeff: DyadicComplex,
}

/// A finite sum of cross-species bilinears.
#[derive(Debug, Clone, Default)]
pub struct BilinearOperator {
    pub terms: Vec<BilinearTerm>,
}

impl BilinearOperator {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Apply a bilinear operator to a vector, exactly.
///
/// Every term mode must lie within +-cutoff, so no created label can
/// leave the tracked window (nothing is silently dropped).
pub fn apply_bilinear(
    op: &BilinearOperator,
    v: &FockVector,
    cutoff: i64,
) -> Result<FockVector> {
    for t in &op.terms {
        for mode in [t.r, t.s] {
            if mode.abs() > cutoff {
                return Err(Error::Cutoff { mode, cutoff });
            }
        }
    }
    let mut out = FockVector::zero();
    for (state, amp) in v.iter() {
        for t in &op.terms {
            let Some((s1, a1)) = apply_mode(state, Species::Two, t.s, *amp) else {
                continue;
            };
            let Some((s2, a2)) = apply_mode(&s1, Species::One, t.r, a1) else {
                continue;
            };
            out.accumulate(s2, a2.mul(t.coeff));
        }
    }
    Ok(out)
}

fn is_prime_u64(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= x {
        if x % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Membership of a (possibly negative or zero) mode label in the family.
fn mode_member(modes: ModeSet, x: i64) -> bool {
    if x == 0 {
        return modes.includes_zero();
    }
    modes.contains(x.unsigned_abs(), is_prime_u64)
}

/// Composite boson operator a_n = i sum_r b^1_r b^2_{n-r} with r and
/// n-r restricted to the (signed) mode family and to |.| <= cutoff.
///
/// Both signs of n use coefficient +i, which makes a_{-n} the adjoint
/// of a_n; families of fixed parity reject incompatible n.
pub fn build_composite(n: i64, modes: ModeSet, cutoff: i64) -> Result<BilinearOperator> {
    if n == 0 {
        return Err(Error::domain("composite index n must be nonzero".to_string()));
    }
    if cutoff < 1 {
        return Err(Error::domain(format!("cutoff must be >= 1, got {cutoff}")));
    }
    let parity_fixed = matches!(
        modes,
        ModeSet::Even | ModeSet::Odd | ModeSet::PrimesPPrime
    );
    if parity_fixed && n % 2 != 0 {
        return Err(Error::domain(format!(
            "family {modes} only composes even indices, got {n}"
        )));
    }
    let mut terms = Vec::new();
    for r in -cutoff..=cutoff {
        let s = n - r;
        if s.abs() > cutoff {
            continue;
        }
        if mode_member(modes, r) && mode_member(modes, s) {
            terms.push(BilinearTerm {
                r,
                s,
                coeff: DyadicComplex::I,
            });
        }
    }
    Ok(BilinearOperator { terms })
}

/// Vacuum expectation of the commutator of two composites.
#[derive(Debug, Clone, Copy)]
pub struct CentralTermReport {
    pub modes: ModeSet,
    pub n: u64,
    pub m: u64,
    pub cutoff: i64,
    /// <0| [a_n, a_{-m}] |0>, an exact half-integer (integer off the
    /// zero-mode families).
    pub raw: f64,
    /// raw / n.
    pub normalized: f64,
}

/// Exact central term <0|[a_n, a_{-m}]|0> by sparse vacuum application.
///
/// Contributing contractions only involve labels up to max(n, m), so
/// any cutoff >= n + m is sufficient (the cutoff-stability tests
/// confirm the window rather than assuming it).
pub fn central_term(n: u64, m: u64, modes: ModeSet, cutoff: i64) -> Result<CentralTermReport> {
    if n < 2 || n % 2 != 0 || m < 2 || m % 2 != 0 {
        return Err(Error::domain(format!(
            "central terms are taken between even indices >= 2 (n = {n}, m = {m})"
        )));
    }
    if (cutoff as u64) < n + m {
        return Err(Error::Cutoff {
            mode: (n + m) as i64,
            cutoff,
        });
    }
    let a = build_composite(n as i64, modes, cutoff)?;
    let b = build_composite(-(m as i64), modes, cutoff)?;
    let vac = FockVector::vacuum();
    let ab = apply_bilinear(&a, &apply_bilinear(&b, &vac, cutoff)?, cutoff)?;
    let ba = apply_bilinear(&b, &apply_bilinear(&a, &vac, cutoff)?, cutoff)?;
    let amp = ab.vacuum_amplitude().add(ba.vacuum_amplitude().negate());
    let value = amp.to_complex();
    debug_assert!(value.im == 0.0, "central term must be real, got {value}");
    Ok(CentralTermReport {
        modes,
        n,
        m,
        cutoff,
        raw: value.re,
        normalized: value.re / n as f64,
    })
}

// ---------------------------------------------------------------------------
// multi-particle states
// ---------------------------------------------------------------------------

/// All multisets {p_1 <= ... <= p_parts} of family members summing to n.
///
/// For parts = 2 the number of multisets equals the unordered Goldbach
/// partition count of the family.
pub fn enumerate_prime_states(n: u64, parts: u32, modes: ModeSet) -> Result<Vec<Vec<u64>>> {
    if n < 2 {
        return Err(Error::domain(format!("n must be >= 2, got {n}")));
    }
    if !(2..=3).contains(&parts) {
        return Err(Error::domain(format!("parts must be 2 or 3, got {parts}")));
    }
    let table = if modes.is_prime_family() {
        Some(PrimeTable::sieve(n.max(2))?)
    } else {
        None
    };
    let member = |x: u64| -> bool {
        if x == 0 {
            return false;
        }
        match &table {
            Some(t) => modes.contains(x, |v| v <= t.limit() && t.is_prime(v)),
            None => modes.contains(x, |_| false),
        }
    };
    let mut out = Vec::new();
    if parts == 2 {
        for p in 1..=n / 2 {
            if member(p) && member(n - p) {
                out.push(vec![p, n - p]);
            }
        }
    } else {
        for p1 in 1..=n / 3 {
            if !member(p1) {
                continue;
            }
            let rest = n - p1;
            for p2 in p1..=rest / 2 {
                let p3 = rest - p2;
                if member(p2) && member(p3) {
                    out.push(vec![p1, p2, p3]);
                }
            }
        }
    }
    Ok(out)
}

/// Normalization of a multi-particle state: 1/sqrt(prod multiplicity!).
pub fn normalization_factor(state: &[u64]) -> Result<f64> {
    if state.is_empty() {
        return Err(Error::domain("state multiset must be nonempty".to_string()));
    }
    let mut sorted = state.to_vec();
    sorted.sort_unstable();
    let mut denom = 1.0f64;
    let mut run = 1u64;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
            denom *= run as f64;
        } else {
            run = 1;
        }
    }
    Ok(1.0 / denom.sqrt())
}

/// Cross-module identity: the diagonal prime-family central term equals
/// the ordered Goldbach count from independent enumeration.
pub fn central_term_matches_goldbach(n: u64, table: &PrimeTable) -> Result<bool> {
    let report = central_term(n, n, ModeSet::PrimesPPrime, 2 * n as i64 + 10)?;
    let count = goldbach_partitions(n, ModeSet::PrimesPPrime, table)?;
    Ok(report.raw == count.ordered as f64)
}
