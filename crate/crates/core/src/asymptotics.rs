//! Asymptotic representations of the damped prime sums and the residual
//! harness that measures how fast the exact sums approach them.
//!
//! For the reciprocal sum f(a) = sum e^{-ap}/p and the linear sum
//! g(a) = sum p e^{-ap} the small-damping behavior is
//!
//! ```text
//! f(a) ~ log(-log a) + B1 - sum_{k>=1} (-1)^k G1_k/k (-log a)^{-k}
//! f(a) =  (1/2) log(1 + log^2 a) + B1 - Im I(a) + o(a^{1/2-e})
//! g(a) ~ (1/a^2) sum_{k>=0} (-1)^k G2_k (-log a)^{-k-1}
//! g(a) =  -(1/a^2) Im J(a) + o(a^{-3/2-e})
//! ```
//!
//! with G1_k, G2_k the gamma derivatives at 1 and 2 and
//!
//! ```text
//! I(a) = int_0^inf e^{it log a} (Gamma(-it) - i e^{-t}/t) dt
//! J(a) = int_0^inf e^{it log a} Gamma(2-it) dt .
//! ```
//!
//! The power-law error terms hold if every non-trivial zeta zero has
//! real part 1/2; the residual reports expose the measured decay
//! exponent, which is the testable face of that statement (the o(.)
//! constants are unknown, so acceptance is exponent-based, never
//! absolute).
//!
//! Both integrands oscillate as e^{it log a} under a smooth envelope
//! that dies like e^{-pi t/2}, so panels of half-period width
//! pi/|log a| with 16-point Gauss-Legendre nodes resolve them; the
//! error estimate compares against a run at half the panel width.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::abel;
use crate::error::{Error, Result};
use crate::modes::ModeSet;
use crate::primes::mertens_constant;
use crate::special::{self, GammaCenter};

/// Which damped sum an asymptotic object approximates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumKind {
    /// sum e^{-ap}/p
    Harmonic,
    /// sum p e^{-ap}
    Linear,
}

impl std::fmt::Display for SumKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SumKind::Harmonic => "f",
            SumKind::Linear => "g",
        })
    }
}

/// Log-series coefficients of one of the two expansions.
#[derive(Debug, Clone)]
pub struct AsymptoticSeries {
    pub kind: SumKind,
    pub k_max: usize,
    /// Mertens constant (enters only the harmonic series).
    pub b1: f64,
    /// Harmonic: coefficient of (-log a)^{-k}, k = 1.. (entry 0 unused, 0.0).
    /// Linear: coefficient of (1/a^2) (-log a)^{-k-1}, k = 0..
    pub coeffs: Vec<f64>,
}

impl AsymptoticSeries {
    pub fn build(kind: SumKind, k_max: usize) -> Result<Self> {
        if k_max > 12 {
            return Err(Error::domain(format!(
                "series supports k_max <= 12, got {k_max}"
            )));
        }
        let b1 = mertens_constant(64)?;
        let coeffs = match kind {
            SumKind::Harmonic => {
                let d = special::gamma_derivatives(GammaCenter::One, k_max.max(1))?;
                (0..=k_max)
                    .map(|k| {
                        if k == 0 {
                            0.0
                        } else {
                            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                            -sign * d[k] / k as f64
                        }
                    })
                    .collect()
            }
            SumKind::Linear => {
                let d = special::gamma_derivatives(GammaCenter::Two, k_max)?;
                (0..=k_max)
                    .map(|k| {
                        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                        sign * d[k]
                    })
                    .collect()
            }
        };
        Ok(AsymptoticSeries {
            kind,
            k_max,
            b1,
            coeffs,
        })
    }

    /// Evaluate the truncated expansion at damping `a`.
    pub fn eval(&self, a: f64) -> Result<f64> {
        check_series_domain(a)?;
        let lm = -a.ln(); // > 1 on the admissible domain
        match self.kind {
            SumKind::Harmonic => {
                let mut acc = lm.ln() + self.b1;
                let mut pw = 1.0;
                for k in 1..=self.k_max {
                    pw /= lm;
                    acc += self.coeffs[k] * pw;
                }
                Ok(acc)
            }
            SumKind::Linear => {
                let mut acc = 0.0;
                let mut pw = 1.0 / lm;
                for k in 0..=self.k_max {
                    acc += self.coeffs[k] * pw;
                    pw /= lm;
                }
                Ok(acc / (a * a))
            }
        }
    }
}

fn check_series_domain(a: f64) -> Result<()> {
    if !(a > 0.0) || a >= (-1.0f64).exp() {
        return Err(Error::domain(format!(
            "log series needs 0 < a < 1/e so that -log a > 1 (a = {a})"
        )));
    }
    Ok(())
}

/// Truncated log expansion of the reciprocal sum:
/// log(-log a) + B1 - sum_{k=1}^{k_max} (-1)^k G1_k/k (-log a)^{-k}.
pub fn harmonic_log_series(a: f64, k_max: usize) -> Result<f64> {
    AsymptoticSeries::build(SumKind::Harmonic, k_max)?.eval(a)
}

/// Truncated log expansion of the linear sum:
/// (1/a^2) sum_{k=0}^{k_max} (-1)^k G2_k (-log a)^{-k-1}.
pub fn linear_log_series(a: f64, k_max: usize) -> Result<f64> {
    AsymptoticSeries::build(SumKind::Linear, k_max)?.eval(a)
}

// ---------------------------------------------------------------------------
// oscillatory quadrature
// ---------------------------------------------------------------------------

// 16-point Gauss-Legendre nodes/weights on [-1, 1]
const GL_NODES: [f64; 16] = [
    -0.9894009349916499,
    -0.9445750230732326,
    -0.8656312023878318,
    -0.755404408355003,
    -0.6178762444026438,
    -0.45801677765722737,
    -0.2816035507792589,
    -0.09501250983763745,
    0.09501250983763745,
    0.2816035507792589,
    0.45801677765722737,
    0.6178762444026438,
    0.755404408355003,
    0.8656312023878318,
    0.9445750230732326,
    0.9894009349916499,
];
const GL_WEIGHTS: [f64; 16] = [
    0.027152459411754037,
    0.062253523938647706,
    0.09515851168249259,
    0.12462897125553403,
    0.14959598881657676,
    0.16915651939500262,
    0.1826034150449236,
    0.18945061045506859,
    0.18945061045506859,
    0.1826034150449236,
    0.16915651939500262,
    0.14959598881657676,
    0.12462897125553403,
    0.09515851168249259,
    0.062253523938647706,
    0.027152459411754037,
];

fn composite_gl(t_max: f64, width: f64, f: &impl Fn(f64) -> Complex64) -> Complex64 {
    let panels = (t_max / width).ceil() as usize;
    let w = t_max / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * w;
        let half = 0.5 * w;
        let mut panel = Complex64::new(0.0, 0.0);
        for (x, wt) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
            panel += wt * f(mid + half * x);
        }
        acc += panel * half;
    }
    acc
}

/// Integrate an oscillatory integrand over [0, t_max] with panels no
/// wider than a half period pi/|log a|, refining until two successive
/// widths agree within `tol`. Returns (value, error estimate).
fn oscillatory_quad(
    log_a: f64,
    t_max: f64,
    tol: f64,
    tail_bound: f64,
    f: impl Fn(f64) -> Complex64,
) -> Result<(Complex64, f64)> {
    let mut width = (std::f64::consts::PI / log_a.abs()).min(2.0);
    let mut prev = composite_gl(t_max, width, &f);
    for _ in 0..8 {
        width *= 0.5;
        let cur = composite_gl(t_max, width, &f);
        let est = (cur - prev).norm() + tail_bound;
        if est <= tol {
            return Ok((cur, est));
        }
        prev = cur;
    }
    Err(Error::Quadrature {
        estimate: (prev - composite_gl(t_max, width / 2.0, &f)).norm() + tail_bound,
        tol,
    })
}

/// Taylor coefficients of h(t) = i (Gamma(1-it) - e^{-t})/t around 0.
fn h_series() -> &'static Vec<Complex64> {
    static TABLE: OnceLock<Vec<Complex64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let d = special::gamma_derivatives(GammaCenter::One, 14).expect("k_max in range");
        let mut fact = 1.0;
        let e: Vec<f64> = d
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                if k > 0 {
                    fact *= k as f64;
                }
                v / fact
            })
            .collect();
        // h_m = i [ E_{m+1} (-i)^{m+1} - (-1)^{m+1}/(m+1)! ]
        let mut mfact = 1.0;
        (0..=12usize)
            .map(|m| {
                let k = m + 1;
                mfact *= k as f64;
                let mi = Complex64::new(0.0, -1.0).powu(k as u32);
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                Complex64::new(0.0, 1.0) * (e[k] * mi - sign / mfact)
            })
            .collect()
    })
}

/// The bracketed integrand factor with its removable 1/t structure
/// resolved analytically: Gamma(-it) - i e^{-t}/t -> -gamma + i as t -> 0.
fn h_bracket(t: f64) -> Complex64 {
    if t < 0.1 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in h_series().iter().rev() {
            acc = acc * t + c;
        }
        acc
    } else {
        let g = special::gamma(Complex64::new(1.0, -t)).expect("no pole on Re z = 1");
        Complex64::new(0.0, 1.0) * (g - Complex64::new((-t).exp(), 0.0)) / t
    }
}

/// |Gamma(1-it)| from the exact modulus identity pi t / sinh(pi t).
fn gamma_one_it_abs(t: f64) -> f64 {
    (std::f64::consts::PI * t / (std::f64::consts::PI * t).sinh()).sqrt()
}

/// A quadrature value with its two-level error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
}

/// Im I(a) = Im int_0^inf e^{it log a} (Gamma(-it) - i e^{-t}/t) dt.
///
/// The imaginary part is taken of the full complex quadrature; on
/// success the returned error estimate is below `tol`.
pub fn harmonic_oscillatory_integral(a: f64, tol: f64) -> Result<Quadrature> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::domain(format!("need 0 < a < 1, got {a}")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let log_a = a.ln();
    let t_max = 40f64.max(2.0 * (12.0 + (1.0 / tol).ln()) / std::f64::consts::PI);
    // past t_max: |bracket| <= |Gamma(1-it)|/t + e^{-t}/t under an
    // e^{-pi t/2} envelope
    let tail = gamma_one_it_abs(t_max) / t_max * (2.0 / std::f64::consts::PI) * 1.1
        + (-t_max).exp() / t_max;
    let f = |t: f64| (Complex64::new(0.0, t * log_a)).exp() * h_bracket(t);
    let (v, est) = oscillatory_quad(log_a, t_max, tol, tail, f)?;
    Ok(Quadrature {
        value: v.im,
        error_estimate: est,
    })
}

/// Integral form of the reciprocal sum:
/// (1/2) log(1 + log^2 a) + B1 - Im I(a).
pub fn harmonic_integral_form(a: f64, tol: f64) -> Result<f64> {
    let b1 = mertens_constant(64)?;
    let i = harmonic_oscillatory_integral(a, tol)?;
    let l = a.ln();
    Ok(0.5 * (l * l).ln_1p() + b1 - i.value)
}

/// Divergence envelope of the linear sum:
/// F(a) = -Im (1/a^2) int_0^inf e^{it log a} Gamma(2-it) dt.
///
/// On success the value's error is below tol/a^2.
pub fn linear_integral_form(a: f64, tol: f64) -> Result<f64> {
    // the envelope extends continuously to a = 1 (log a = 0 is merely
    // the oscillation-free point)
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::domain(format!("need 0 < a <= 1, got {a}")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tolerance must be positive"));
    }
    let log_a = a.ln();
    let pi = std::f64::consts::PI;
    let t_max = 45f64.max(2.0 * (14.0 + (1.0 / tol).ln()) / pi);
    // |Gamma(2-it)|^2 = (1+t^2) pi t / sinh(pi t)
    let g2_abs = ((1.0 + t_max * t_max) * pi * t_max / (pi * t_max).sinh()).sqrt();
    let tail = g2_abs * (2.0 / pi) * 1.1;
    let f = |t: f64| {
        (Complex64::new(0.0, t * log_a)).exp()
            * special::gamma(Complex64::new(2.0, -t)).expect("no pole on Re z = 2")
    };
    let (v, _est) = oscillatory_quad(log_a, t_max, tol, tail, f)?;
    Ok(-v.im / (a * a))
}

// ---------------------------------------------------------------------------
// residual harness
// ---------------------------------------------------------------------------

/// One exact-vs-approximation comparison.
#[derive(Debug, Clone, Copy)]
pub struct ResidualRow {
    pub a: f64,
    pub exact: f64,
    pub approx: f64,
    pub residual: f64,
    /// residual / a^{0.45} for the reciprocal sum,
    /// residual * a^{1.55} for the linear sum.
    pub normalized_residual: f64,
}

/// Residual table for both the truncated series and the integral form,
/// with fitted log-log decay exponents.
#[derive(Debug, Clone)]
pub struct ResidualReport {
    pub kind: SumKind,
    pub k_max: usize,
    pub series: Vec<ResidualRow>,
    pub integral: Vec<ResidualRow>,
    /// Slope of log |residual| (harmonic) or log (a^2 |residual|)
    /// (linear) against log a, for the integral-form rows.
    pub integral_decay_exponent: Option<f64>,
    /// Same fit for the truncated-series rows.
    pub series_decay_exponent: Option<f64>,
}

fn normalized(kind: SumKind, a: f64, residual: f64) -> f64 {
    match kind {
        SumKind::Harmonic => residual / a.powf(0.45),
        SumKind::Linear => residual * a.powf(1.55),
    }
}

/// Least-squares slope of y against x.
pub(crate) fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let xb = points.iter().map(|p| p.0).sum::<f64>() / n;
    let yb = points.iter().map(|p| p.1).sum::<f64>() / n;
    let num: f64 = points.iter().map(|p| (p.0 - xb) * (p.1 - yb)).sum();
    let den: f64 = points.iter().map(|p| (p.0 - xb) * (p.0 - xb)).sum();
    Some(num / den)
}

fn decay_fit(kind: SumKind, rows: &[ResidualRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.residual != 0.0)
        .map(|r| {
            let scaled = match kind {
                SumKind::Harmonic => r.residual.abs(),
                SumKind::Linear => r.a * r.a * r.residual.abs(),
            };
            (r.a.ln(), scaled.ln())
        })
        .collect();
    fit_slope(&pts)
}

/// Compare the exact damped sum against both asymptotic forms on a grid.
///
/// `tol` governs the certified error of each approximant (scaled by
/// 1/a^2 on the linear side); the exact sums run at tolerances well
/// below the expected residuals. Rows come out ordered by descending a.
pub fn residual_report(
    kind: SumKind,
    a_grid: &[f64],
    k_max: usize,
    tol: f64,
) -> Result<ResidualReport> {
    let series = AsymptoticSeries::build(kind, k_max)?;
    let mut series_rows = Vec::with_capacity(a_grid.len());
    let mut integral_rows = Vec::with_capacity(a_grid.len());
    let mut grid: Vec<f64> = a_grid.to_vec();
    grid.sort_by(|x, y| y.partial_cmp(x).expect("finite grid"));
    for &a in &grid {
        check_series_domain(a)?;
        let (exact, integral) = match kind {
            SumKind::Harmonic => (
                abel::harmonic_sum(a, ModeSet::PrimesP, 1e-12)?.value,
                harmonic_integral_form(a, tol)?,
            ),
            SumKind::Linear => (
                abel::linear_sum(a, ModeSet::PrimesP, (tol / (a * a)).max(abel::MIN_TOL))?.value,
                linear_integral_form(a, tol)?,
            ),
        };
        let s = series.eval(a)?;
        series_rows.push(ResidualRow {
            a,
            exact,
            approx: s,
            residual: exact - s,
            normalized_residual: normalized(kind, a, exact - s),
        });
        integral_rows.push(ResidualRow {
            a,
            exact,
            approx: integral,
            residual: exact - integral,
            normalized_residual: normalized(kind, a, exact - integral),
        });
    }
    Ok(ResidualReport {
        kind,
        k_max,
        integral_decay_exponent: decay_fit(kind, &integral_rows),
        series_decay_exponent: decay_fit(kind, &series_rows),
        series: series_rows,
        integral: integral_rows,
    })
}
