//! Tr f(M) from Chebyshev moments, without diagonalizing M.

use rayon::prelude::*;

use crate::chebyshev::series::ChebyshevSeries;
use crate::error::{Error, Result};
use crate::linalg::{LinearOperator, C64};
use crate::states::SeededRng;

/// Safety factor applied to the power-iteration estimate.
pub const BOUND_SAFETY: f64 = 1.05;
/// Smallest interval end used when the operator is numerically zero.
pub const BOUND_FLOOR: f64 = 1e-12;
/// Relative change of the iterate ratio regarded as converged.
const BOUND_RTOL: f64 = 1e-3;

/// Result of a trace estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEstimate {
    pub value: f64,
    /// Zero in exact-moment mode.
    pub std_error: f64,
    pub degree: usize,
    /// Zero in exact-moment mode.
    pub probes: usize,
    pub b_used: f64,
}

/// Runs w₀ = z, w₁ = M̃z, wₙ₊₁ = 2M̃wₙ − wₙ₋₁ with M̃ = (2/b)M − I and
/// returns Σₙ cₙ·Re(z†wₙ), cₙ the series term weights.
fn series_quadratic_form(op: &dyn LinearOperator, s: &ChebyshevSeries, z: &[C64]) -> f64 {
    let n = op.dim();
    let weights = s.term_weights();
    let scale = 2.0 / s.b();
    let dot = |w: &[C64]| -> f64 { z.iter().zip(w).map(|(a, b)| (a.conj() * b).re).sum() };

    let mut prev = z.to_vec();
    let mut total = weights[0] * dot(&prev);
    if weights.len() == 1 {
        return total;
    }
    let mut mv = vec![C64::new(0.0, 0.0); n];
    op.apply_to(&prev, &mut mv);
    let mut cur: Vec<C64> = mv.iter().zip(&prev).map(|(m, p)| m * scale - p).collect();
    total += weights[1] * dot(&cur);
    for &w in &weights[2..] {
        op.apply_to(&cur, &mut mv);
        // prev ← 2(scale·M·cur − cur) − prev, reusing prev's storage.
        for ((p, c), m) in prev.iter_mut().zip(&cur).zip(&mv) {
            *p = (m * scale - c) * 2.0 - *p;
        }
        std::mem::swap(&mut prev, &mut cur);
        total += w * dot(&cur);
    }
    total
}

/// Tr f(M) = Σₙ cₙ·Tr Tₙ(M̃) with every moment taken exactly over the
/// standard basis.
///
/// The caller guarantees the spectrum of M lies in [0, b]. Basis vectors are processed in
/// parallel and summed in index order, so the result is deterministic.
pub fn trace_fn_exact_moments(op: &dyn LinearOperator, s: &ChebyshevSeries) -> TraceEstimate {
    let n = op.dim();
    let parts: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut e = vec![C64::new(0.0, 0.0); n];
            e[j] = C64::new(1.0, 0.0);
            series_quadratic_form(op, s, &e)
        })
        .collect();
    TraceEstimate {
        value: parts.iter().sum(),
        std_error: 0.0,
        degree: s.degree(),
        probes: 0,
        b_used: s.b(),
    }
}

/// Hutchinson estimate of Tr f(M) with probe entries drawn from {1, i, −1, −i}.
///
/// One base seed is drawn from `rng`; probe k uses the sub-stream
/// `SeededRng::derive(base, k)`, which makes the estimate independent of
/// thread scheduling.
pub fn trace_fn_hutchinson(
    op: &dyn LinearOperator,
    s: &ChebyshevSeries,
    probes: usize,
    rng: &mut SeededRng,
) -> Result<TraceEstimate> {
    if probes < 2 {
        return Err(Error::TooFewProbes(probes));
    }
    let n = op.dim();
    let base = rng.next_u64();
    let samples: Vec<f64> = (0..probes)
        .into_par_iter()
        .map(|k| {
            let mut prng = SeededRng::derive(base, k as u64);
            let z: Vec<C64> = (0..n).map(|_| prng.next_unit_phase()).collect();
            series_quadratic_form(op, s, &z)
        })
        .collect();
    let m = probes as f64;
    let mean = samples.iter().sum::<f64>() / m;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0);
    Ok(TraceEstimate {
        value: mean,
        std_error: (var / m).sqrt(),
        degree: s.degree(),
        probes,
        b_used: s.b(),
    })
}

/// Power-iteration estimate of the spectral radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralBound {
    /// Raw ‖M^k v‖/‖M^{k−1} v‖ after the last iteration.
    pub estimate: f64,
    /// max(1.05·estimate, 1e-12): the interval end to expand on.
    pub bound: f64,
    /// False when the last iterate ratio still moved by more than 1e-3
    /// relative; the bound is then less trustworthy.
    pub converged: bool,
    pub iterations: usize,
}

impl SpectralBound {
    /// The bound capped at `cap`, for contexts where the spectrum is known
    /// to lie below it (λ_max(ρσ) ≤ 1 for density matrices).
    pub fn capped(&self, cap: f64) -> f64 {
        self.bound.min(cap).max(BOUND_FLOOR)
    }
}

/// Runs all `iters` power iterations from a random complex start vector.
///
/// For an operator similar to a PSD matrix the iterate ratio is
/// non-decreasing and approaches λ_max from below, so running the full
/// budget (rather than stopping at the first small change) keeps the
/// underestimate small.
pub fn spectral_bound(op: &dyn LinearOperator, iters: usize, rng: &mut SeededRng) -> SpectralBound {
    let n = op.dim();
    let mut v: Vec<C64> = (0..n).map(|_| rng.next_complex_gaussian()).collect();
    normalize(&mut v);
    let mut w = vec![C64::new(0.0, 0.0); n];
    let mut ratio = 0.0;
    let mut prev_ratio = f64::NAN;
    let mut done = 0;
    for _ in 0..iters.max(1) {
        op.apply_to(&v, &mut w);
        done += 1;
        prev_ratio = ratio;
        ratio = norm(&w);
        if ratio == 0.0 || !ratio.is_finite() {
            break;
        }
        for (x, y) in v.iter_mut().zip(&w) {
            *x = y / ratio;
        }
    }
    let estimate = if ratio.is_finite() { ratio } else { 0.0 };
    let converged = estimate == 0.0 || (done > 1 && (estimate - prev_ratio).abs() <= BOUND_RTOL * estimate);
    SpectralBound {
        estimate,
        bound: (BOUND_SAFETY * estimate).max(BOUND_FLOOR),
        converged,
        iterations: done,
    }
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [C64]) {
    let n = norm(v);
    if n > 0.0 {
        for x in v.iter_mut() {
            *x /= n;
        }
    }
}
