use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Slack allowed outside [−1, 1] (and [0, b], relatively) for rounding.
const INTERVAL_SLACK: f64 = 1e-12;

/// Highest degree accepted by [`series_to_power_coeffs`].
pub const MAX_MONOMIAL_DEGREE: usize = 30;

/// Truncated Chebyshev expansion of a function on [0, b]:
/// f(x) ≈ a₀/2 + Σₙ₌₁ᴺ aₙ·Tₙ(φ⁻¹(x)), with φ⁻¹(x) = 2x/b − 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevSeries {
    b: f64,
    coeffs: Vec<f64>,
}

impl ChebyshevSeries {
    pub fn new(b: f64, coeffs: Vec<f64>) -> Result<Self> {
        check_interval(b)?;
        if coeffs.is_empty() {
            return Err(Error::Parse("a series needs at least a₀".into()));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { b, coeffs })
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Truncation degree N.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients as they multiply Tₙ in a plain sum (a₀ halved).
    pub(crate) fn term_weights(&self) -> Vec<f64> {
        let mut w = self.coeffs.clone();
        w[0] *= 0.5;
        w
    }

    /// Clenshaw evaluation at a Chebyshev-interval point t ∈ [−1, 1].
    pub fn eval_mapped(&self, t: f64) -> f64 {
        let (mut b1, mut b2) = (0.0, 0.0);
        for &a in self.coeffs[1..].iter().rev() {
            let b0 = a + 2.0 * t * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        0.5 * self.coeffs[0] + t * b1 - b2
    }
}

fn check_interval(b: f64) -> Result<()> {
    if b > 0.0 && b.is_finite() {
        Ok(())
    } else {
        Err(Error::BadInterval(b))
    }
}

/// Tₙ(x) by the three-term recurrence.
pub fn cheb_t(n: usize, x: f64) -> Result<f64> {
    if x.is_nan() || x.abs() > 1.0 + INTERVAL_SLACK {
        return Err(Error::OutOfInterval {
            value: x,
            interval: "[-1, 1]".into(),
        });
    }
    Ok(cheb_t_unchecked(n, x))
}

pub(crate) fn cheb_t_unchecked(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// φ⁻¹: [0, b] → [−1, 1].
pub fn map_to_cheb(x: f64, b: f64) -> Result<f64> {
    check_interval(b)?;
    Ok(2.0 * x / b - 1.0)
}

/// φ: [−1, 1] → [0, b].
pub fn map_from_cheb(t: f64, b: f64) -> Result<f64> {
    check_interval(b)?;
    Ok(0.5 * b * (t + 1.0))
}

/// Closed-form coefficients of √x on [0, b]:
/// aₙ = (4√b/π)·(−1)ⁿ⁺¹/(4n² − 1).
pub fn sqrt_coeffs_closed(b: f64, degree: usize) -> Result<ChebyshevSeries> {
    check_interval(b)?;
    let scale = 4.0 * b.sqrt() / PI;
    let coeffs = (0..=degree)
        .map(|n| {
            let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
            let nf = n as f64;
            scale * sign / (4.0 * nf * nf - 1.0)
        })
        .collect();
    ChebyshevSeries::new(b, coeffs)
}

/// Smallest node count [`default_nodes`] returns.
pub const MIN_DEFAULT_NODES: usize = 1 << 16;

/// Default Gauss–Chebyshev node count for a degree-N expansion:
/// max(8(N+1), 2¹⁶).
///
/// With an endpoint singularity the aliasing error of aₙ is about
/// |a_{2K−n}|, i.e. O(K⁻²), so a node count proportional to N alone does
/// not reach 1e-9 for small N. 2¹⁶ nodes keep it below 1e-10 for b ≤ 4.
pub fn default_nodes(degree: usize) -> usize {
    (8 * (degree + 1)).max(MIN_DEFAULT_NODES)
}

/// aₙ = (2/π)∫ f(φ(x))·Tₙ(x)·w(x) dx by K-point Gauss–Chebyshev quadrature.
///
/// Nodes xₖ = cos((2k+1)π/2K) absorb the weight 1/√(1−x²) exactly, so
/// aₙ ≈ (2/K)·Σₖ f(φ(xₖ))·cos(nθₖ). For functions with an endpoint
/// singularity (√x at 0) the aliasing error decays only as O(K⁻²).
pub fn coeffs_by_quadrature<F>(f: F, b: f64, degree: usize, nodes: usize) -> Result<ChebyshevSeries>
where
    F: Fn(f64) -> f64,
{
    check_interval(b)?;
    let required = (4 * degree).max(1);
    if nodes < required {
        return Err(Error::TooFewNodes { required, got: nodes });
    }
    let k = nodes as f64;
    let samples: Vec<(f64, f64)> = (0..nodes)
        .map(|i| {
            let theta = (2 * i + 1) as f64 * PI / (2.0 * k);
            (theta, f(0.5 * b * (theta.cos() + 1.0)))
        })
        .collect();
    if samples.iter().any(|(_, v)| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let coeffs = (0..=degree)
        .map(|n| {
            let nf = n as f64;
            let sum: f64 = samples.iter().map(|&(theta, v)| v * (nf * theta).cos()).sum();
            2.0 * sum / k
        })
        .collect();
    ChebyshevSeries::new(b, coeffs)
}

/// Chebyshev coefficients of xᶻ on [0, b] (z > 0), by quadrature.
pub fn power_coeffs(z: f64, b: f64, degree: usize, nodes: usize) -> Result<ChebyshevSeries> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::BadZ(z));
    }
    coeffs_by_quadrature(|x| x.max(0.0).powf(z), b, degree, nodes)
}

/// Evaluates the series at x ∈ [0, b].
pub fn clenshaw_eval(s: &ChebyshevSeries, x: f64) -> Result<f64> {
    let slack = INTERVAL_SLACK * s.b;
    if !(x >= -slack && x <= s.b + slack) {
        return Err(Error::OutOfInterval {
            value: x,
            interval: format!("[0, {}]", s.b),
        });
    }
    Ok(s.eval_mapped((2.0 * x / s.b - 1.0).clamp(-1.0, 1.0)))
}

/// Monomial coefficients η_j of the series in the Chebyshev variable t, so
/// that Σ_j η_j tʲ equals the series on [−1, 1].
pub fn series_to_power_coeffs(s: &ChebyshevSeries) -> Result<Vec<f64>> {
    let n = s.degree();
    if n > MAX_MONOMIAL_DEGREE {
        return Err(Error::DegreeTooHigh {
            degree: n,
            max: MAX_MONOMIAL_DEGREE,
        });
    }
    let weights = s.term_weights();
    let mut eta = vec![0.0; n + 1];
    // Monomial coefficients of T_{k-1} and T_k.
    let mut prev = vec![1.0];
    let mut cur = vec![0.0, 1.0];
    eta[0] += weights[0];
    if n >= 1 {
        eta[1] += weights[1];
    }
    for (k, &w) in weights.iter().enumerate().skip(2) {
        let mut next = vec![0.0; k + 1];
        for (j, &c) in cur.iter().enumerate() {
            next[j + 1] += 2.0 * c;
        }
        for (j, &c) in prev.iter().enumerate() {
            next[j] -= c;
        }
        for (e, &c) in eta.iter_mut().zip(&next) {
            *e += w * c;
        }
        prev = cur;
        cur = next;
    }
    Ok(eta)
}

/// Horner evaluation of monomial coefficients.
pub fn eval_monomials(eta: &[f64], t: f64) -> f64 {
    eta.iter().rev().fold(0.0, |acc, &c| acc * t + c)
}

/// ∫₋₁¹ xᵏ/√(1−x) dx by the reduction formula
/// ∫ xᵏ/√(γx+β) = 2xᵏ√(γx+β)/((2k+1)γ) − 2kβ/((2k+1)γ)·∫ xᵏ⁻¹/√(γx+β)
/// with γ = −1, β = 1, unrolled down to k = 0.
pub fn reduction_integral(k: usize) -> f64 {
    let sqrt2 = std::f64::consts::SQRT_2;
    // Base case: ∫₋₁¹ (1−x)^{-1/2} dx = 2√2.
    let mut acc = 2.0 * sqrt2;
    for j in 1..=k {
        let jf = j as f64;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        // Boundary term at x = −1 only; the x = 1 end vanishes.
        let boundary = 2.0 * sqrt2 * sign / (2.0 * jf + 1.0);
        acc = boundary + 2.0 * jf / (2.0 * jf + 1.0) * acc;
    }
    acc
}
