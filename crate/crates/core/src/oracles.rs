//! Classical reference solutions and state comparison metrics.
//!
//! Everything here is plain dense arithmetic; no FFTs, no LCU machinery.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::par;
use crate::spectral::GridSpec;

/// `constant + Σ amplitude·cos(2π·frequency·x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CosineSeries {
    pub constant: f64,
    /// `(frequency, amplitude)` pairs; frequency in cycles per unit length.
    pub terms: Vec<(f64, f64)>,
}

impl CosineSeries {
    pub fn new(constant: f64, terms: Vec<(f64, f64)>) -> Self {
        Self { constant, terms }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.constant
            + self
                .terms
                .iter()
                .map(|(f, a)| a * (2.0 * PI * f * x).cos())
                .sum::<f64>()
    }

    pub fn sample(&self, grid: &GridSpec) -> Vec<f64> {
        grid.positions().iter().map(|&x| self.eval(x)).collect()
    }

    /// Whether every frequency is strictly inside the grid's band `|f| < N δ_f / 2`.
    pub fn resolvable_on(&self, grid: &GridSpec) -> bool {
        self.terms
            .iter()
            .all(|(f, _)| f.abs() < grid.freq_half_width - 1e-12 * grid.freq_half_width)
    }
}

/// Solution of `∂_t u = κ ∂²_x u` at time `t`: each mode decays by `e^{-κ(2πf)²t}`.
pub fn exact_cosine_solution(series: &CosineSeries, t: f64, kappa_rate: f64) -> CosineSeries {
    CosineSeries {
        constant: series.constant,
        terms: series
            .terms
            .iter()
            .map(|&(f, a)| (f, a * (-kappa_rate * (2.0 * PI * f).powi(2) * t).exp()))
            .collect(),
    }
}

/// Dense DTFT, multiplication by `e^{-κ(2πf_k)²} e^{-2πiΓf_k}`, dense inverse DTFT.
pub fn classical_spectral_evolve(
    samples: &[Complex64],
    kappa: f64,
    gamma: f64,
    grid: &GridSpec,
) -> Result<Vec<Complex64>> {
    if samples.len() != grid.points {
        return Err(Error::LengthMismatch {
            expected: grid.points,
            got: samples.len(),
        });
    }
    let n = grid.points;
    let scale = 1.0 / (n as f64).sqrt();
    let rel: Vec<f64> = (0..n).map(|j| grid.signed_index(j) * grid.delta).collect();
    let freq = grid.frequencies();
    let spectrum: Vec<Complex64> = par::map_range(n, |k| {
        let s: Complex64 = (0..n)
            .map(|j| samples[j] * Complex64::cis(-2.0 * PI * freq[k] * rel[j]))
            .sum();
        let filter = (-kappa * (2.0 * PI * freq[k]).powi(2)).exp()
            * Complex64::cis(-2.0 * PI * gamma * freq[k]);
        s * scale * filter
    });
    Ok(par::map_range(n, |j| {
        let s: Complex64 = (0..n)
            .map(|k| spectrum[k] * Complex64::cis(2.0 * PI * freq[k] * rel[j]))
            .sum();
        s * scale
    }))
}

/// Composite Simpson rule for the heat-kernel convolution.
#[derive(Debug, Clone, PartialEq)]
pub struct Quadrature {
    /// Panels per kernel standard deviation `√(2κt)`.
    pub panels_per_sd: usize,
    /// Integration half-width in kernel standard deviations.
    pub half_width_sds: f64,
    /// Points where `u₀` has a kink; panels are split there.
    pub breakpoints: Vec<f64>,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self {
            panels_per_sd: 64,
            half_width_sds: 12.0,
            breakpoints: Vec::new(),
        }
    }
}

/// `(G_t * u₀)(x)` with `G_t(y) = (4πκt)^{-1/2} e^{-y²/(4κt)}`, at each of `points`.
pub fn gaussian_convolution_solution(
    u0: &(dyn Fn(f64) -> f64 + Sync),
    points: &[f64],
    t: f64,
    kappa: f64,
    quadrature: &Quadrature,
) -> Result<Vec<f64>> {
    if !(t > 0.0) || !(kappa > 0.0) {
        return Err(invalid(format!(
            "need t > 0 and kappa > 0, got t = {t}, kappa = {kappa}"
        )));
    }
    if quadrature.panels_per_sd == 0 || !(quadrature.half_width_sds > 0.0) {
        return Err(invalid("quadrature resolution must be positive"));
    }
    let var = 2.0 * kappa * t;
    let sd = var.sqrt();
    let norm = 1.0 / (2.0 * PI * var).sqrt();
    let h = sd / quadrature.panels_per_sd as f64;
    Ok(par::map_slice(points, |&x| {
        let lo = x - quadrature.half_width_sds * sd;
        let hi = x + quadrature.half_width_sds * sd;
        let mut cuts: Vec<f64> = quadrature
            .breakpoints
            .iter()
            .copied()
            .filter(|b| *b > lo && *b < hi)
            .collect();
        cuts.sort_by(f64::total_cmp);
        let mut edges = vec![lo];
        edges.extend(cuts);
        edges.push(hi);
        let integrand = |y: f64| u0(y) * (-(x - y).powi(2) / (2.0 * var)).exp();
        edges
            .windows(2)
            .map(|w| simpson(&integrand, w[0], w[1], h))
            .sum::<f64>()
            * norm
    }))
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, h: f64) -> f64 {
    let len = b - a;
    if len <= 0.0 {
        return 0.0;
    }
    let mut panels = (len / h).ceil() as usize;
    panels = panels.max(2);
    if panels % 2 == 1 {
        panels += 1;
    }
    let step = len / panels as f64;
    let mut acc = f(a) + f(b);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * step);
    }
    acc * step / 3.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorMetrics {
    pub l2: f64,
    pub linf: f64,
    pub fidelity: f64,
}

/// Compares two vectors after ℓ2-normalizing both and aligning the global phase of `a`.
pub fn state_error_metrics(a: &[Complex64], b: &[Complex64]) -> Result<ErrorMetrics> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let na = a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return Err(Error::ZeroVector);
    }
    let overlap: Complex64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| x.conj() * y)
        .sum::<Complex64>()
        / (na * nb);
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let mut l2 = 0.0f64;
    let mut linf = 0.0f64;
    for (x, y) in a.iter().zip(b) {
        let d = (x * phase / na - y / nb).norm();
        l2 += d * d;
        linf = linf.max(d);
    }
    Ok(ErrorMetrics {
        l2: l2.sqrt(),
        linf,
        fidelity: overlap.norm_sqr(),
    })
}

/// Real-valued convenience wrapper for [`state_error_metrics`].
pub fn real_error_metrics(a: &[Complex64], b: &[f64]) -> Result<ErrorMetrics> {
    let bc: Vec<Complex64> = b.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    state_error_metrics(a, &bc)
}
