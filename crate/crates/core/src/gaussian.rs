//! Cosine-series proxy for the Gaussian `e^{-x²/(2σ²)}` on `[-π, π]` and the
//! derivative bounds that follow from it.

use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::par;

/// Initial period constant: `T = max(2π, c_T σ √ln(1/ε))`.
pub const PERIOD_CONSTANT: f64 = 4.0;
/// Initial degree constant: `N = ⌈c_N σ⁻¹ T √ln(1/ε)⌉`.
pub const DEGREE_CONSTANT: f64 = 2.0;
/// Constants are doubled at most this many times before giving up.
pub const MAX_DOUBLINGS: u32 = 8;
/// Verification grid size on `[-π, π]`.
pub const VERIFICATION_POINTS: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct TrigGaussian {
    pub sigma: f64,
    pub epsilon: f64,
    /// Period parameter `T`; frequencies are `ω_j = 2πj/T`.
    pub period: f64,
    pub degree: usize,
    /// `a_0, …, a_N`.
    pub coefficients: Vec<f64>,
    /// Constants that passed verification.
    pub period_constant: f64,
    pub degree_constant: f64,
}

impl TrigGaussian {
    /// `2πN/T`, the base of the derivative bound `|G⁽ⁿ⁾| ≤ (2πN/T)^{n+1}`.
    pub fn lambda(&self) -> f64 {
        2.0 * PI * self.degree as f64 / self.period
    }

    /// `4πN/T`, the doubled base used for the normalized proxy.
    pub fn lambda_doubled(&self) -> f64 {
        2.0 * self.lambda()
    }

    pub fn coefficient_l1(&self) -> f64 {
        self.coefficients.iter().map(|a| a.abs()).sum()
    }

    pub fn eval(&self, x: f64) -> f64 {
        eval_trig_gaussian(self, x, 0)
    }

    /// Maximum of `|G − e^{-x²/(2σ²)}|` on the verification grid.
    pub fn sup_error(&self) -> f64 {
        let s2 = 2.0 * self.sigma * self.sigma;
        par::max_range(VERIFICATION_POINTS, |i| {
            let x = verification_point(i);
            (self.eval(x) - (-(x * x) / s2).exp()).abs()
        })
    }

    /// Maximum of `|G⁽ⁿ⁾|` on the verification grid.
    pub fn max_derivative(&self, order: u32) -> f64 {
        par::max_range(VERIFICATION_POINTS, |i| {
            eval_trig_gaussian(self, verification_point(i), order).abs()
        })
    }
}

fn verification_point(i: usize) -> f64 {
    -PI + 2.0 * PI * i as f64 / (VERIFICATION_POINTS - 1) as f64
}

/// Fourier transform of the Gaussian, `ĝ(ξ) = √(2π) σ e^{-2π²σ²ξ²}`.
fn gaussian_transform(sigma: f64, xi: f64) -> f64 {
    (2.0 * PI).sqrt() * sigma * (-2.0 * PI * PI * sigma * sigma * xi * xi).exp()
}

fn build_with(sigma: f64, epsilon: f64, c_t: f64, c_n: f64) -> TrigGaussian {
    let root = (1.0 / epsilon).ln().sqrt();
    let period = (2.0 * PI).max(c_t * sigma * root);
    let degree = (c_n / sigma * period * root).ceil() as usize;
    let damp = 1.0 - epsilon / 3.0;
    let coefficients = (0..=degree)
        .map(|j| {
            let w = if j == 0 { 1.0 } else { 2.0 };
            w / period * damp * gaussian_transform(sigma, j as f64 / period)
        })
        .collect();
    TrigGaussian {
        sigma,
        epsilon,
        period,
        degree,
        coefficients,
        period_constant: c_t,
        degree_constant: c_n,
    }
}

fn verified(g: &TrigGaussian) -> bool {
    g.coefficient_l1() <= 1.0 && g.sup_error() <= g.epsilon
}

/// Builds the proxy for `σ, ε ∈ (0, 1)`, doubling both constants until the sup-error
/// and `Σ|a_j| ≤ 1` checks pass.
pub fn build_trig_gaussian(sigma: f64, epsilon: f64) -> Result<TrigGaussian> {
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(invalid(format!("sigma must be in (0, 1), got {sigma}")));
    }
    build_unchecked(sigma, epsilon)
}

fn build_unchecked(sigma: f64, epsilon: f64) -> Result<TrigGaussian> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(invalid(format!("epsilon must be in (0, 1), got {epsilon}")));
    }
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(invalid(format!("sigma must be positive, got {sigma}")));
    }
    let (mut c_t, mut c_n) = (PERIOD_CONSTANT, DEGREE_CONSTANT);
    for _ in 0..=MAX_DOUBLINGS {
        let g = build_with(sigma, epsilon, c_t, c_n);
        if verified(&g) {
            return Ok(g);
        }
        c_t *= 2.0;
        c_n *= 2.0;
    }
    Err(Error::ConstantsInsufficient(MAX_DOUBLINGS))
}

/// `dⁿ/dxⁿ Σ a_j cos(ω_j x) = Σ a_j ω_jⁿ cos(ω_j x + nπ/2)`.
pub fn eval_trig_gaussian(g: &TrigGaussian, x: f64, order: u32) -> f64 {
    let shift = order as f64 * PI / 2.0;
    g.coefficients
        .iter()
        .enumerate()
        .map(|(j, a)| {
            let w = 2.0 * PI * j as f64 / g.period;
            let scale = if order == 0 {
                1.0
            } else {
                w.powi(order as i32)
            };
            a * scale * (w * x + shift).cos()
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmoothnessBound {
    /// `4πN/T` of the proxy built at `σ = √(2κt)`.
    pub lambda: f64,
    /// `2πN/T` of the same proxy.
    pub lambda_single: f64,
    /// `(D/(2 ln 2)) ln(1/(4πκt)) − 1`; nonpositive means no constraint.
    pub min_order: f64,
    pub sigma: f64,
    /// Error target the proxy was built for: `ε (4πκt)^{D/2} / D`.
    pub proxy_epsilon: f64,
    /// Set when `σ ≥ 1`, outside the range where the proxy bounds are proven.
    pub outside_regime: bool,
    pub proxy: TrigGaussian,
}

/// Smoothness parameter of the heat kernel after time `t` with diffusivity `κ` in `D`
/// dimensions, accuracy `ε`.
pub fn smoothness_lambda(kappa: f64, t: f64, dims: usize, epsilon: f64) -> Result<SmoothnessBound> {
    let kt = kappa * t;
    if !(kt > 0.0) || !kt.is_finite() {
        return Err(invalid(format!("need kappa * t > 0, got {kt}")));
    }
    if dims == 0 {
        return Err(invalid("dimension must be at least 1"));
    }
    let d = dims as f64;
    let sigma = (2.0 * kt).sqrt();
    let scale = 4.0 * PI * kt;
    let proxy_epsilon = (epsilon * scale.powf(d / 2.0) / d).min(0.5);
    let proxy = build_unchecked(sigma, proxy_epsilon)?;
    Ok(SmoothnessBound {
        lambda: proxy.lambda_doubled(),
        lambda_single: proxy.lambda(),
        min_order: d / (2.0 * std::f64::consts::LN_2) * (1.0 / scale).ln() - 1.0,
        sigma,
        proxy_epsilon,
        outside_regime: sigma >= 1.0,
        proxy,
    })
}
