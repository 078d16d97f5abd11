use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::spec::BasketSpec;
use crate::error::{invalid, Error, Result};

/// Relative eigenvalue floor below which the covariance counts as singular.
const DEGENERACY_TOLERANCE: f64 = 1e-12;

/// How the drift and discount terms are removed from the log-price PDE.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum Gauge {
    /// `w = Λ^{-1/2}Qᵀ(x + τγ)`, heat value `e^{rτ}V`.
    #[default]
    MovingFrame,
    /// `z = Λ^{-1/2}Qᵀx`, heat value `e^{aᵀz + (r + |a|²/2)τ}V` with `a = Λ^{-1/2}Qᵀγ`.
    Exponential,
}

impl fmt::Display for Gauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::MovingFrame => "moving-frame",
            Self::Exponential => "exponential",
        })
    }
}

impl FromStr for Gauge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "moving-frame" | "moving_frame" | "frame" => Ok(Self::MovingFrame),
            "exponential" | "exp" => Ok(Self::Exponential),
            other => Err(invalid(format!("unknown gauge `{other}`"))),
        }
    }
}

/// Invertible map between log prices at time-to-maturity `τ` and unit-diffusion
/// heat coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatCoordinates {
    /// Orthonormal eigenvectors of the covariance, as columns, eigenvalues descending.
    pub rotation: DMatrix<f64>,
    pub eigenvalues: DVector<f64>,
    /// Log-price drift `r - q_i - Σ_ii/2`.
    pub drift: DVector<f64>,
    pub rate: f64,
    /// `Λ^{-1/2}Qᵀ`.
    pub forward: DMatrix<f64>,
    /// `QΛ^{1/2}`.
    pub inverse: DMatrix<f64>,
    /// `Λ^{-1/2}Qᵀγ`.
    pub gauge_exponent: DVector<f64>,
}

impl HeatCoordinates {
    pub fn from_basket(spec: &BasketSpec) -> Result<Self> {
        spec.validate()?;
        let cov = spec.covariance();
        let d = spec.dims();
        let eig = SymmetricEigen::new(cov);
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let eigenvalues = DVector::from_fn(d, |i, _| eig.eigenvalues[order[i]]);
        let largest = eigenvalues[0];
        if !(eigenvalues[d - 1] > DEGENERACY_TOLERANCE * largest) {
            return Err(Error::DegenerateCovariance);
        }
        let mut rotation = DMatrix::from_fn(d, d, |r, c| eig.eigenvectors[(r, order[c])]);
        for c in 0..d {
            let col = rotation.column(c);
            let pivot = col
                .iter()
                .copied()
                .fold(0.0f64, |acc, v| if v.abs() > acc.abs() { v } else { acc });
            if pivot < 0.0 {
                rotation.column_mut(c).neg_mut();
            }
        }
        let inv_sqrt = DMatrix::from_diagonal(&eigenvalues.map(|l| 1.0 / l.sqrt()));
        let sqrt = DMatrix::from_diagonal(&eigenvalues.map(f64::sqrt));
        let forward = &inv_sqrt * rotation.transpose();
        let inverse = &rotation * sqrt;
        let drift = DVector::from_vec(spec.log_drift());
        let gauge_exponent = &forward * &drift;
        Ok(Self {
            rotation,
            eigenvalues,
            drift,
            rate: spec.rate,
            forward,
            inverse,
            gauge_exponent,
        })
    }

    pub fn dims(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `QΛQᵀ`.
    pub fn covariance(&self) -> DMatrix<f64> {
        &self.rotation * DMatrix::from_diagonal(&self.eigenvalues) * self.rotation.transpose()
    }

    pub fn to_heat(&self, log_prices: &[f64], tau: f64, gauge: Gauge) -> Vec<f64> {
        let x = DVector::from_column_slice(log_prices);
        let y = match gauge {
            Gauge::MovingFrame => x + &self.drift * tau,
            Gauge::Exponential => x,
        };
        (&self.forward * y).iter().copied().collect()
    }

    pub fn from_heat(&self, heat: &[f64], tau: f64, gauge: Gauge) -> Vec<f64> {
        let w = DVector::from_column_slice(heat);
        let x = &self.inverse * w;
        let x = match gauge {
            Gauge::MovingFrame => x - &self.drift * tau,
            Gauge::Exponential => x,
        };
        x.iter().copied().collect()
    }

    /// Factor turning a price-space value at `(τ, heat point)` into the heat-space value.
    pub fn value_factor(&self, heat: &[f64], tau: f64, gauge: Gauge) -> f64 {
        match gauge {
            Gauge::MovingFrame => (self.rate * tau).exp(),
            Gauge::Exponential => {
                let a = &self.gauge_exponent;
                let dot: f64 = a.iter().zip(heat).map(|(ai, zi)| ai * zi).sum();
                (dot + (self.rate + 0.5 * a.norm_squared()) * tau).exp()
            }
        }
    }
}
