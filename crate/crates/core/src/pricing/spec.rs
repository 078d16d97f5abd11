use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OptionKind {
    Call,
    Put,
}

impl OptionKind {
    /// `(basket - K)⁺` or `(K - basket)⁺`.
    pub fn payoff(self, basket: f64, strike: f64) -> f64 {
        match self {
            Self::Call => (basket - strike).max(0.0),
            Self::Put => (strike - basket).max(0.0),
        }
    }
}

impl fmt::Display for OptionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Call => "call",
            Self::Put => "put",
        })
    }
}

impl FromStr for OptionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "call" => Ok(Self::Call),
            "put" => Ok(Self::Put),
            other => Err(invalid(format!("unknown option kind `{other}`"))),
        }
    }
}

/// Option on `wᵀS` under correlated geometric Brownian motions.
#[derive(Debug, Clone, PartialEq)]
pub struct BasketSpec {
    pub spots: Vec<f64>,
    pub weights: Vec<f64>,
    pub strike: f64,
    pub rate: f64,
    pub dividends: Vec<f64>,
    pub vols: Vec<f64>,
    /// Row-major `D×D` correlation matrix.
    pub correlation: Vec<Vec<f64>>,
    pub maturity: f64,
    pub kind: OptionKind,
}

impl BasketSpec {
    /// One-asset vanilla option.
    pub fn single(
        spot: f64,
        strike: f64,
        rate: f64,
        dividend: f64,
        vol: f64,
        maturity: f64,
        kind: OptionKind,
    ) -> Self {
        Self {
            spots: vec![spot],
            weights: vec![1.0],
            strike,
            rate,
            dividends: vec![dividend],
            vols: vec![vol],
            correlation: vec![vec![1.0]],
            maturity,
            kind,
        }
    }

    pub fn dims(&self) -> usize {
        self.spots.len()
    }

    pub fn with_kind(&self, kind: OptionKind) -> Self {
        Self {
            kind,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.dims();
        if d == 0 {
            return Err(invalid("basket needs at least one asset"));
        }
        for (name, len) in [
            ("weights", self.weights.len()),
            ("dividends", self.dividends.len()),
            ("vols", self.vols.len()),
            ("correlation rows", self.correlation.len()),
        ] {
            if len != d {
                return Err(invalid(format!("{name}: expected {d} entries, got {len}")));
            }
        }
        if self.spots.iter().any(|s| !(*s > 0.0)) {
            return Err(invalid("spot prices must be positive"));
        }
        if self.vols.iter().any(|s| !(*s > 0.0) || !s.is_finite()) {
            return Err(invalid("volatilities must be positive"));
        }
        if !(self.maturity > 0.0) || !self.maturity.is_finite() {
            return Err(invalid("maturity must be positive"));
        }
        if !(self.strike >= 0.0) || !self.rate.is_finite() {
            return Err(invalid("strike must be nonnegative and rate finite"));
        }
        for (i, row) in self.correlation.iter().enumerate() {
            if row.len() != d {
                return Err(invalid(format!(
                    "correlation row {i} has {} entries",
                    row.len()
                )));
            }
            if (row[i] - 1.0).abs() > 1e-12 {
                return Err(invalid("correlation diagonal must be 1"));
            }
            for (j, v) in row.iter().enumerate() {
                if (v - self.correlation[j][i]).abs() > 1e-12 || v.abs() > 1.0 + 1e-12 {
                    return Err(invalid(
                        "correlation must be symmetric with entries in [-1, 1]",
                    ));
                }
            }
        }
        Ok(())
    }

    /// `Σ_ij = ρ_ij σ_i σ_j`.
    pub fn covariance(&self) -> DMatrix<f64> {
        let d = self.dims();
        DMatrix::from_fn(d, d, |i, j| {
            self.correlation[i][j] * self.vols[i] * self.vols[j]
        })
    }

    /// Log-price drift `r - q_i - Σ_ii/2`.
    pub fn log_drift(&self) -> Vec<f64> {
        (0..self.dims())
            .map(|i| self.rate - self.dividends[i] - 0.5 * self.vols[i] * self.vols[i])
            .collect()
    }

    /// Forwards `S_i e^{(r - q_i)T}`.
    pub fn forwards(&self) -> Vec<f64> {
        (0..self.dims())
            .map(|i| self.spots[i] * ((self.rate - self.dividends[i]) * self.maturity).exp())
            .collect()
    }

    pub fn basket_value(&self, prices: &[f64]) -> f64 {
        self.weights.iter().zip(prices).map(|(w, s)| w * s).sum()
    }

    pub fn payoff(&self, prices: &[f64]) -> f64 {
        self.kind.payoff(self.basket_value(prices), self.strike)
    }
}

/// Basket option exercisable at `t_1 < … < t_N = T` (valuation at `t_0 = 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct BermudanSpec {
    pub basket: BasketSpec,
    pub exercise_dates: Vec<f64>,
}

impl BermudanSpec {
    /// `count` dates `T/count, 2T/count, …, T`.
    pub fn equally_spaced(basket: BasketSpec, count: usize) -> Self {
        let t = basket.maturity;
        let exercise_dates = (1..=count).map(|i| t * i as f64 / count as f64).collect();
        Self {
            basket,
            exercise_dates,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.basket.validate()?;
        let dates = &self.exercise_dates;
        if dates.is_empty() {
            return Err(invalid("need at least one exercise date"));
        }
        if !(dates[0] > 0.0) {
            return Err(invalid("exercise dates must be after the valuation date"));
        }
        if dates.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(invalid("exercise dates must be strictly increasing"));
        }
        let last = *dates.last().unwrap();
        if (last - self.basket.maturity).abs() > 1e-12 * self.basket.maturity {
            return Err(invalid(format!(
                "last exercise date {last} must equal maturity {}",
                self.basket.maturity
            )));
        }
        Ok(())
    }

    /// Smallest gap between consecutive dates, counting from the valuation date.
    pub fn min_gap(&self) -> f64 {
        let mut prev = 0.0;
        let mut gap = f64::INFINITY;
        for &t in &self.exercise_dates {
            gap = gap.min(t - prev);
            prev = t;
        }
        gap
    }
}
