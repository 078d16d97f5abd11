use statrs::distribution::{ContinuousCDF, Normal};

use super::spec::{BermudanSpec, OptionKind};
use crate::error::{invalid, Result};

/// Lognormal closed form for a European call or put.
pub fn black_scholes_closed_form(
    spot: f64,
    strike: f64,
    rate: f64,
    dividend: f64,
    vol: f64,
    maturity: f64,
    kind: OptionKind,
) -> f64 {
    let normal = Normal::standard();
    let df_q = (-dividend * maturity).exp();
    let df_r = (-rate * maturity).exp();
    let sd = vol * maturity.sqrt();
    let d1 = ((spot / strike).ln() + (rate - dividend) * maturity) / sd + 0.5 * sd;
    let d2 = d1 - sd;
    match kind {
        OptionKind::Call => spot * df_q * normal.cdf(d1) - strike * df_r * normal.cdf(d2),
        OptionKind::Put => strike * df_r * normal.cdf(-d2) - spot * df_q * normal.cdf(-d1),
    }
}

/// One-period binomial step: up/down factors, up probability and discount.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinomialLattice {
    pub up: f64,
    pub down: f64,
    pub prob_up: f64,
    pub discount: f64,
}

impl BinomialLattice {
    /// Cox–Ross–Rubinstein parameters for step `dt`.
    pub fn crr(rate: f64, dividend: f64, vol: f64, dt: f64) -> Self {
        let up = (vol * dt.sqrt()).exp();
        let down = 1.0 / up;
        Self {
            up,
            down,
            prob_up: (((rate - dividend) * dt).exp() - down) / (up - down),
            discount: (-rate * dt).exp(),
        }
    }
}

/// Root value of a lattice with early exercise allowed at the listed step indices.
pub fn lattice_value(
    spot: f64,
    strike: f64,
    kind: OptionKind,
    lattice: &BinomialLattice,
    steps: usize,
    exercise_steps: &[usize],
) -> f64 {
    let price =
        |i: usize, j: usize| spot * lattice.up.powi((i - j) as i32) * lattice.down.powi(j as i32);
    let mut values: Vec<f64> = (0..=steps)
        .map(|j| kind.payoff(price(steps, j), strike))
        .collect();
    let (p, q) = (lattice.prob_up, 1.0 - lattice.prob_up);
    for i in (0..steps).rev() {
        let exercise = i > 0 && exercise_steps.contains(&i);
        for j in 0..=i {
            let cont = lattice.discount * (p * values[j] + q * values[j + 1]);
            values[j] = if exercise {
                cont.max(kind.payoff(price(i, j), strike))
            } else {
                cont
            };
        }
        values.truncate(i + 1);
    }
    values[0]
}

/// CRR lattice value of a one-asset Bermudan, exercising at the steps nearest each date.
pub fn binomial_bermudan_oracle(spec: &BermudanSpec, steps: usize) -> Result<f64> {
    spec.validate()?;
    let b = &spec.basket;
    if b.dims() != 1 {
        return Err(invalid("binomial oracle supports one asset only"));
    }
    if steps < spec.exercise_dates.len() {
        return Err(invalid(format!(
            "{steps} lattice steps cannot resolve {} exercise dates",
            spec.exercise_dates.len()
        )));
    }
    let dt = b.maturity / steps as f64;
    let lattice = BinomialLattice::crr(b.rate, b.dividends[0], b.vols[0], dt);
    let exercise: Vec<usize> = spec
        .exercise_dates
        .iter()
        .map(|t| ((t / dt).round() as usize).min(steps))
        .collect();
    Ok(lattice_value(
        b.spots[0] * b.weights[0],
        b.strike,
        b.kind,
        &lattice,
        steps,
        &exercise,
    ))
}
