use num_complex::Complex64;

use super::bermudan::{price_bermudan, AmplitudeReadout};
use super::coords::{Gauge, HeatCoordinates};
use super::spec::{BasketSpec, BermudanSpec};
use crate::error::{invalid, Error, Result};
use crate::lcu::{CoefficientScheme, LcuBackend, LcuPlan};
use crate::spectral::{
    diffusion_generator, evolve_heat_problem, joint_positions, make_grid_centered, GridSpec,
    HeatAxis, HeatProblem, InitialCondition,
};

#[derive(Debug, Clone, PartialEq)]
pub struct PricingConfig {
    /// Qubits per heat axis.
    pub n: usize,
    /// LCU ancilla qubits per axis.
    pub m: usize,
    pub scheme: CoefficientScheme,
    /// Payoff support half-width in unit-diffusion standard deviations of `√T`.
    pub window_sds: f64,
    /// Grid half-width as a multiple of the payoff support half-width.
    pub domain_factor: f64,
    pub gauge: Gauge,
    pub backend: LcuBackend,
}

impl Default for PricingConfig {
    fn default() -> Self {
        Self {
            n: 9,
            m: 14,
            scheme: CoefficientScheme::Exact,
            window_sds: 6.0,
            domain_factor: 7.0,
            gauge: Gauge::MovingFrame,
            backend: LcuBackend::Auto,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PricingResult {
    pub value: f64,
    /// Product of the post-selection probabilities of every axis and slab.
    pub success_probability: f64,
    /// `κP` of the first slab on the first axis.
    pub beta_p: f64,
    pub grid_half_width: f64,
    pub support_half_width: f64,
    pub slabs: usize,
}

/// Grids, coordinates and the evaluation point shared by all slabs of one pricing run.
#[derive(Debug, Clone)]
pub struct PricingSetup {
    pub coords: HeatCoordinates,
    pub grids: Vec<GridSpec>,
    /// Heat coordinates of the spot at `τ = T`; node `N/2` of every grid.
    pub target: Vec<f64>,
    pub support_half_width: f64,
    pub config: PricingConfig,
}

impl PricingSetup {
    pub fn new(spec: &BasketSpec, config: &PricingConfig) -> Result<Self> {
        spec.validate()?;
        if config.n == 0 || config.m == 0 {
            return Err(invalid("n and m must be at least 1"));
        }
        if !(config.window_sds > 0.0) {
            return Err(invalid("window_sds must be positive"));
        }
        if !(config.domain_factor >= 1.0) {
            return Err(Error::GridTooSmall(format!(
                "domain factor {} leaves the payoff support uncovered",
                config.domain_factor
            )));
        }
        let coords = HeatCoordinates::from_basket(spec)?;
        let t = spec.maturity;
        let log_spot: Vec<f64> = spec.spots.iter().map(|s| s.ln()).collect();
        let target = coords.to_heat(&log_spot, t, config.gauge);
        let support_half_width = config.window_sds * t.sqrt() + 4.0 * (0.5 * t).sqrt();
        let half_width = config.domain_factor * support_half_width;
        let grids = target
            .iter()
            .map(|&c| make_grid_centered(config.n, half_width, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            coords,
            grids,
            target,
            support_half_width,
            config: config.clone(),
        })
    }

    pub fn axes(&self, kappa: f64) -> Vec<HeatAxis> {
        self.grids
            .iter()
            .enumerate()
            .map(|(d, g)| HeatAxis {
                name: format!("w{d}"),
                grid: *g,
                kappa,
                drift: 0.0,
            })
            .collect()
    }

    /// Heat-space intrinsic value at `τ`, zero outside the payoff support.
    pub fn intrinsic(&self, spec: &BasketSpec, tau: f64) -> Result<Vec<f64>> {
        sample_intrinsic(
            spec,
            &self.coords,
            self.config.gauge,
            &self.grids,
            tau,
            Some(self.support_half_width),
        )
    }

    /// Whether each joint node lies inside the payoff support.
    pub fn intrinsic_support_mask(&self) -> Vec<bool> {
        let axes = self.axes(0.0);
        joint_positions(&axes)
            .iter()
            .map(|w| {
                w.iter()
                    .zip(&self.grids)
                    .all(|(wi, g)| (wi - g.center).abs() <= self.support_half_width)
            })
            .collect()
    }

    /// Evolves heat-space values by `Δτ` and returns the unnormalized real result,
    /// the success probability and `κP` of the first axis.
    pub fn evolve(&self, values: &[f64], dtau: f64) -> Result<(Vec<f64>, f64, f64)> {
        let kappa = 0.5 * dtau;
        let plans = self
            .grids
            .iter()
            .map(|g| {
                let (_, p_min) = diffusion_generator(g);
                LcuPlan::new(kappa, p_min, self.config.m, self.config.scheme)
            })
            .collect::<Result<Vec<_>>>()?;
        let beta_p = plans[0].beta_p();
        if values.iter().all(|v| *v == 0.0) {
            return Ok((values.to_vec(), 1.0, beta_p));
        }
        let problem = HeatProblem {
            axes: self.axes(kappa),
            initial: InitialCondition::Samples(
                values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
            ),
        };
        let solution = evolve_heat_problem(&problem, &plans, self.config.backend)?;
        let out = solution.unnormalized().iter().map(|a| a.re).collect();
        Ok((out, solution.success_probability, beta_p))
    }

    /// Multilinear interpolation of heat-space values at the target point.
    pub fn read_at_target(&self, values: &[f64]) -> f64 {
        let d = self.grids.len();
        let mut base = vec![0usize; d];
        let mut frac = vec![0.0; d];
        for (k, g) in self.grids.iter().enumerate() {
            let pos = (self.target[k] - g.center) / g.delta + (g.points / 2) as f64;
            let lo = pos.floor().clamp(0.0, (g.points - 2) as f64);
            base[k] = lo as usize;
            frac[k] = pos - lo;
        }
        let mut acc = 0.0;
        for corner in 0..1usize << d {
            let mut weight = 1.0;
            let mut index = 0usize;
            for (k, g) in self.grids.iter().enumerate() {
                let up = (corner >> (d - 1 - k)) & 1;
                weight *= if up == 1 { frac[k] } else { 1.0 - frac[k] };
                index = index * g.points + base[k] + up;
            }
            if weight != 0.0 {
                acc += weight * values[index];
            }
        }
        acc
    }

    /// Price-space value from a heat-space value at the target and `τ = T`.
    pub fn to_price(&self, heat_value: f64, maturity: f64) -> f64 {
        heat_value
            / self
                .coords
                .value_factor(&self.target, maturity, self.config.gauge)
    }
}

/// Heat-space samples of the intrinsic value at time-to-maturity `τ`.
///
/// With `support` set, nodes farther than that from any grid center are zeroed and every
/// grid must cover the support.
pub fn sample_intrinsic(
    spec: &BasketSpec,
    coords: &HeatCoordinates,
    gauge: Gauge,
    grids: &[GridSpec],
    tau: f64,
    support: Option<f64>,
) -> Result<Vec<f64>> {
    if grids.len() != spec.dims() {
        return Err(Error::LengthMismatch {
            expected: spec.dims(),
            got: grids.len(),
        });
    }
    if let Some(s) = support {
        if let Some(g) = grids.iter().find(|g| g.half_width < s) {
            return Err(Error::GridTooSmall(format!(
                "grid half-width {} below payoff support {s}",
                g.half_width
            )));
        }
    }
    let axes: Vec<HeatAxis> = grids
        .iter()
        .enumerate()
        .map(|(d, g)| HeatAxis {
            name: format!("w{d}"),
            grid: *g,
            kappa: 0.0,
            drift: 0.0,
        })
        .collect();
    let nodes = joint_positions(&axes);
    Ok(crate::par::map_slice(&nodes, |w| {
        if let Some(s) = support {
            if w.iter().zip(grids).any(|(wi, g)| (wi - g.center).abs() > s) {
                return 0.0;
            }
        }
        let x = coords.from_heat(w, tau, gauge);
        let prices: Vec<f64> = x.iter().map(|v| v.exp()).collect();
        coords.value_factor(w, tau, gauge) * spec.payoff(&prices)
    }))
}

/// Heat-space samples of the payoff at maturity (`τ = 0`).
pub fn sample_terminal_condition(
    spec: &BasketSpec,
    coords: &HeatCoordinates,
    gauge: Gauge,
    grids: &[GridSpec],
    support: Option<f64>,
) -> Result<Vec<f64>> {
    sample_intrinsic(spec, coords, gauge, grids, 0.0, support)
}

/// The isotropic heat problem for a European basket: terminal payoff as initial data,
/// `κ = T/2` per axis, no residual drift.
pub fn basket_to_heat(
    spec: &BasketSpec,
    config: &PricingConfig,
) -> Result<(HeatProblem, HeatCoordinates)> {
    let setup = PricingSetup::new(spec, config)?;
    let samples = setup.intrinsic(spec, 0.0)?;
    let problem = HeatProblem {
        axes: setup.axes(0.5 * spec.maturity),
        initial: InitialCondition::Samples(
            samples
                .into_iter()
                .map(|v| Complex64::new(v, 0.0))
                .collect(),
        ),
    };
    Ok((problem, setup.coords))
}

/// European basket value at the spot.
pub fn price_european_basket(spec: &BasketSpec, config: &PricingConfig) -> Result<PricingResult> {
    let bermudan = BermudanSpec {
        basket: spec.clone(),
        exercise_dates: vec![spec.maturity],
    };
    price_bermudan(&bermudan, config, &mut AmplitudeReadout::exact())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pricing::{black_scholes_closed_form, OptionKind};

    #[test]
    fn terminal_condition_matches_direct_evaluation() {
        let spec = BasketSpec::single(1.0, 1.0, 0.05, 0.0, 0.2, 1.0, OptionKind::Call);
        let coords = HeatCoordinates::from_basket(&spec).unwrap();
        // unit-vol coordinates spanning S ∈ [K/4, 4K]
        let lo = (0.25f64).ln() / 0.2;
        let hi = 4f64.ln() / 0.2;
        let grid = make_grid_centered(6, 0.5 * (hi - lo), 0.5 * (hi + lo)).unwrap();
        for kind in [OptionKind::Call, OptionKind::Put] {
            let spec = spec.with_kind(kind);
            let v = sample_terminal_condition(&spec, &coords, Gauge::MovingFrame, &[grid], None)
                .unwrap();
            for (r, got) in v.iter().enumerate() {
                let s = (0.2 * grid.position(r)).exp();
                assert!((got - kind.payoff(s, 1.0)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_strike_call_has_no_kink() {
        let spec = BasketSpec::single(1.0, 0.0, 0.05, 0.0, 0.2, 1.0, OptionKind::Call);
        let coords = HeatCoordinates::from_basket(&spec).unwrap();
        let grid = make_grid_centered(5, 3.0, 0.0).unwrap();
        let v =
            sample_terminal_condition(&spec, &coords, Gauge::MovingFrame, &[grid], None).unwrap();
        for (r, got) in v.iter().enumerate() {
            assert!((got - (0.2 * grid.position(r)).exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn deep_out_of_the_money_region_is_zero() {
        let spec = BasketSpec::single(1.0, 1.0, 0.05, 0.0, 0.2, 1.0, OptionKind::Call);
        let coords = HeatCoordinates::from_basket(&spec).unwrap();
        let grid = make_grid_centered(4, 1.0, -20.0).unwrap();
        let v =
            sample_terminal_condition(&spec, &coords, Gauge::MovingFrame, &[grid], None).unwrap();
        assert!(v.iter().all(|x| *x == 0.0));
    }

    #[test]
    fn grid_must_cover_support() {
        let spec = BasketSpec::single(1.0, 1.0, 0.05, 0.0, 0.2, 1.0, OptionKind::Call);
        let coords = HeatCoordinates::from_basket(&spec).unwrap();
        let grid = make_grid_centered(4, 1.0, 0.0).unwrap();
        assert!(matches!(
            sample_terminal_condition(&spec, &coords, Gauge::MovingFrame, &[grid], Some(2.0)),
            Err(Error::GridTooSmall(_))
        ));
        let cfg = PricingConfig {
            domain_factor: 0.5,
            ..PricingConfig::default()
        };
        assert!(matches!(
            PricingSetup::new(&spec, &cfg),
            Err(Error::GridTooSmall(_))
        ));
    }

    #[test]
    fn small_grid_price_is_close() {
        let spec = BasketSpec::single(1.0, 1.0, 0.05, 0.0, 0.2, 1.0, OptionKind::Put);
        let cfg = PricingConfig {
            n: 7,
            m: 12,
            domain_factor: 3.0,
            ..PricingConfig::default()
        };
        let got = price_european_basket(&spec, &cfg).unwrap().value;
        let want = black_scholes_closed_form(1.0, 1.0, 0.05, 0.0, 0.2, 1.0, OptionKind::Put);
        assert!(((got - want) / want).abs() < 0.05, "{got} vs {want}");
    }

    #[test]
    fn heat_problem_shape() {
        let spec = BasketSpec::single(1.0, 1.0, 0.05, 0.0, 0.2, 1.0, OptionKind::Call);
        let (problem, coords) = basket_to_heat(&spec, &PricingConfig::default()).unwrap();
        assert_eq!(problem.axes.len(), 1);
        assert_eq!(problem.axes[0].kappa, 0.5);
        assert_eq!(problem.axes[0].grid.points, 512);
        assert_eq!(coords.dims(), 1);
    }
}
