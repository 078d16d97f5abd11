use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::engine::{PricingConfig, PricingResult, PricingSetup};
use super::spec::BermudanSpec;
use crate::error::{invalid, Result};

/// Reads a continuation surface out of the evolved state.
///
/// The surface is given as heat-space values on the joint grid; the return value is
/// what the backward induction continues with.
pub trait SurfaceExtractor {
    fn extract(&mut self, surface: &[f64]) -> Vec<f64>;
}

/// Direct amplitude readout, optionally perturbed by uniform noise in `[-ε, ε]`.
#[derive(Debug, Clone)]
pub struct AmplitudeReadout {
    noise: f64,
    rng: ChaCha8Rng,
}

impl AmplitudeReadout {
    pub fn exact() -> Self {
        Self::with_noise(0.0, 0)
    }

    pub fn with_noise(noise: f64, seed: u64) -> Self {
        Self {
            noise,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl SurfaceExtractor for AmplitudeReadout {
    fn extract(&mut self, surface: &[f64]) -> Vec<f64> {
        if self.noise == 0.0 {
            return surface.to_vec();
        }
        surface
            .iter()
            .map(|v| v + self.noise * self.rng.random_range(-1.0..=1.0))
            .collect()
    }
}

/// Backward induction over the exercise dates.
///
/// Each slab evolves the heat-space values, extracts the surface, takes the maximum
/// with the intrinsic value at that date and re-prepares the state from the result.
pub fn price_bermudan(
    spec: &BermudanSpec,
    config: &PricingConfig,
    extractor: &mut dyn SurfaceExtractor,
) -> Result<PricingResult> {
    spec.validate()?;
    let basket = &spec.basket;
    let maturity = basket.maturity;
    let setup = PricingSetup::new(basket, config)?;
    // Times to maturity of the slab boundaries: 0, T - t_{N-1}, …, T - t_1, T.
    let mut taus = vec![0.0];
    taus.extend(
        spec.exercise_dates[..spec.exercise_dates.len() - 1]
            .iter()
            .rev()
            .map(|t| maturity - t),
    );
    taus.push(maturity);
    let slabs = taus.len() - 1;

    let mut values = setup.intrinsic(basket, 0.0)?;
    let mut success = 1.0;
    let mut first_beta_p = None;
    for s in 0..slabs {
        let (evolved, p, beta_p) = setup.evolve(&values, taus[s + 1] - taus[s])?;
        first_beta_p.get_or_insert(beta_p);
        success *= p;
        values = extractor.extract(&evolved);
        if values.len() != evolved.len() {
            return Err(invalid("extractor changed the surface size"));
        }
        if s + 1 < slabs {
            let intrinsic = setup.intrinsic(basket, taus[s + 1])?;
            let outside = setup.intrinsic_support_mask();
            for ((v, i), keep) in values.iter_mut().zip(&intrinsic).zip(&outside) {
                *v = if *keep { v.max(*i) } else { 0.0 };
            }
        }
    }
    let heat_value = setup.read_at_target(&values);
    Ok(PricingResult {
        value: setup.to_price(heat_value, maturity),
        success_probability: success,
        beta_p: first_beta_p.unwrap_or(0.0),
        grid_half_width: setup.grids[0].half_width,
        support_half_width: setup.support_half_width,
        slabs,
    })
}

/// [`price_bermudan`] with the amplitude readout perturbed by seeded noise of size `noise`.
pub fn price_bermudan_with_noise(
    spec: &BermudanSpec,
    config: &PricingConfig,
    noise: f64,
    seed: u64,
) -> Result<PricingResult> {
    if !(noise >= 0.0) {
        return Err(invalid(format!(
            "extraction noise must be nonnegative, got {noise}"
        )));
    }
    price_bermudan(spec, config, &mut AmplitudeReadout::with_noise(noise, seed))
}
