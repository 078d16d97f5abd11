//! Black–Scholes basket and Bermudan pricing on top of the heat-equation pipeline.
//!
//! Log prices are mapped to isotropic heat coordinates (rotation by the covariance
//! eigenvectors, rescaling by the eigenvalues, and either a moving frame or an
//! exponential gauge to remove the drift), the payoff is evolved backwards in time by
//! the diffusion LCU, and the value at the spot is read back.

mod bermudan;
mod closed_form;
mod coords;
mod engine;
mod resources;
mod spec;

pub use bermudan::{price_bermudan, price_bermudan_with_noise, AmplitudeReadout, SurfaceExtractor};
pub use closed_form::{
    binomial_bermudan_oracle, black_scholes_closed_form, lattice_value, BinomialLattice,
};
pub use coords::{Gauge, HeatCoordinates};
pub use engine::{
    basket_to_heat, price_european_basket, sample_intrinsic, sample_terminal_condition,
    PricingConfig, PricingResult, PricingSetup,
};
pub use resources::{cost_ratio, resource_estimate, resource_estimate_exact};
pub use spec::{BasketSpec, BermudanSpec, OptionKind};
