//! Uniform grids, the signed-index DTFT and per-axis diffusion and drift evolutions.
//!
//! Register value `r` of an `n`-qubit axis stands for the signed index `j = r - N/2`,
//! the position `x_j = center + jδ` and the frequency `f_j = jδ_f`, with `δδ_f = 1/N`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::lcu::{apply_lcu, LcuBackend, LcuPlan};
use crate::sim::{
    apply_diagonal_phase, apply_qft, apply_z, DiagonalGenerator, Normalization, QuantumState,
    Register,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub n: usize,
    pub points: usize,
    pub delta: f64,
    pub delta_f: f64,
    pub half_width: f64,
    pub freq_half_width: f64,
    /// Position of the node with signed index 0.
    pub center: f64,
}

impl GridSpec {
    pub fn signed_index(&self, r: usize) -> f64 {
        r as f64 - (self.points / 2) as f64
    }

    pub fn position(&self, r: usize) -> f64 {
        self.center + self.signed_index(r) * self.delta
    }

    pub fn frequency(&self, r: usize) -> f64 {
        self.signed_index(r) * self.delta_f
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.points).map(|r| self.position(r)).collect()
    }

    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.points).map(|r| self.frequency(r)).collect()
    }
}

/// `N = 2^n` nodes on `[-L, L)`.
pub fn make_grid(n: usize, half_width: f64) -> Result<GridSpec> {
    make_grid_centered(n, half_width, 0.0)
}

/// `N = 2^n` nodes on `[c - L, c + L)`; node `N/2` sits at `c`.
pub fn make_grid_centered(n: usize, half_width: f64, center: f64) -> Result<GridSpec> {
    if n == 0 || n > 30 {
        return Err(invalid(format!("grid qubits must be in 1..=30, got {n}")));
    }
    if !(half_width > 0.0) || !half_width.is_finite() {
        return Err(invalid(format!(
            "grid half-width must be positive, got {half_width}"
        )));
    }
    let points = 1usize << n;
    let delta = 2.0 * half_width / points as f64;
    Ok(GridSpec {
        n,
        points,
        delta,
        delta_f: 1.0 / (points as f64 * delta),
        half_width,
        freq_half_width: 1.0 / (2.0 * delta),
        center,
    })
}

/// Half-width after padding for diffusion spread and drift: `L + 4√κ + |Γ|`.
pub fn enlarged_half_width(half_width: f64, kappa_max: f64, drift_max: f64) -> f64 {
    half_width + 4.0 * kappa_max.max(0.0).sqrt() + drift_max.abs()
}

/// Signed-index DTFT `(1/√N) e^{-2πi f_k (x_j - center)}` on `register`.
///
/// Realised as `e^{-iπN/2} · Z · QFT† · Z` with `Z` on the least significant qubit;
/// `inverse` applies the adjoint.
pub fn apply_dtft(
    state: &mut QuantumState,
    register: &str,
    grid: &GridSpec,
    inverse: bool,
) -> Result<()> {
    let layout = state.layout(register)?;
    if layout.qubits != grid.n {
        return Err(Error::LengthMismatch {
            expected: grid.points,
            got: layout.dim,
        });
    }
    apply_z(state, register, 0)?;
    apply_qft(state, register, !inverse)?;
    apply_z(state, register, 0)?;
    let half_turns = (grid.points / 2) % 2;
    if half_turns == 1 {
        // e^{∓iπN/2} = -1 only for N = 2.
        state.amplitudes_mut().iter_mut().for_each(|a| *a = -*a);
    }
    Ok(())
}

/// Eigenvalues `(2πδ_f k)²` per register value and the bound `P_min = (2πδ_f N/2)²`.
pub fn diffusion_generator(grid: &GridSpec) -> (DiagonalGenerator, f64) {
    let eig: Vec<f64> = (0..grid.points)
        .map(|r| (2.0 * PI * grid.frequency(r)).powi(2))
        .collect();
    let p_min = (2.0 * PI * grid.delta_f * (grid.points / 2) as f64).powi(2);
    (DiagonalGenerator { eigenvalues: eig }, p_min)
}

/// `e^{κ∂²}` on one axis via DTFT, the LCU for `e^{-κA}`, and the inverse DTFT.
pub fn evolve_diffusion(
    state: &QuantumState,
    register: &str,
    kappa: f64,
    grid: &GridSpec,
    plan: &LcuPlan,
    backend: LcuBackend,
) -> Result<(QuantumState, f64)> {
    if !(kappa >= 0.0) {
        return Err(invalid(format!("kappa must be nonnegative, got {kappa}")));
    }
    if (plan.beta - kappa).abs() > 1e-12 * kappa.max(1.0) {
        return Err(Error::PlanMismatch(format!(
            "plan beta {} differs from kappa {kappa}",
            plan.beta
        )));
    }
    let (generator, p_min) = diffusion_generator(grid);
    if plan.p_bound < p_min * (1.0 - 1e-12) {
        return Err(Error::PlanMismatch(format!(
            "plan bound {} below P_min {p_min}",
            plan.p_bound
        )));
    }
    let mut work = state.clone();
    apply_dtft(&mut work, register, grid, false)?;
    let (mut out, probability) = apply_lcu(&work, register, &generator, plan, backend)?;
    apply_dtft(&mut out, register, grid, true)?;
    Ok((out, probability))
}

/// Translation `ψ(x) ↦ ψ(x - Γ)` via the Fourier phase `e^{-2πiΓf_k}`.
pub fn evolve_drift(
    state: &mut QuantumState,
    register: &str,
    gamma: f64,
    grid: &GridSpec,
) -> Result<()> {
    if gamma == 0.0 {
        return Ok(());
    }
    apply_dtft(state, register, grid, false)?;
    let angles: Vec<f64> = grid
        .frequencies()
        .iter()
        .map(|f| -2.0 * PI * gamma * f)
        .collect();
    apply_diagonal_phase(state, register, &angles)?;
    apply_dtft(state, register, grid, true)
}

pub type SampleFn = Arc<dyn Fn(&[f64]) -> Complex64 + Send + Sync>;

#[derive(Clone)]
pub enum InitialCondition {
    /// Joint grid samples, axis 0 most significant.
    Samples(Vec<Complex64>),
    /// Evaluated at the grid nodes (shifted by the drift of each axis).
    Function(SampleFn),
}

impl std::fmt::Debug for InitialCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Samples(s) => write!(f, "Samples(len = {})", s.len()),
            Self::Function(_) => f.write_str("Function"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct HeatAxis {
    pub name: String,
    pub grid: GridSpec,
    /// Integrated diffusion `(1/2)∫σ²`, length².
    pub kappa: f64,
    /// Integrated drift `∫γ`, length.
    pub drift: f64,
}

#[derive(Debug, Clone)]
pub struct HeatProblem {
    pub axes: Vec<HeatAxis>,
    pub initial: InitialCondition,
}

#[derive(Debug, Clone)]
pub struct HeatSolution {
    /// Normalized evolved state, one register per axis.
    pub state: QuantumState,
    /// Product of per-axis post-selection probabilities.
    pub success_probability: f64,
    pub axis_success: Vec<f64>,
    /// ℓ2 norm of the initial grid samples.
    pub initial_norm: f64,
    /// Factor taking `state` back to the unnormalized evolution of the samples.
    pub scale: f64,
}

impl HeatSolution {
    /// `Π_d (Σ_ℓ c_ℓ^{(d)}) (Σ_ℓ c_ℓ^{(d)}/𝒩_d) U_d^ℓ` applied to the raw samples.
    pub fn unnormalized(&self) -> Vec<Complex64> {
        self.state
            .amplitudes()
            .iter()
            .map(|a| a * self.scale)
            .collect()
    }
}

/// Joint node coordinates for the axes, in amplitude order.
pub fn joint_positions(axes: &[HeatAxis]) -> Vec<Vec<f64>> {
    let total: usize = axes.iter().map(|a| a.grid.points).product();
    (0..total)
        .map(|mut idx| {
            let mut x = vec![0.0; axes.len()];
            for (d, axis) in axes.iter().enumerate().rev() {
                let r = idx % axis.grid.points;
                idx /= axis.grid.points;
                x[d] = axis.grid.position(r);
            }
            x
        })
        .collect()
}

/// Drifts first (as shifts of the initial data), then one diffusion LCU per axis.
pub fn evolve_heat_problem(
    problem: &HeatProblem,
    plans: &[LcuPlan],
    backend: LcuBackend,
) -> Result<HeatSolution> {
    if problem.axes.is_empty() {
        return Err(invalid("heat problem needs at least one axis"));
    }
    if plans.len() != problem.axes.len() {
        return Err(Error::LengthMismatch {
            expected: problem.axes.len(),
            got: plans.len(),
        });
    }
    let registers: Vec<Register> = problem
        .axes
        .iter()
        .map(|a| Register::new(a.name.clone(), a.grid.n))
        .collect();
    let samples = match &problem.initial {
        InitialCondition::Samples(s) => s.clone(),
        InitialCondition::Function(f) => {
            crate::par::map_slice(&joint_positions(&problem.axes), |x| {
                let shifted: Vec<f64> = x
                    .iter()
                    .zip(&problem.axes)
                    .map(|(xi, a)| xi - a.drift)
                    .collect();
                f(&shifted)
            })
        }
    };
    let mut state =
        QuantumState::from_amplitudes(registers, samples, Normalization::Subnormalized)?;
    let initial_norm = state.renormalize()?;
    if let InitialCondition::Samples(_) = problem.initial {
        for axis in &problem.axes {
            evolve_drift(&mut state, &axis.name, axis.drift, &axis.grid)?;
        }
    }
    let mut axis_success = Vec::with_capacity(plans.len());
    let mut scale = initial_norm;
    for (axis, plan) in problem.axes.iter().zip(plans) {
        let (next, p) =
            evolve_diffusion(&state, &axis.name, axis.kappa, &axis.grid, plan, backend)?;
        state = next;
        scale *= plan.normalization * p.sqrt();
        axis_success.push(p);
    }
    Ok(HeatSolution {
        state,
        success_probability: axis_success.iter().product(),
        axis_success,
        initial_norm,
        scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lcu::CoefficientScheme;

    fn dense_dtft(n: usize) -> Vec<Vec<Complex64>> {
        let g = make_grid(n, 1.0).unwrap();
        (0..g.points)
            .map(|k| {
                (0..g.points)
                    .map(|j| {
                        Complex64::cis(-2.0 * PI * g.frequency(k) * g.signed_index(j) * g.delta)
                            / (g.points as f64).sqrt()
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn grid_arithmetic() {
        let g = make_grid(5, 1.0).unwrap();
        assert_eq!(g.points, 32);
        assert_eq!(g.delta, 1.0 / 16.0);
        assert_eq!(g.delta_f, 0.5);
        assert_eq!(g.freq_half_width, 8.0);
        assert_eq!(g.delta * g.delta_f, 1.0 / 32.0);
        assert_eq!(g.freq_half_width * 2.0 * g.delta, 1.0);
        assert_eq!(g.position(0), -1.0);
        assert_eq!(g.position(16), 0.0);
        assert!(make_grid(0, 1.0).is_err());
        assert!(make_grid(3, -1.0).is_err());
    }

    #[test]
    fn dtft_matches_dense_matrix() {
        for n in 1..=5 {
            let g = make_grid(n, 1.0).unwrap();
            let f = dense_dtft(n);
            for j in 0..g.points {
                let mut e = vec![Complex64::new(0.0, 0.0); g.points];
                e[j] = Complex64::new(1.0, 0.0);
                let mut s = QuantumState::normalized_from("x", &e).unwrap();
                apply_dtft(&mut s, "x", &g, false).unwrap();
                for (k, (a, row)) in s.amplitudes().iter().zip(&f).enumerate() {
                    assert!((a - row[j]).norm() < 1e-13, "n={n} j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn dtft_inverse_round_trip() {
        let g = make_grid(6, 2.0).unwrap();
        let v: Vec<Complex64> = (0..64)
            .map(|i| Complex64::new((i as f64 * 0.3).sin(), (i as f64).cos()))
            .collect();
        let mut s = QuantumState::normalized_from("x", &v).unwrap();
        let before = s.clone();
        apply_dtft(&mut s, "x", &g, false).unwrap();
        apply_dtft(&mut s, "x", &g, true).unwrap();
        for (a, b) in s.amplitudes().iter().zip(before.amplitudes()) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn generator_values() {
        let g = make_grid(5, 1.0).unwrap();
        let (gen, p_min) = diffusion_generator(&g);
        assert_eq!(gen.eigenvalues[16], 0.0);
        for k in 1..16 {
            assert_eq!(gen.eigenvalues[16 + k], gen.eigenvalues[16 - k]);
        }
        let want = 256.0 * PI * PI;
        assert!((gen.max_eigenvalue() - want).abs() < 1e-9);
        assert!((p_min - want).abs() < 1e-9);
    }

    #[test]
    fn constant_state_is_invariant_under_diffusion() {
        let g = make_grid(4, 1.0).unwrap();
        let (_, p) = diffusion_generator(&g);
        let plan = LcuPlan::new(0.01, p, 4, CoefficientScheme::Exact).unwrap();
        let s = QuantumState::normalized_from("x", &[Complex64::new(1.0, 0.0); 16]).unwrap();
        let (out, prob) = evolve_diffusion(&s, "x", 0.01, &g, &plan, LcuBackend::Auto).unwrap();
        for (a, b) in out.amplitudes().iter().zip(s.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
        let gain = plan.transfer(0.0).norm() / plan.normalization;
        assert!((prob - gain * gain).abs() < 1e-12);
    }

    #[test]
    fn diffusion_plan_mismatch() {
        let g = make_grid(4, 1.0).unwrap();
        let (_, p) = diffusion_generator(&g);
        let s = QuantumState::normalized_from("x", &[Complex64::new(1.0, 0.0); 16]).unwrap();
        let plan = LcuPlan::new(0.02, p, 4, CoefficientScheme::Exact).unwrap();
        assert!(matches!(
            evolve_diffusion(&s, "x", 0.01, &g, &plan, LcuBackend::Auto),
            Err(Error::PlanMismatch(_))
        ));
        let plan = LcuPlan::new(0.01, p / 2.0, 4, CoefficientScheme::Exact).unwrap();
        assert!(matches!(
            evolve_diffusion(&s, "x", 0.01, &g, &plan, LcuBackend::Auto),
            Err(Error::PlanMismatch(_))
        ));
    }

    #[test]
    fn drift_shifts_band_limited_cosine() {
        let g = make_grid(5, 1.0).unwrap();
        let f = 3.0 * g.delta_f;
        let samples: Vec<Complex64> = g
            .positions()
            .iter()
            .map(|x| Complex64::new((2.0 * PI * f * x).cos() + 0.5, 0.0))
            .collect();
        let norm = crate::sim::QuantumState::normalized_from("x", &samples)
            .unwrap()
            .norm();
        let mut s = QuantumState::normalized_from("x", &samples).unwrap();
        evolve_drift(&mut s, "x", 2.0 * g.delta, &g).unwrap();
        let raw: f64 = samples.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for (r, a) in s.amplitudes().iter().enumerate() {
            let x = g.position(r) - 2.0 * g.delta;
            let want = ((2.0 * PI * f * x).cos() + 0.5) / raw;
            assert!((a.re - want).abs() < 1e-12 && a.im.abs() < 1e-12);
        }
        assert!((norm - 1.0).abs() < 1e-14);
    }

    #[test]
    fn heat_problem_function_and_samples_agree() {
        let g = make_grid(5, 2.0).unwrap();
        let (_, p) = diffusion_generator(&g);
        let plan = LcuPlan::new(0.01, p, 8, CoefficientScheme::Exact).unwrap();
        let f = |x: f64| (-(x * x) * 2.0).exp();
        let axis = HeatAxis {
            name: "x".into(),
            grid: g,
            kappa: 0.01,
            drift: 0.0,
        };
        let by_fn = evolve_heat_problem(
            &HeatProblem {
                axes: vec![axis.clone()],
                initial: InitialCondition::Function(Arc::new(move |x: &[f64]| {
                    Complex64::new(f(x[0]), 0.0)
                })),
            },
            std::slice::from_ref(&plan),
            LcuBackend::Auto,
        )
        .unwrap();
        let samples: Vec<Complex64> = g
            .positions()
            .iter()
            .map(|&x| Complex64::new(f(x), 0.0))
            .collect();
        let by_samples = evolve_heat_problem(
            &HeatProblem {
                axes: vec![axis],
                initial: InitialCondition::Samples(samples),
            },
            &[plan],
            LcuBackend::Auto,
        )
        .unwrap();
        for (a, b) in by_fn.unnormalized().iter().zip(by_samples.unnormalized()) {
            assert!((a - b).norm() < 1e-13);
        }
    }
}
