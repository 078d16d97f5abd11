//! Fourier-series LCU for `e^{-βA}` with a diagonal, positive semidefinite `A ≤ P`.
//!
//! `e^{-βλ} ≈ Σ_{ℓ=-M/2}^{M/2-1} c_ℓ U^ℓ` with `U = e^{-iπA/P}`. The ancilla register
//! holds `ℓ` as the unsigned value `ℓ + M/2`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{invalid, Error, Result};
use crate::par;
use crate::sim::{
    apply_controlled_phase, apply_diagonal_phase, project_zero_ancilla, DiagonalGenerator,
    Normalization, QuantumState, Register, MIN_SUCCESS_PROBABILITY,
};
use crate::state_prep::GroverRudolph;

/// Constant in the target-error rule `M ≥ (C/ε)³` of [`build_lcu_plan`].
pub const TARGET_ERROR_CONSTANT: f64 = 1.0;

/// Largest ancilla count [`build_lcu_plan`] will allocate.
pub const MAX_ANCILLA_QUBITS: usize = 26;

/// Name of the ancilla register appended by the statevector backend.
pub const ANCILLA_REGISTER: &str = "lcu_ancilla";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoefficientScheme {
    /// Fourier coefficients of the periodised `e^{-β|x|}`.
    Exact,
    /// Exact coefficients with the `e^{-βP}` term dropped.
    Lorentzian,
    /// Unit-interval integrals of the normalized Lorentzian density.
    IntegratedLorentzian,
}

impl fmt::Display for CoefficientScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Exact => "exact",
            Self::Lorentzian => "lorentzian",
            Self::IntegratedLorentzian => "integrated",
        })
    }
}

impl FromStr for CoefficientScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(Self::Exact),
            "lorentzian" => Ok(Self::Lorentzian),
            "integrated" | "integrated_lorentzian" | "integrated-lorentzian" => {
                Ok(Self::IntegratedLorentzian)
            }
            other => Err(invalid(format!("unknown coefficient scheme `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LcuBackend {
    /// Full joint statevector of system and ancilla registers.
    Statevector,
    /// One ancilla simulation per value of the acted-on register.
    Fibered,
    /// Statevector while the joint state stays small, fibered otherwise.
    #[default]
    Auto,
}

impl fmt::Display for LcuBackend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Statevector => "statevector",
            Self::Fibered => "fibered",
            Self::Auto => "auto",
        })
    }
}

impl FromStr for LcuBackend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "statevector" => Ok(Self::Statevector),
            "fibered" => Ok(Self::Fibered),
            "auto" => Ok(Self::Auto),
            other => Err(invalid(format!("unknown LCU backend `{other}`"))),
        }
    }
}

/// Joint statevectors up to this size are simulated directly under [`LcuBackend::Auto`].
pub const AUTO_STATEVECTOR_LIMIT: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq)]
pub struct LcuPlan {
    pub m: usize,
    pub beta: f64,
    pub p_bound: f64,
    pub scheme: CoefficientScheme,
    /// `coefficients[i]` belongs to `ℓ = i - M/2`.
    pub coefficients: Vec<f64>,
    /// `Σ_ℓ coefficients[ℓ]`.
    pub normalization: f64,
}

impl LcuPlan {
    /// Plan with an explicit ancilla count.
    pub fn new(beta: f64, p_bound: f64, m: usize, scheme: CoefficientScheme) -> Result<Self> {
        if !(p_bound > 0.0) || !p_bound.is_finite() {
            return Err(invalid(format!(
                "spectral bound must be positive, got {p_bound}"
            )));
        }
        if !(beta >= 0.0) || !beta.is_finite() {
            return Err(invalid(format!("beta must be nonnegative, got {beta}")));
        }
        if m == 0 || m > 30 {
            return Err(invalid(format!(
                "ancilla qubits must be in 1..=30, got {m}"
            )));
        }
        let big_m = 1usize << m;
        let x = beta * p_bound;
        if scheme != CoefficientScheme::Exact && x < 1.0 {
            return Err(Error::OutsideApproximationRegime(x));
        }
        let coefficients = match scheme {
            CoefficientScheme::Exact => exact_fourier_coeffs(beta, p_bound, big_m),
            CoefficientScheme::Lorentzian => lorentzian_coeffs(beta, p_bound, big_m),
            CoefficientScheme::IntegratedLorentzian => {
                integrated_lorentzian_coeffs(beta, p_bound, big_m).0
            }
        };
        let normalization = coefficients.iter().sum();
        Ok(Self {
            m,
            beta,
            p_bound,
            scheme,
            coefficients,
            normalization,
        })
    }

    pub fn terms(&self) -> usize {
        self.coefficients.len()
    }

    pub fn beta_p(&self) -> f64 {
        self.beta * self.p_bound
    }

    /// Signed Fourier index of `coefficients[i]`.
    pub fn index(&self, i: usize) -> i64 {
        i as i64 - (self.terms() / 2) as i64
    }

    /// `Σ_ℓ c_ℓ e^{-iπℓλ/P}`, the scalar the plan applies to eigenvalue `λ`.
    pub fn transfer(&self, lambda: f64) -> Complex64 {
        let theta = -PI * lambda / self.p_bound;
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, &c)| c * Complex64::cis(theta * self.index(i) as f64))
            .sum()
    }

    /// The three terms of the error model: `e^{-βP}`, `M/(βP)²` and `βP/M`.
    pub fn error_model_terms(&self) -> [f64; 3] {
        let x = self.beta_p();
        let big_m = self.terms() as f64;
        [(-x).exp(), big_m / (x * x), x / big_m]
    }
}

/// `c_ℓ = x(1 - (-1)^ℓ e^{-x}) / (x² + π²ℓ²)` with `x = βP`, for `ℓ ∈ [-M/2, M/2)`.
pub fn exact_fourier_coeffs(beta: f64, p_bound: f64, terms: usize) -> Vec<f64> {
    let x = beta * p_bound;
    signed_range(terms)
        .map(|l| {
            if l == 0 {
                return if x == 0.0 { 1.0 } else { -(-x).exp_m1() / x };
            }
            let num = if l % 2 == 0 {
                -x * (-x).exp_m1()
            } else {
                x * (1.0 + (-x).exp())
            };
            let lf = l as f64;
            num / (x * x + PI * PI * lf * lf)
        })
        .collect()
}

/// `c̃_ℓ = x / (x² + π²ℓ²)` with `x = βP`.
pub fn lorentzian_coeffs(beta: f64, p_bound: f64, terms: usize) -> Vec<f64> {
    let x = beta * p_bound;
    signed_range(terms)
        .map(|l| {
            let lf = l as f64;
            x / (x * x + PI * PI * lf * lf)
        })
        .collect()
}

/// `p_ℓ = [arctan(π(ℓ+1)/x) - arctan(πℓ/x)] / (π𝒩₂)` and `𝒩₂ = (2/π) arctan(πM/(2x))`.
pub fn integrated_lorentzian_coeffs(beta: f64, p_bound: f64, terms: usize) -> (Vec<f64>, f64) {
    let x = beta * p_bound;
    let norm = 2.0 / PI * (PI * terms as f64 / (2.0 * x)).atan();
    let coeffs = signed_range(terms)
        .map(|l| {
            let lf = l as f64;
            // ℓ(ℓ+1) ≥ 0 on integers, so the difference formula is valid everywhere.
            let diff = ((PI / x) / (1.0 + PI * PI * lf * (lf + 1.0) / (x * x))).atan();
            diff / (PI * norm)
        })
        .collect();
    (coeffs, norm)
}

/// Chooses the smallest `m` with `2^m ≥ (βP)^{3/2}` and, given a target error `ε`,
/// also `2^m ≥ (C/ε)³` with `C =` [`TARGET_ERROR_CONSTANT`].
pub fn build_lcu_plan(
    beta: f64,
    p_bound: f64,
    target_error: Option<f64>,
    scheme: CoefficientScheme,
) -> Result<LcuPlan> {
    let x = beta * p_bound;
    if scheme != CoefficientScheme::Exact && x < 1.0 {
        return Err(Error::OutsideApproximationRegime(x));
    }
    let mut need = x.powf(1.5);
    if let Some(eps) = target_error {
        if !(eps > 0.0) {
            return Err(invalid(format!("target error must be positive, got {eps}")));
        }
        need = need.max((TARGET_ERROR_CONSTANT / eps).powi(3));
    }
    let mut m = 1;
    while ((1u64 << m) as f64) < need {
        m += 1;
        if m > MAX_ANCILLA_QUBITS {
            return Err(invalid(format!(
                "plan needs more than {MAX_ANCILLA_QUBITS} ancilla qubits (M ≥ {need:.3e})"
            )));
        }
    }
    LcuPlan::new(beta, p_bound, m, scheme)
}

/// Runs the LCU circuit for `e^{-βA}` on `register`.
///
/// Returns the renormalized post-selected state and the success probability
/// `‖Σ c_ℓ U^ℓ ψ‖² / (Σ c_ℓ)²`.
pub fn apply_lcu(
    state: &QuantumState,
    register: &str,
    generator: &DiagonalGenerator,
    plan: &LcuPlan,
    backend: LcuBackend,
) -> Result<(QuantumState, f64)> {
    let layout = state.layout(register)?;
    if generator.eigenvalues.len() != layout.dim {
        return Err(Error::LengthMismatch {
            expected: layout.dim,
            got: generator.eigenvalues.len(),
        });
    }
    check_bound(plan, generator)?;
    if state.normalization() != Normalization::Normalized {
        return Err(Error::NotNormalized(state.norm()));
    }
    let tree = GroverRudolph::from_bin_masses(&plan.coefficients)?;
    let backend = match backend {
        LcuBackend::Auto if state.len().saturating_mul(plan.terms()) <= AUTO_STATEVECTOR_LIMIT => {
            LcuBackend::Statevector
        }
        LcuBackend::Auto => LcuBackend::Fibered,
        b => b,
    };
    match backend {
        LcuBackend::Statevector => apply_statevector(state, register, generator, plan, &tree),
        _ => apply_fibered(state, register, generator, plan, &tree),
    }
}

fn check_bound(plan: &LcuPlan, generator: &DiagonalGenerator) -> Result<()> {
    let max = generator.max_eigenvalue();
    if max > plan.p_bound * (1.0 + 1e-12) {
        return Err(Error::PlanMismatch(format!(
            "spectral bound {} below largest eigenvalue {max}",
            plan.p_bound
        )));
    }
    if generator.min_eigenvalue() < 0.0 {
        return Err(Error::PlanMismatch(
            "generator has negative eigenvalues".into(),
        ));
    }
    Ok(())
}

fn base_angles(plan: &LcuPlan, generator: &DiagonalGenerator) -> Vec<f64> {
    generator
        .eigenvalues
        .iter()
        .map(|&l| -PI * l / plan.p_bound)
        .collect()
}

fn apply_statevector(
    state: &QuantumState,
    register: &str,
    generator: &DiagonalGenerator,
    plan: &LcuPlan,
    tree: &GroverRudolph,
) -> Result<(QuantumState, f64)> {
    let mut joint = state
        .clone()
        .with_register(Register::new(ANCILLA_REGISTER, plan.m))?;
    tree.apply(&mut joint, ANCILLA_REGISTER)?;
    let theta = base_angles(plan, generator);
    let half = (plan.terms() / 2) as f64;
    let shifted: Vec<f64> = theta.iter().map(|t| -half * t).collect();
    apply_diagonal_phase(&mut joint, register, &shifted)?;
    for j in 0..plan.m {
        let power = (1u64 << j) as f64;
        let angles: Vec<f64> = theta.iter().map(|t| power * t).collect();
        apply_controlled_phase(&mut joint, ANCILLA_REGISTER, j, register, &angles)?;
    }
    tree.apply_inverse(&mut joint, ANCILLA_REGISTER)?;
    project_zero_ancilla(&joint, ANCILLA_REGISTER)
}

fn apply_fibered(
    state: &QuantumState,
    register: &str,
    generator: &DiagonalGenerator,
    plan: &LcuPlan,
    tree: &GroverRudolph,
) -> Result<(QuantumState, f64)> {
    let layout = state.layout(register)?;
    let terms = plan.terms();
    let mut prepared = vec![Complex64::new(0.0, 0.0); terms];
    prepared[0] = Complex64::new(1.0, 0.0);
    tree.apply_slice(&mut prepared);
    let theta = base_angles(plan, generator);
    let half = (terms / 2) as f64;
    // Ancilla-zero amplitude after prep, select and unprep, per register value.
    let gains: Vec<Complex64> = par::map_range(layout.dim, |k| {
        let mut anc = prepared.clone();
        let t = theta[k];
        let shift = Complex64::cis(-half * t);
        anc.iter_mut().for_each(|a| *a *= shift);
        for j in 0..plan.m {
            let bit = 1usize << j;
            let phase = Complex64::cis((bit as f64) * t);
            for (a, amp) in anc.iter_mut().enumerate() {
                if a & bit != 0 {
                    *amp *= phase;
                }
            }
        }
        tree.apply_inverse_slice(&mut anc);
        anc[0]
    });
    let mut out = state.clone();
    par::for_each_indexed(out.amplitudes_mut(), |i, a| *a *= gains[layout.value_of(i)]);
    let probability = out.norm().powi(2);
    if !(probability >= MIN_SUCCESS_PROBABILITY) {
        return Err(Error::PostSelectionImpossible(probability));
    }
    out.set_normalization(Normalization::Subnormalized);
    out.renormalize()?;
    Ok((out, probability.min(1.0)))
}

/// `Σ_ℓ c_ℓ e^{-iπℓλ/P}`.
pub fn transfer_function(plan: &LcuPlan, lambda: f64) -> Complex64 {
    plan.transfer(lambda)
}

/// `max_λ |Σ_ℓ c_ℓ e^{-iπℓλ/P} - e^{-βλ}|` over the generator's eigenvalues.
pub fn lcu_operator_error(plan: &LcuPlan, generator: &DiagonalGenerator) -> f64 {
    let eig = &generator.eigenvalues;
    par::max_range(eig.len(), |i| {
        let l = eig[i];
        (plan.transfer(l) - Complex64::new((-plan.beta * l).exp(), 0.0)).norm()
    })
}

fn signed_range(terms: usize) -> impl Iterator<Item = i64> {
    let half = (terms / 2) as i64;
    -half..(terms as i64 - half)
}
