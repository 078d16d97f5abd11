use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::state::{l2_norm, Normalization, QuantumState, Register};
use super::MIN_SUCCESS_PROBABILITY;
use crate::error::{Error, Result};
use crate::par;

/// Multiplies the amplitude at register value `k` by `e^{i·angles[k]}`.
pub fn apply_diagonal_phase(
    state: &mut QuantumState,
    register: &str,
    angles: &[f64],
) -> Result<()> {
    let layout = state.layout(register)?;
    check_len(layout.dim, angles.len())?;
    let factors: Vec<Complex64> = angles.iter().map(|&t| Complex64::cis(t)).collect();
    par::for_each_indexed(state.amplitudes_mut(), |i, a| {
        *a *= factors[layout.value_of(i)]
    });
    Ok(())
}

/// Multiplies by arbitrary per-value factors; the result is flagged subnormalized
/// unless every factor has unit modulus.
pub fn apply_diagonal_scaling(
    state: &mut QuantumState,
    register: &str,
    factors: &[Complex64],
) -> Result<()> {
    let layout = state.layout(register)?;
    check_len(layout.dim, factors.len())?;
    par::for_each_indexed(state.amplitudes_mut(), |i, a| {
        *a *= factors[layout.value_of(i)]
    });
    if factors.iter().any(|f| (f.norm() - 1.0).abs() > 1e-15) {
        state.set_normalization(Normalization::Subnormalized);
    }
    Ok(())
}

/// Phase `e^{i·angles[k]}` on `target`, applied only where qubit `control_bit`
/// (counted from the least significant bit) of `control` is set.
pub fn apply_controlled_phase(
    state: &mut QuantumState,
    control: &str,
    control_bit: usize,
    target: &str,
    angles: &[f64],
) -> Result<()> {
    let c = state.layout(control)?;
    let t = state.layout(target)?;
    if control_bit >= c.qubits {
        return Err(crate::error::invalid(format!(
            "control bit {control_bit} outside {}-qubit register",
            c.qubits
        )));
    }
    check_len(t.dim, angles.len())?;
    let factors: Vec<Complex64> = angles.iter().map(|&a| Complex64::cis(a)).collect();
    let mask = 1usize << (c.bit_offset + control_bit);
    par::for_each_indexed(state.amplitudes_mut(), |i, a| {
        if i & mask != 0 {
            *a *= factors[t.value_of(i)];
        }
    });
    Ok(())
}

/// Pauli Z on qubit `bit` of `register`, counted from the least significant bit.
pub fn apply_z(state: &mut QuantumState, register: &str, bit: usize) -> Result<()> {
    let layout = state.layout(register)?;
    if bit >= layout.qubits {
        return Err(crate::error::invalid(format!(
            "bit {bit} outside {}-qubit register",
            layout.qubits
        )));
    }
    let mask = 1usize << (layout.bit_offset + bit);
    par::for_each_indexed(state.amplitudes_mut(), |i, a| {
        if i & mask != 0 {
            *a = -*a;
        }
    });
    Ok(())
}

/// Runs `f` on every one-register fiber: the `dim` amplitudes sharing all other
/// register values, ordered by the register value.
pub fn for_each_fiber<F>(state: &mut QuantumState, register: &str, f: F) -> Result<()>
where
    F: Fn(&mut [Complex64]) + Sync + Send,
{
    let layout = state.layout(register)?;
    let (dim, stride) = (layout.dim, layout.stride);
    let amps = state.amplitudes_mut();
    if stride == 1 {
        par::for_each_chunk(amps, dim, |_, fiber| f(fiber));
        return Ok(());
    }
    let fibers = layout.outer * stride;
    let src: &[Complex64] = amps;
    let transformed = par::map_range(fibers, |id| {
        let (o, s) = (id / stride, id % stride);
        let base = o * dim * stride + s;
        let mut buf: Vec<Complex64> = (0..dim).map(|v| src[base + v * stride]).collect();
        f(&mut buf);
        buf
    });
    for (id, buf) in transformed.into_iter().enumerate() {
        let (o, s) = (id / stride, id % stride);
        let base = o * dim * stride + s;
        for (v, x) in buf.into_iter().enumerate() {
            amps[base + v * stride] = x;
        }
    }
    Ok(())
}

/// Quantum Fourier transform on one register.
///
/// Forward: `|j⟩ ↦ N^{-1/2} Σ_k e^{+2πijk/N}|k⟩`; `inverse` conjugates the exponent.
pub fn apply_qft(state: &mut QuantumState, register: &str, inverse: bool) -> Result<()> {
    let layout = state.layout(register)?;
    let dim = layout.dim;
    if dim == 1 {
        return Ok(());
    }
    let plan: Arc<dyn Fft<f64>> = {
        let mut planner = FftPlanner::new();
        // rustfft's "inverse" carries the + sign in the exponent.
        if inverse {
            planner.plan_fft_forward(dim)
        } else {
            planner.plan_fft_inverse(dim)
        }
    };
    let scale = 1.0 / (dim as f64).sqrt();
    for_each_fiber(state, register, |fiber| {
        plan.process(fiber);
        fiber.iter_mut().for_each(|a| *a *= scale);
    })
}

/// Projects `register` onto `|0…0⟩`, removes it, and renormalizes.
///
/// Returns the projected state and the probability of the projected component.
pub fn project_zero_ancilla(state: &QuantumState, register: &str) -> Result<(QuantumState, f64)> {
    let layout = state.layout(register)?;
    let (dim, stride) = (layout.dim, layout.stride);
    let amps = state.amplitudes();
    let kept: Vec<Complex64> = par::map_range(layout.outer * stride, |id| {
        let (o, s) = (id / stride, id % stride);
        amps[o * dim * stride + s]
    });
    let total = state.norm().powi(2);
    if total == 0.0 {
        return Err(Error::ZeroVector);
    }
    let kept_mass = l2_norm(&kept).powi(2);
    let probability = (kept_mass / total).min(1.0);
    if !(probability >= MIN_SUCCESS_PROBABILITY) {
        return Err(Error::PostSelectionImpossible(probability));
    }
    let registers: Vec<Register> = state
        .registers()
        .iter()
        .filter(|r| r.name != register)
        .cloned()
        .collect();
    let mut out = QuantumState::from_amplitudes(registers, kept, Normalization::Subnormalized)?;
    out.renormalize()?;
    Ok((out, probability))
}

fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(Error::LengthMismatch { expected, got });
    }
    Ok(())
}
