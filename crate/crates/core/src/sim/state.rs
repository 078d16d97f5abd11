use num_complex::Complex64;

use super::NORM_TOLERANCE;
use crate::error::{Error, Result};
use crate::par;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Register {
    pub name: String,
    pub qubits: usize,
}

impl Register {
    pub fn new(name: impl Into<String>, qubits: usize) -> Self {
        Self {
            name: name.into(),
            qubits,
        }
    }

    pub fn dim(&self) -> usize {
        1 << self.qubits
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    Normalized,
    Subnormalized,
}

/// Position of one register inside the joint basis index.
///
/// The joint index is `outer * dim * stride + value * stride + inner`, where `inner`
/// enumerates all later registers and `outer` all earlier ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterLayout {
    pub qubits: usize,
    pub dim: usize,
    pub stride: usize,
    pub outer: usize,
    /// Global bit position of the register's least significant qubit.
    pub bit_offset: usize,
}

impl RegisterLayout {
    #[inline]
    pub fn value_of(&self, index: usize) -> usize {
        (index / self.stride) & (self.dim - 1)
    }
}

/// Multi-register statevector; big-endian within a register, registers concatenated
/// in declaration order (the first register holds the most significant bits).
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    registers: Vec<Register>,
    amplitudes: Vec<Complex64>,
    normalization: Normalization,
}

impl QuantumState {
    /// The all-zeros basis state.
    pub fn zero(registers: Vec<Register>) -> Result<Self> {
        check_names(&registers)?;
        let len = 1usize << total_qubits(&registers);
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); len];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self {
            registers,
            amplitudes,
            normalization: Normalization::Normalized,
        })
    }

    /// Wraps raw amplitudes. A `Normalized` flag is checked against [`NORM_TOLERANCE`].
    pub fn from_amplitudes(
        registers: Vec<Register>,
        amplitudes: Vec<Complex64>,
        normalization: Normalization,
    ) -> Result<Self> {
        check_names(&registers)?;
        let expected = 1usize << total_qubits(&registers);
        if amplitudes.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                got: amplitudes.len(),
            });
        }
        let state = Self {
            registers,
            amplitudes,
            normalization,
        };
        if normalization == Normalization::Normalized {
            let norm = state.norm();
            if (norm - 1.0).abs() > NORM_TOLERANCE {
                return Err(Error::NotNormalized(norm));
            }
        }
        Ok(state)
    }

    /// Single-register state proportional to `samples`.
    pub fn normalized_from(name: &str, samples: &[Complex64]) -> Result<Self> {
        let n = samples.len();
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(n));
        }
        let norm = l2_norm(samples);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        let amplitudes = samples.iter().map(|a| a / norm).collect();
        Ok(Self {
            registers: vec![Register::new(name, n.trailing_zeros() as usize)],
            amplitudes,
            normalization: Normalization::Normalized,
        })
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    pub fn set_normalization(&mut self, normalization: Normalization) {
        self.normalization = normalization;
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn total_qubits(&self) -> usize {
        total_qubits(&self.registers)
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amplitudes)
    }

    /// Rescales to unit norm and marks the state normalized.
    pub fn renormalize(&mut self) -> Result<f64> {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroVector);
        }
        let inv = 1.0 / norm;
        par::for_each_indexed(&mut self.amplitudes, |_, a| *a *= inv);
        self.normalization = Normalization::Normalized;
        Ok(norm)
    }

    pub fn layout(&self, register: &str) -> Result<RegisterLayout> {
        let pos = self
            .registers
            .iter()
            .position(|r| r.name == register)
            .ok_or_else(|| Error::UnknownRegister(register.to_string()))?;
        let later: usize = self.registers[pos + 1..].iter().map(|r| r.qubits).sum();
        let earlier: usize = self.registers[..pos].iter().map(|r| r.qubits).sum();
        let qubits = self.registers[pos].qubits;
        Ok(RegisterLayout {
            qubits,
            dim: 1 << qubits,
            stride: 1 << later,
            outer: 1 << earlier,
            bit_offset: later,
        })
    }

    /// Appends a register initialised to `|0…0⟩`.
    pub fn with_register(self, register: Register) -> Result<Self> {
        if self.registers.iter().any(|r| r.name == register.name) {
            return Err(Error::DuplicateRegister(register.name));
        }
        let dim = register.dim();
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); self.amplitudes.len() * dim];
        for (i, a) in self.amplitudes.iter().enumerate() {
            amplitudes[i * dim] = *a;
        }
        let mut registers = self.registers;
        registers.push(register);
        Ok(Self {
            registers,
            amplitudes,
            normalization: self.normalization,
        })
    }

    /// Inner product `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }
}

/// Real eigenvalues of a diagonal operator on one register, indexed by register value.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalGenerator {
    pub eigenvalues: Vec<f64>,
}

impl DiagonalGenerator {
    pub fn new(eigenvalues: Vec<f64>) -> Result<Self> {
        let n = eigenvalues.len();
        if n == 0 || !n.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(n));
        }
        if let Some(bad) = eigenvalues.iter().find(|v| !v.is_finite()) {
            return Err(crate::error::invalid(format!(
                "non-finite eigenvalue {bad}"
            )));
        }
        Ok(Self { eigenvalues })
    }

    pub fn qubits(&self) -> usize {
        self.eigenvalues.len().trailing_zeros() as usize
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn is_positive_semidefinite(&self) -> bool {
        self.min_eigenvalue() >= 0.0
    }
}

pub(crate) fn l2_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn total_qubits(registers: &[Register]) -> usize {
    registers.iter().map(|r| r.qubits).sum()
}

fn check_names(registers: &[Register]) -> Result<()> {
    for (i, r) in registers.iter().enumerate() {
        if registers[..i].iter().any(|o| o.name == r.name) {
            return Err(Error::DuplicateRegister(r.name.clone()));
        }
    }
    Ok(())
}
