//! Gate-level realisation of diagonal unitaries as products of Pauli-Z phase rotations.
//!
//! With `k = r - N/2` for register value `r` and `Z_b` acting on bit `b` (counted from
//! the least significant bit), `k = -1/2 - Σ_b 2^{b-1} Z_b`. Squaring gives
//! `k² = c0 + Σ_b 2^{b-1} Z_b + Σ_{b<b'} 2^{b+b'-1} Z_b Z_b'` with `c0 = 1/4 + Σ_b 4^{b-1}`,
//! so quadratic phases need `O(n²)` rotations and linear phases `O(n)`.

use num_complex::Complex64;

use super::state::QuantumState;
use crate::error::{invalid, Result};
use crate::par;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitRef {
    pub register: String,
    /// Counted from the least significant bit of the register.
    pub bit: usize,
}

impl QubitRef {
    pub fn new(register: impl Into<String>, bit: usize) -> Self {
        Self {
            register: register.into(),
            bit,
        }
    }
}

/// `exp(i·angle·Π_t Z_t)`, optionally conditioned on a control qubit being `|1⟩`.
/// With no targets the gate is a (controlled) global phase.
#[derive(Debug, Clone, PartialEq)]
pub struct ZPhaseGate {
    pub control: Option<QubitRef>,
    pub targets: Vec<QubitRef>,
    pub angle: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GateCount {
    pub controlled: usize,
    pub uncontrolled: usize,
    /// Largest number of Z factors in one gate.
    pub max_weight: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DiagonalCircuit {
    pub gates: Vec<ZPhaseGate>,
}

impl DiagonalCircuit {
    pub fn new() -> Self {
        Self::default()
    }

    /// `e^{i·scale·k²}` on an `n`-qubit register, `k = r - N/2`.
    pub fn quadratic_phase(register: &str, n: usize, scale: f64) -> Self {
        let c0 = 0.25 + (0..n).map(|b| 4f64.powi(b as i32 - 1)).sum::<f64>();
        let mut gates = vec![ZPhaseGate {
            control: None,
            targets: vec![],
            angle: scale * c0,
        }];
        for b in 0..n {
            gates.push(ZPhaseGate {
                control: None,
                targets: vec![QubitRef::new(register, b)],
                angle: scale * 2f64.powi(b as i32 - 1),
            });
        }
        for b in 0..n {
            for b2 in b + 1..n {
                gates.push(ZPhaseGate {
                    control: None,
                    targets: vec![QubitRef::new(register, b), QubitRef::new(register, b2)],
                    angle: scale * 2f64.powi((b + b2) as i32 - 1),
                });
            }
        }
        Self { gates }
    }

    /// `e^{i·scale·k}` on an `n`-qubit register, `k = r - N/2`.
    pub fn linear_phase(register: &str, n: usize, scale: f64) -> Self {
        let mut gates = vec![ZPhaseGate {
            control: None,
            targets: vec![],
            angle: -0.5 * scale,
        }];
        for b in 0..n {
            gates.push(ZPhaseGate {
                control: None,
                targets: vec![QubitRef::new(register, b)],
                angle: -scale * 2f64.powi(b as i32 - 1),
            });
        }
        Self { gates }
    }

    /// Select stage of the LCU for `U = e^{i·unit·k²}`: `U^{-M/2}` followed by
    /// `U^{2^j}` controlled on ancilla bit `j`, so the ancilla value `a` yields `U^{a-M/2}`.
    pub fn lcu_select(system: &str, n: usize, ancilla: &str, m: usize, unit: f64) -> Self {
        let half = (1u64 << m) as f64 / 2.0;
        let mut circuit = Self::quadratic_phase(system, n, -half * unit);
        for j in 0..m {
            let power = (1u64 << j) as f64;
            circuit.append(
                Self::quadratic_phase(system, n, power * unit)
                    .controlled(QubitRef::new(ancilla, j)),
            );
        }
        circuit
    }

    /// Puts every gate under `control`. Gates that already carry a control are kept as is.
    pub fn controlled(mut self, control: QubitRef) -> Self {
        for g in &mut self.gates {
            if g.control.is_none() {
                g.control = Some(control.clone());
            }
        }
        self
    }

    pub fn append(&mut self, other: DiagonalCircuit) {
        self.gates.extend(other.gates);
    }

    pub fn gate_count(&self) -> GateCount {
        let mut count = GateCount::default();
        for g in &self.gates {
            if g.control.is_some() {
                count.controlled += 1;
            } else {
                count.uncontrolled += 1;
            }
            count.max_weight = count.max_weight.max(g.targets.len());
        }
        count
    }

    /// Applies all gates; diagonal gates commute, so they are accumulated per basis index.
    pub fn apply(&self, state: &mut QuantumState) -> Result<()> {
        let mut compiled = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let mut target_mask = 0usize;
            for t in &g.targets {
                target_mask |= global_mask(state, t)?;
            }
            let control_mask = match &g.control {
                Some(c) => global_mask(state, c)?,
                None => 0,
            };
            compiled.push((control_mask, target_mask, g.angle));
        }
        par::for_each_indexed(state.amplitudes_mut(), |i, a| {
            let mut angle = 0.0;
            for &(cm, tm, theta) in &compiled {
                if i & cm != cm {
                    continue;
                }
                if (i & tm).count_ones() % 2 == 0 {
                    angle += theta;
                } else {
                    angle -= theta;
                }
            }
            *a *= Complex64::cis(angle);
        });
        Ok(())
    }
}

fn global_mask(state: &QuantumState, q: &QubitRef) -> Result<usize> {
    let layout = state.layout(&q.register)?;
    if q.bit >= layout.qubits {
        return Err(invalid(format!(
            "bit {} outside {}-qubit register `{}`",
            q.bit, layout.qubits, q.register
        )));
    }
    Ok(1usize << (layout.bit_offset + q.bit))
}
