//! Dense statevector simulation with the gate set needed by the LCU circuits.

mod diagonal_circuit;
mod gates;
mod state;

pub use diagonal_circuit::{DiagonalCircuit, GateCount, QubitRef, ZPhaseGate};
pub use gates::{
    apply_controlled_phase, apply_diagonal_phase, apply_diagonal_scaling, apply_qft, apply_z,
    for_each_fiber, project_zero_ancilla,
};
pub use state::{DiagonalGenerator, Normalization, QuantumState, Register, RegisterLayout};

/// Absolute tolerance on the norm of states flagged [`Normalization::Normalized`].
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Below this post-selection probability the projection is reported as impossible.
pub const MIN_SUCCESS_PROBABILITY: f64 = 1e-300;
