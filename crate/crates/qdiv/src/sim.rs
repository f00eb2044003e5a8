//! Computational-basis simulation of classical reversible circuits.
//!
//! Gates admitted here permute basis states, so a state is a plain bit
//! vector. The AND-uncompute gadget is measurement-based in hardware, but on
//! basis inputs its effect is a deterministic clear of the target; the
//! contract (target holds the conjunction of the controls) is asserted so
//! that builder bugs surface as hard errors rather than silent corruption.

use thiserror::Error;

use crate::circuit::{Circuit, Gate, Polarity, QubitId, QubitRole};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisState {
    bits: u64,
    len: u32,
}

impl BasisState {
    pub fn zeros(len: u32) -> BasisState {
        assert!(len <= 64, "basis simulation supports at most 64 qubits");
        BasisState { bits: 0, len }
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bit(&self, q: QubitId) -> bool {
        (self.bits >> q.0) & 1 == 1
    }

    pub fn set_bit(&mut self, q: QubitId, value: bool) {
        if value {
            self.bits |= 1 << q.0;
        } else {
            self.bits &= !(1 << q.0);
        }
    }

    fn flip(&mut self, q: QubitId) {
        self.bits ^= 1 << q.0;
    }

    pub fn as_bits(&self) -> u64 {
        self.bits
    }

    pub fn from_bits(bits: u64, len: u32) -> BasisState {
        assert!(len <= 64);
        let mask = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        BasisState { bits: bits & mask, len }
    }

    /// Writes an unsigned integer into a register, least significant bit at
    /// index 0 of the qubit list.
    pub fn write_register(&mut self, qubits: &[QubitId], value: u64) {
        for (i, &q) in qubits.iter().enumerate() {
            self.set_bit(q, (value >> i) & 1 == 1);
        }
    }

    pub fn read_register(&self, qubits: &[QubitId]) -> u64 {
        let mut value = 0u64;
        for (i, &q) in qubits.iter().enumerate() {
            if self.bit(q) {
                value |= 1 << i;
            }
        }
        value
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("gate {0} has no classical action on basis states")]
    NonClassicalGate(String),
    #[error("AND gadget contract violated at gate {gate}: {reason}")]
    AndContractViolated { gate: usize, reason: String },
    #[error("state length {state} does not match circuit qubit count {circuit}")]
    LengthMismatch { state: u32, circuit: u32 },
    #[error("circuit has {0} qubits; basis simulation supports at most 64")]
    TooManyQubits(u32),
}

/// Applies the circuit to a basis state.
pub fn simulate(circuit: &Circuit, input: BasisState) -> Result<BasisState, SimError> {
    if circuit.qubit_count() > 64 {
        return Err(SimError::TooManyQubits(circuit.qubit_count()));
    }
    if input.len() != circuit.qubit_count() {
        return Err(SimError::LengthMismatch {
            state: input.len(),
            circuit: circuit.qubit_count(),
        });
    }
    let mut state = input;
    for (i, gate) in circuit.gates().iter().enumerate() {
        match gate {
            Gate::X(q) => state.flip(*q),
            Gate::Cnot { control, target } => {
                if state.bit(*control) {
                    state.flip(*target);
                }
            }
            Gate::MultiCnot { control, targets } => {
                if state.bit(*control) {
                    for t in targets {
                        state.flip(*t);
                    }
                }
            }
            Gate::Toffoli { controls, target } => {
                let fires = controls.iter().all(|(q, pol)| match pol {
                    Polarity::One => state.bit(*q),
                    Polarity::Zero => !state.bit(*q),
                });
                if fires {
                    state.flip(*target);
                }
            }
            Gate::AndCompute { controls, target } => {
                if state.bit(*target) {
                    return Err(SimError::AndContractViolated {
                        gate: i,
                        reason: "compute target not |0>".into(),
                    });
                }
                if state.bit(controls[0]) && state.bit(controls[1]) {
                    state.flip(*target);
                }
            }
            Gate::AndUncompute { controls, target } => {
                let expected = state.bit(controls[0]) && state.bit(controls[1]);
                if state.bit(*target) != expected {
                    return Err(SimError::AndContractViolated {
                        gate: i,
                        reason: "uncompute target does not hold the conjunction".into(),
                    });
                }
                state.set_bit(*target, false);
            }
            other => {
                return Err(SimError::NonClassicalGate(format!("{other:?}")));
            }
        }
    }
    Ok(state)
}

/// True when every ancilla qubit returns to its declared initial value.
/// Inputs are expected to assign ancillas those declared values.
pub fn check_ancilla_restoration(circuit: &Circuit, input: BasisState) -> Result<bool, SimError> {
    let output = simulate(circuit, input)?;
    for (i, role) in circuit.roles().iter().enumerate() {
        if *role == QubitRole::Ancilla {
            let q = QubitId(i as u32);
            if output.bit(q) != circuit.initial_ancilla_value(q) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
