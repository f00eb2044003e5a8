//! Circuit intermediate representation: gates over indexed qubits with role
//! and register bookkeeping.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index into a circuit's qubit table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct QubitId(pub u32);

impl QubitId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q[{}]", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QubitRole {
    Input,
    Output,
    Ancilla,
    Garbage,
}

/// Control polarity: a `Zero` control fires when the qubit is |0>.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Polarity {
    Zero,
    One,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gate {
    X(QubitId),
    H(QubitId),
    S(QubitId),
    Sdg(QubitId),
    T(QubitId),
    Tdg(QubitId),
    Z(QubitId),
    Cz(QubitId, QubitId),
    Cnot {
        control: QubitId,
        target: QubitId,
    },
    /// One control fanned out onto several targets. Counts as one CNOT per
    /// target but occupies a single depth layer.
    MultiCnot {
        control: QubitId,
        targets: Vec<QubitId>,
    },
    Toffoli {
        controls: [(QubitId, Polarity); 2],
        target: QubitId,
    },
    /// Computes the conjunction of the two controls into a fresh |0> target.
    AndCompute {
        controls: [QubitId; 2],
        target: QubitId,
    },
    /// Measurement-based erasure of a previously computed conjunction.
    AndUncompute {
        controls: [QubitId; 2],
        target: QubitId,
    },
}

impl Gate {
    pub fn toffoli(c1: QubitId, c2: QubitId, target: QubitId) -> Gate {
        Gate::Toffoli {
            controls: [(c1, Polarity::One), (c2, Polarity::One)],
            target,
        }
    }

    /// Toffoli whose first control fires on |0>.
    pub fn toffoli_zero_first(c1: QubitId, c2: QubitId, target: QubitId) -> Gate {
        Gate::Toffoli {
            controls: [(c1, Polarity::Zero), (c2, Polarity::One)],
            target,
        }
    }

    pub fn cnot(control: QubitId, target: QubitId) -> Gate {
        Gate::Cnot { control, target }
    }

    /// All qubits the gate touches, controls first.
    pub fn qubits(&self) -> Vec<QubitId> {
        match self {
            Gate::X(q) | Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::T(q) | Gate::Tdg(q)
            | Gate::Z(q) => vec![*q],
            Gate::Cz(a, b) => vec![*a, *b],
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::MultiCnot { control, targets } => {
                let mut v = vec![*control];
                v.extend_from_slice(targets);
                v
            }
            Gate::Toffoli { controls, target } => {
                vec![controls[0].0, controls[1].0, *target]
            }
            Gate::AndCompute { controls, target } | Gate::AndUncompute { controls, target } => {
                vec![controls[0], controls[1], *target]
            }
        }
    }

    fn has_internal_clash(&self) -> bool {
        let qs = self.qubits();
        for (i, a) in qs.iter().enumerate() {
            if qs[i + 1..].contains(a) {
                return true;
            }
        }
        false
    }

    pub fn is_toffoli(&self) -> bool {
        matches!(self, Gate::Toffoli { .. })
    }
}

/// Register names mapped to ordered qubit lists; index 0 holds the least
/// significant bit.
pub type RegisterMap = BTreeMap<String, Vec<QubitId>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("gate references qubit {qubit} but the circuit has {count} qubits")]
    InvalidQubit { qubit: u32, count: u32 },
    #[error("malformed gate: {0}")]
    MalformedGate(String),
    #[error("register {0} is not defined")]
    MissingRegister(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    QubitOutOfRange { gate: usize, qubit: u32 },
    MalformedGate { gate: usize, reason: String },
    UnpairedAndUncompute { gate: usize },
    ReversibleFlagWithUncompute,
    RoleTableLength,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    qubit_count: u32,
    roles: Vec<QubitRole>,
    initial_ancilla_values: Vec<bool>,
    gates: Vec<Gate>,
    registers: RegisterMap,
    fully_reversible: bool,
}

impl Circuit {
    pub fn new(qubit_count: u32) -> Circuit {
        Circuit {
            qubit_count,
            roles: vec![QubitRole::Input; qubit_count as usize],
            initial_ancilla_values: vec![false; qubit_count as usize],
            gates: Vec::new(),
            registers: RegisterMap::new(),
            fully_reversible: true,
        }
    }

    pub fn qubit_count(&self) -> u32 {
        self.qubit_count
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn roles(&self) -> &[QubitRole] {
        &self.roles
    }

    pub fn registers(&self) -> &RegisterMap {
        &self.registers
    }

    pub fn fully_reversible(&self) -> bool {
        self.fully_reversible
    }

    pub fn initial_ancilla_value(&self, q: QubitId) -> bool {
        self.initial_ancilla_values[q.index()]
    }

    /// Declares a non-zero initial value for an ancilla qubit.
    pub fn set_initial_ancilla_value(&mut self, q: QubitId, value: bool) {
        self.initial_ancilla_values[q.index()] = value;
    }

    pub fn set_role(&mut self, q: QubitId, role: QubitRole) {
        self.roles[q.index()] = role;
    }

    pub fn set_roles(&mut self, qubits: &[QubitId], role: QubitRole) {
        for &q in qubits {
            self.set_role(q, role);
        }
    }

    pub fn add_register(&mut self, name: &str, qubits: Vec<QubitId>) {
        self.registers.insert(name.to_string(), qubits);
    }

    pub fn register(&self, name: &str) -> Result<&[QubitId], CircuitError> {
        self.registers
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| CircuitError::MissingRegister(name.to_string()))
    }

    fn check_gate(&self, gate: &Gate) -> Result<(), CircuitError> {
        for q in gate.qubits() {
            if q.0 >= self.qubit_count {
                return Err(CircuitError::InvalidQubit {
                    qubit: q.0,
                    count: self.qubit_count,
                });
            }
        }
        if gate.has_internal_clash() {
            return Err(CircuitError::MalformedGate(format!(
                "duplicate qubit within gate {gate:?}"
            )));
        }
        if let Gate::MultiCnot { targets, .. } = gate {
            if targets.is_empty() {
                return Err(CircuitError::MalformedGate(
                    "multi-target CNOT with no targets".into(),
                ));
            }
        }
        Ok(())
    }

    /// Appends one gate, enforcing qubit range and gate-local invariants.
    pub fn append(&mut self, gate: Gate) -> Result<(), CircuitError> {
        self.check_gate(&gate)?;
        if matches!(gate, Gate::AndUncompute { .. }) {
            self.fully_reversible = false;
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn append_all<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> Result<(), CircuitError> {
        for g in gates {
            self.append(g)?;
        }
        Ok(())
    }

    /// Structural audit. Returns an empty list when every invariant holds.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        if self.roles.len() != self.qubit_count as usize {
            violations.push(Violation::RoleTableLength);
        }
        // AND pairing: an uncompute must consume a live compute on the same
        // target.
        let mut live_and: Vec<bool> = vec![false; self.qubit_count as usize];
        for (i, gate) in self.gates.iter().enumerate() {
            for q in gate.qubits() {
                if q.0 >= self.qubit_count {
                    violations.push(Violation::QubitOutOfRange { gate: i, qubit: q.0 });
                }
            }
            if gate.has_internal_clash() {
                violations.push(Violation::MalformedGate {
                    gate: i,
                    reason: "duplicate qubit".into(),
                });
            }
            match gate {
                Gate::AndCompute { target, .. } => {
                    if target.index() < live_and.len() {
                        live_and[target.index()] = true;
                    }
                }
                Gate::AndUncompute { target, .. } => {
                    if target.index() >= live_and.len() || !live_and[target.index()] {
                        violations.push(Violation::UnpairedAndUncompute { gate: i });
                    } else {
                        live_and[target.index()] = false;
                    }
                }
                _ => {}
            }
        }
        if self.fully_reversible
            && self.gates.iter().any(|g| matches!(g, Gate::AndUncompute { .. }))
        {
            violations.push(Violation::ReversibleFlagWithUncompute);
        }
        violations
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn append_to_empty() {
        let mut c = Circuit::new(1);
        c.append(Gate::X(QubitId(0))).unwrap();
        assert_eq!(c.gates().len(), 1);
    }

    #[test]
    fn overlapping_toffoli_rejected() {
        let mut c = Circuit::new(8);
        let err = c
            .append(Gate::toffoli(QubitId(5), QubitId(6), QubitId(5)))
            .unwrap_err();
        assert!(matches!(err, CircuitError::MalformedGate(_)));
    }

    #[test]
    fn out_of_range_rejected() {
        let mut c = Circuit::new(2);
        let err = c.append(Gate::cnot(QubitId(3), QubitId(0))).unwrap_err();
        assert_eq!(
            err,
            CircuitError::InvalidQubit { qubit: 3, count: 2 }
        );
    }

    #[test]
    fn empty_circuit_validates() {
        assert!(Circuit::new(0).validate().is_empty());
    }

    #[test]
    fn unpaired_uncompute_flagged() {
        let mut c = Circuit::new(3);
        c.append(Gate::AndUncompute {
            controls: [QubitId(0), QubitId(1)],
            target: QubitId(2),
        })
        .unwrap();
        assert!(c
            .validate()
            .iter()
            .any(|v| matches!(v, Violation::UnpairedAndUncompute { gate: 0 })));
        assert!(!c.fully_reversible());
    }

    #[test]
    fn paired_and_validates() {
        let mut c = Circuit::new(3);
        c.append(Gate::AndCompute {
            controls: [QubitId(0), QubitId(1)],
            target: QubitId(2),
        })
        .unwrap();
        c.append(Gate::AndUncompute {
            controls: [QubitId(0), QubitId(1)],
            target: QubitId(2),
        })
        .unwrap();
        assert!(c.validate().is_empty());
    }
}
