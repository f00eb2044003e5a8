//! Lowering from the Clifford+Toffoli level to Clifford+T.
//!
//! Zero-polarity controls are rewritten by X conjugation, adjacent X pairs
//! on the same line are cancelled, and each Toffoli expands to the seven-T
//! circuit. The paired strategy fuses consecutive Toffolis that share a
//! control (as controls) or a target (as targets): the leading T gates on
//! the shared line combine into one S gate, so a fused pair costs twelve T
//! gates. AND gadgets optionally expand to their Clifford+T realization;
//! the measurement-based uncompute stays atomic at the gate level and is
//! spelled out only in the text export.

use thiserror::Error;

use crate::circuit::{Circuit, Gate, Polarity, QubitId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoweringStrategy {
    Naive7T,
    Paired12T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoweringOptions {
    pub strategy: LoweringStrategy,
    pub expand_and_gadgets: bool,
}

impl Default for LoweringOptions {
    fn default() -> Self {
        LoweringOptions {
            strategy: LoweringStrategy::Paired12T,
            expand_and_gadgets: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum LowerError {
    #[error("circuit already contains Clifford+T gates")]
    AlreadyLowered,
}

/// What replaces the leading T on the merge line of a fused pair.
#[derive(Clone, Copy)]
enum Lead {
    T,
    S,
    Skip,
}

fn lead_gate(lead: Lead, q: QubitId) -> Option<Gate> {
    match lead {
        Lead::T => Some(Gate::T(q)),
        Lead::S => Some(Gate::S(q)),
        Lead::Skip => None,
    }
}

/// Diagonal core of the seven-T circuit (the Toffoli without the target
/// Hadamards). `lead_c1` and `lead_t` control the first T on the first
/// control line and on the target line.
fn ccz_core(c1: QubitId, c2: QubitId, t: QubitId, lead_c1: Lead, lead_t: Lead) -> Vec<Gate> {
    let mut g = Vec::with_capacity(14);
    g.extend(lead_gate(lead_c1, c1));
    g.push(Gate::T(c2));
    g.extend(lead_gate(lead_t, t));
    g.extend([
        Gate::cnot(c2, c1),
        Gate::cnot(t, c2),
        Gate::cnot(c1, t),
        Gate::Tdg(c2),
        Gate::cnot(c1, c2),
        Gate::Tdg(c1),
        Gate::Tdg(c2),
        Gate::T(t),
        Gate::cnot(t, c2),
        Gate::cnot(c1, t),
        Gate::cnot(c2, c1),
    ]);
    g
}

fn toffoli_7t(c1: QubitId, c2: QubitId, t: QubitId, lead_c1: Lead) -> Vec<Gate> {
    let mut g = vec![Gate::H(t)];
    g.extend(ccz_core(c1, c2, t, lead_c1, Lead::T));
    g.push(Gate::H(t));
    g
}

/// Twelve-T circuit for two Toffolis sharing the control `shared`: the
/// leading T gates on the shared line combine into one S.
fn pair_shared_control(
    shared: QubitId,
    o1: QubitId,
    t1: QubitId,
    o2: QubitId,
    t2: QubitId,
) -> Vec<Gate> {
    let mut g = toffoli_7t(shared, o1, t1, Lead::S);
    g.extend(toffoli_7t(shared, o2, t2, Lead::Skip));
    g
}

/// Twelve-T circuit for two Toffolis sharing the target: the inner Hadamard
/// pair cancels and the leading target-line T gates combine into one S.
fn pair_shared_target(
    a1: QubitId,
    a2: QubitId,
    b1: QubitId,
    b2: QubitId,
    t: QubitId,
) -> Vec<Gate> {
    let mut g = vec![Gate::H(t)];
    g.extend(ccz_core(a1, a2, t, Lead::T, Lead::S));
    g.extend(ccz_core(b1, b2, t, Lead::T, Lead::Skip));
    g.push(Gate::H(t));
    g
}

/// Clifford+T realization of the AND-compute gadget, with the magic-state
/// line prepared from |0> on the target qubit.
pub fn and_compute_template(c1: QubitId, c2: QubitId, t: QubitId) -> Vec<Gate> {
    vec![
        Gate::H(t),
        Gate::T(t),
        Gate::cnot(c1, t),
        Gate::cnot(c2, t),
        Gate::MultiCnot {
            control: t,
            targets: vec![c1, c2],
        },
        Gate::Tdg(c1),
        Gate::Tdg(c2),
        Gate::T(t),
        Gate::MultiCnot {
            control: t,
            targets: vec![c1, c2],
        },
        Gate::H(t),
        Gate::S(t),
    ]
}

fn normalize_zero_controls(gates: &[Gate]) -> Vec<Gate> {
    let mut out = Vec::with_capacity(gates.len());
    for gate in gates {
        match gate {
            Gate::Toffoli { controls, target } => {
                let flips: Vec<QubitId> = controls
                    .iter()
                    .filter(|(_, p)| *p == Polarity::Zero)
                    .map(|(q, _)| *q)
                    .collect();
                for q in &flips {
                    out.push(Gate::X(*q));
                }
                out.push(Gate::toffoli(controls[0].0, controls[1].0, *target));
                for q in &flips {
                    out.push(Gate::X(*q));
                }
            }
            other => out.push(other.clone()),
        }
    }
    out
}

/// Cancels X pairs on the same qubit separated only by gates that do not
/// touch that qubit.
fn cancel_adjacent_x(gates: Vec<Gate>) -> Vec<Gate> {
    let mut keep: Vec<bool> = vec![true; gates.len()];
    let mut pending: Vec<Option<usize>> = Vec::new();
    let qmax = gates
        .iter()
        .flat_map(|g| g.qubits())
        .map(|q| q.index() + 1)
        .max()
        .unwrap_or(0);
    pending.resize(qmax, None);
    for (i, gate) in gates.iter().enumerate() {
        if let Gate::X(q) = gate {
            if let Some(j) = pending[q.index()].take() {
                keep[i] = false;
                keep[j] = false;
            } else {
                pending[q.index()] = Some(i);
            }
        } else {
            for q in gate.qubits() {
                pending[q.index()] = None;
            }
        }
    }
    gates
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect()
}

fn shared_control(g1: &Gate, g2: &Gate) -> Option<(QubitId, QubitId, QubitId, QubitId, QubitId)> {
    if let (
        Gate::Toffoli {
            controls: c1,
            target: t1,
        },
        Gate::Toffoli {
            controls: c2,
            target: t2,
        },
    ) = (g1, g2)
    {
        for (qa, _) in c1 {
            for (qb, _) in c2 {
                if qa == qb {
                    let o1 = if c1[0].0 == *qa { c1[1].0 } else { c1[0].0 };
                    let o2 = if c2[0].0 == *qb { c2[1].0 } else { c2[0].0 };
                    return Some((*qa, o1, *t1, o2, *t2));
                }
            }
        }
    }
    None
}

fn shared_target(g1: &Gate, g2: &Gate) -> Option<(QubitId, QubitId, QubitId, QubitId, QubitId)> {
    if let (
        Gate::Toffoli {
            controls: c1,
            target: t1,
        },
        Gate::Toffoli {
            controls: c2,
            target: t2,
        },
    ) = (g1, g2)
    {
        if t1 == t2 {
            return Some((c1[0].0, c1[1].0, c2[0].0, c2[1].0, *t1));
        }
    }
    None
}

/// Compiles a Toffoli-level circuit to the Clifford+T gate set.
pub fn lower(circuit: &Circuit, options: LoweringOptions) -> Result<Circuit, LowerError> {
    if circuit.gates().iter().any(|g| {
        matches!(
            g,
            Gate::H(_) | Gate::S(_) | Gate::Sdg(_) | Gate::T(_) | Gate::Tdg(_) | Gate::Cz(..)
        )
    }) {
        return Err(LowerError::AlreadyLowered);
    }

    let gates = cancel_adjacent_x(normalize_zero_controls(circuit.gates()));

    let mut out = Circuit::new(circuit.qubit_count());
    for (i, role) in circuit.roles().iter().enumerate() {
        out.set_role(QubitId(i as u32), *role);
    }
    for (name, qs) in circuit.registers() {
        out.add_register(name, qs.clone());
    }

    let mut emitted: Vec<Gate> = Vec::new();
    let mut i = 0;
    while i < gates.len() {
        let gate = &gates[i];
        match gate {
            Gate::Toffoli { controls, target } => {
                if options.strategy == LoweringStrategy::Paired12T && i + 1 < gates.len() {
                    if let Some((shared, o1, t1, o2, t2)) = shared_control(gate, &gates[i + 1]) {
                        emitted.extend(pair_shared_control(shared, o1, t1, o2, t2));
                        i += 2;
                        continue;
                    }
                    if let Some((a1, a2, b1, b2, t)) = shared_target(gate, &gates[i + 1]) {
                        emitted.extend(pair_shared_target(a1, a2, b1, b2, t));
                        i += 2;
                        continue;
                    }
                }
                emitted.extend(toffoli_7t(controls[0].0, controls[1].0, *target, Lead::T));
            }
            Gate::AndCompute { controls, target } if options.expand_and_gadgets => {
                emitted.extend(and_compute_template(controls[0], controls[1], *target));
            }
            other => emitted.push(other.clone()),
        }
        i += 1;
    }
    out.append_all(emitted).expect("lowered gates reference valid qubits");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{count_resources, CountLevel};

    fn q(i: u32) -> QubitId {
        QubitId(i)
    }

    #[test]
    fn naive_lowering_counts() {
        let mut c = Circuit::new(3);
        c.append(Gate::toffoli(q(0), q(1), q(2))).unwrap();
        let lowered = lower(&c, LoweringOptions {
            strategy: LoweringStrategy::Naive7T,
            expand_and_gadgets: false,
        })
        .unwrap();
        let r = count_resources(&lowered, CountLevel::TLevel).unwrap();
        assert_eq!(r.t_count, 7);
        assert_eq!(r.t_depth, 3);
        assert_eq!(r.cnot_count_t_level, 7);
    }

    #[test]
    fn pair_fusion_t_count() {
        let mut c = Circuit::new(5);
        c.append(Gate::toffoli(q(0), q(1), q(2))).unwrap();
        c.append(Gate::toffoli(q(0), q(3), q(4))).unwrap();
        let lowered = lower(&c, LoweringOptions::default()).unwrap();
        let r = count_resources(&lowered, CountLevel::TLevel).unwrap();
        assert_eq!(r.t_count, 12);

        let mut c = Circuit::new(5);
        c.append(Gate::toffoli(q(0), q(1), q(4))).unwrap();
        c.append(Gate::toffoli(q(2), q(3), q(4))).unwrap();
        let lowered = lower(&c, LoweringOptions::default()).unwrap();
        let r = count_resources(&lowered, CountLevel::TLevel).unwrap();
        assert_eq!(r.t_count, 12);
    }

    #[test]
    fn zero_controls_become_x_pairs() {
        let mut c = Circuit::new(3);
        c.append(Gate::toffoli_zero_first(q(0), q(1), q(2))).unwrap();
        let lowered = lower(&c, LoweringOptions {
            strategy: LoweringStrategy::Naive7T,
            expand_and_gadgets: false,
        })
        .unwrap();
        let xs = lowered
            .gates()
            .iter()
            .filter(|g| matches!(g, Gate::X(qq) if *qq == q(0)))
            .count();
        assert_eq!(xs, 2);
    }

    #[test]
    fn x_conjugation_merges_across_a_ladder() {
        // Three Toffolis sharing a zero control produce one X pair, and the
        // now-adjacent Toffolis pair off.
        let mut c = Circuit::new(7);
        c.append(Gate::toffoli_zero_first(q(0), q(1), q(2))).unwrap();
        c.append(Gate::toffoli_zero_first(q(0), q(3), q(4))).unwrap();
        c.append(Gate::toffoli_zero_first(q(0), q(5), q(6))).unwrap();
        let lowered = lower(&c, LoweringOptions::default()).unwrap();
        let xs = lowered
            .gates()
            .iter()
            .filter(|g| matches!(g, Gate::X(_)))
            .count();
        assert_eq!(xs, 2);
        let r = count_resources(&lowered, CountLevel::TLevel).unwrap();
        assert_eq!(r.t_count, 12 + 7);
    }

    #[test]
    fn already_lowered_rejected() {
        let mut c = Circuit::new(1);
        c.append(Gate::T(q(0))).unwrap();
        assert_eq!(lower(&c, LoweringOptions::default()), Err(LowerError::AlreadyLowered));
    }

    #[test]
    fn paired_never_beats_naive_upward() {
        use crate::compnsub::{build_compnsub, CnsVariant};
        for k in 2..=6 {
            let c = build_compnsub(CnsVariant::I, k).unwrap();
            let naive = lower(&c, LoweringOptions {
                strategy: LoweringStrategy::Naive7T,
                expand_and_gadgets: false,
            })
            .unwrap();
            let paired = lower(&c, LoweringOptions::default()).unwrap();
            let tn = count_resources(&naive, CountLevel::TLevel).unwrap().t_count;
            let tp = count_resources(&paired, CountLevel::TLevel).unwrap().t_count;
            assert!(tp <= tn);
            assert_eq!(tp, 19 * u64::from(k) - 5);
            assert_eq!(tn, 7 * (3 * u64::from(k) - 1));
        }
    }
}
