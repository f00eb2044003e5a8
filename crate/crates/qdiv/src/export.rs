//! QASM-2.0-style text export: one gate per line. Zero-polarity controls
//! are spelled out with surrounding `x` lines, a multi-target CNOT becomes
//! one `cx` per target, and AND gadgets are pre-expanded to their
//! Clifford+T realizations (the uncompute keeps its measurement and
//! classically controlled fix-up as explicit lines).

use std::fmt::Write;

use crate::circuit::{Circuit, Gate, Polarity};
use crate::lowering::and_compute_template;

pub fn to_qasm(circuit: &Circuit) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "OPENQASM 2.0;");
    let _ = writeln!(out, "include \"qelib1.inc\";");
    let _ = writeln!(out, "qreg q[{}];", circuit.qubit_count());
    let uncomputes = circuit
        .gates()
        .iter()
        .filter(|g| matches!(g, Gate::AndUncompute { .. }))
        .count();
    if uncomputes > 0 {
        let _ = writeln!(out, "creg m[{uncomputes}];");
    }
    for (name, qs) in circuit.registers() {
        let idx: Vec<String> = qs.iter().map(|q| q.0.to_string()).collect();
        let _ = writeln!(out, "// register {name}: [{}]", idx.join(","));
    }
    let mut measure_idx = 0usize;
    for gate in circuit.gates() {
        emit_gate(&mut out, gate, &mut measure_idx);
    }
    out
}

fn emit_gate(out: &mut String, gate: &Gate, measure_idx: &mut usize) {
    match gate {
        Gate::X(q) => push(out, &format!("x q[{}];", q.0)),
        Gate::H(q) => push(out, &format!("h q[{}];", q.0)),
        Gate::S(q) => push(out, &format!("s q[{}];", q.0)),
        Gate::Sdg(q) => push(out, &format!("sdg q[{}];", q.0)),
        Gate::T(q) => push(out, &format!("t q[{}];", q.0)),
        Gate::Tdg(q) => push(out, &format!("tdg q[{}];", q.0)),
        Gate::Z(q) => push(out, &format!("z q[{}];", q.0)),
        Gate::Cz(a, b) => push(out, &format!("cz q[{}],q[{}];", a.0, b.0)),
        Gate::Cnot { control, target } => {
            push(out, &format!("cx q[{}],q[{}];", control.0, target.0))
        }
        Gate::MultiCnot { control, targets } => {
            for t in targets {
                push(out, &format!("cx q[{}],q[{}];", control.0, t.0));
            }
        }
        Gate::Toffoli { controls, target } => {
            let zeros: Vec<u32> = controls
                .iter()
                .filter(|(_, p)| *p == Polarity::Zero)
                .map(|(q, _)| q.0)
                .collect();
            for q in &zeros {
                push(out, &format!("x q[{q}];"));
            }
            push(
                out,
                &format!(
                    "ccx q[{}],q[{}],q[{}];",
                    controls[0].0 .0, controls[1].0 .0, target.0
                ),
            );
            for q in &zeros {
                push(out, &format!("x q[{q}];"));
            }
        }
        Gate::AndCompute { controls, target } => {
            for g in and_compute_template(controls[0], controls[1], *target) {
                emit_gate(out, &g, measure_idx);
            }
        }
        Gate::AndUncompute { controls, target } => {
            push(out, &format!("h q[{}];", target.0));
            push(out, &format!("measure q[{}] -> m[{}];", target.0, measure_idx));
            push(
                out,
                &format!(
                    "if (m[{}]==1) cz q[{}],q[{}];",
                    measure_idx, controls[0].0, controls[1].0
                ),
            );
            *measure_idx += 1;
        }
    }
}

fn push(out: &mut String, line: &str) {
    out.push_str(line);
    out.push('\n');
}
