//! Compare-and-subtract builders. On basis input (a, b) the circuit leaves
//! b - a in the minuend register when b >= a (flag qubit 0), otherwise both
//! registers are restored and the flag qubit reads 1. The flag equals the
//! carry-out of the one's-complement sum !b + a.
//!
//! Four constructions trade gate counts against depth: I rides the
//! ripple-carry adder, IIa/IIb the carry-lookahead units (IIb fans the flag
//! out to parallelize the conditional layer), and III replaces the carry
//! Toffolis with temporary logical-AND gadgets.

use crate::adders::{carry_network_gates, flog2, omega, pcell_count, NetworkLayout};
use crate::circuit::{Circuit, Gate, QubitId, QubitRole};
use crate::error::BuildError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CnsVariant {
    I,
    IIa,
    IIb,
    III,
}

impl CnsVariant {
    pub fn min_width(self) -> u32 {
        match self {
            CnsVariant::I | CnsVariant::III => 1,
            CnsVariant::IIa | CnsVariant::IIb => 2,
        }
    }

    /// Work qubits needed by a width-k instance (the flag qubit excluded).
    pub fn work_qubits(self, k: u32) -> u64 {
        let k64 = u64::from(k);
        if k == 1 {
            return 0;
        }
        match self {
            CnsVariant::I => 0,
            CnsVariant::IIa => 2 * k64 - omega(k) - flog2(k) - 1,
            CnsVariant::IIb => 3 * k64 - omega(k) - flog2(k) - 2,
            CnsVariant::III => k64 - 1,
        }
    }

    pub fn fully_reversible(self) -> bool {
        !matches!(self, CnsVariant::III)
    }
}

/// Qubit placement for one compare-and-subtract instance, so that dividers
/// can wire the flag and work qubits anywhere in a larger circuit.
#[derive(Debug, Clone)]
pub struct CnsPlacement {
    /// Register B, k qubits, least significant first.
    pub minuend: Vec<QubitId>,
    /// Register A, k qubits.
    pub subtrahend: Vec<QubitId>,
    /// Flag qubit, must enter as |0>.
    pub high_bit: QubitId,
    /// Work qubits, must enter as |0>; sized per `work_qubits`.
    pub work: Vec<QubitId>,
}

fn check_placement(variant: CnsVariant, k: u32, p: &CnsPlacement) -> Result<(), BuildError> {
    if k < variant.min_width() {
        return Err(BuildError::InvalidWidth {
            width: k,
            min: variant.min_width(),
        });
    }
    if p.minuend.len() != k as usize || p.subtrahend.len() != k as usize {
        return Err(BuildError::PlacementMismatch(format!(
            "expected {k}-qubit registers, got minuend {} / subtrahend {}",
            p.minuend.len(),
            p.subtrahend.len()
        )));
    }
    if p.work.len() as u64 != variant.work_qubits(k) {
        return Err(BuildError::PlacementMismatch(format!(
            "variant {variant:?} at width {k} needs {} work qubits, got {}",
            variant.work_qubits(k),
            p.work.len()
        )));
    }
    let mut seen = Vec::new();
    for q in p
        .minuend
        .iter()
        .chain(p.subtrahend.iter())
        .chain(std::iter::once(&p.high_bit))
        .chain(p.work.iter())
    {
        if seen.contains(q) {
            return Err(BuildError::PlacementMismatch(format!(
                "qubit {q} appears twice in the placement"
            )));
        }
        seen.push(*q);
    }
    Ok(())
}

/// Appends one compare-and-subtract instance to an existing circuit.
pub fn emit_compnsub(
    circuit: &mut Circuit,
    variant: CnsVariant,
    k: u32,
    placement: &CnsPlacement,
) -> Result<(), BuildError> {
    check_placement(variant, k, placement)?;
    let b = &placement.minuend;
    let a = &placement.subtrahend;
    let z = placement.high_bit;
    let w = &placement.work;
    match variant {
        CnsVariant::I => emit_variant_i(circuit, a, b, z)?,
        CnsVariant::IIa => emit_variant_ii(circuit, a, b, z, w, false)?,
        CnsVariant::IIb => emit_variant_ii(circuit, a, b, z, w, true)?,
        CnsVariant::III => emit_variant_iii(circuit, a, b, z, w)?,
    }
    Ok(())
}

/// Standalone circuit with canonical register layout.
pub fn build_compnsub(variant: CnsVariant, k: u32) -> Result<Circuit, BuildError> {
    if k < variant.min_width() {
        return Err(BuildError::InvalidWidth {
            width: k,
            min: variant.min_width(),
        });
    }
    let work_n = variant.work_qubits(k) as u32;
    let mut c = Circuit::new(2 * k + 1 + work_n);
    let a: Vec<QubitId> = (0..k).map(QubitId).collect();
    let b: Vec<QubitId> = (k..2 * k).map(QubitId).collect();
    let z = QubitId(2 * k);
    let work: Vec<QubitId> = (2 * k + 1..2 * k + 1 + work_n).map(QubitId).collect();
    let placement = CnsPlacement {
        minuend: b.clone(),
        subtrahend: a.clone(),
        high_bit: z,
        work: work.clone(),
    };
    emit_compnsub(&mut c, variant, k, &placement)?;
    c.set_role(z, QubitRole::Garbage);
    c.set_roles(&work, QubitRole::Ancilla);
    c.add_register("a", a);
    c.add_register("b", b);
    c.add_register("z", vec![z]);
    c.add_register("work", work);
    Ok(c)
}

/// Degenerate width-1 instance shared by the reversible variants: the flag
/// is the single AND of !b and a, and one conditioned Toffoli finishes.
fn emit_width1(c: &mut Circuit, a: QubitId, b: QubitId, z: QubitId) -> Result<(), BuildError> {
    c.append(Gate::X(b))?;
    c.append(Gate::toffoli(b, a, z))?;
    c.append(Gate::toffoli_zero_first(z, a, b))?;
    c.append(Gate::X(b))?;
    Ok(())
}

fn emit_variant_i(
    c: &mut Circuit,
    a: &[QubitId],
    b: &[QubitId],
    z: QubitId,
) -> Result<(), BuildError> {
    let k = a.len();
    if k == 1 {
        return emit_width1(c, a[0], b[0], z);
    }
    for i in 0..k {
        c.append(Gate::X(b[i]))?;
    }
    for i in 1..k {
        c.append(Gate::cnot(a[i], b[i]))?;
    }
    c.append(Gate::cnot(a[k - 1], z))?;
    for i in (1..k - 1).rev() {
        c.append(Gate::cnot(a[i], a[i + 1]))?;
    }
    for i in 0..k - 1 {
        c.append(Gate::toffoli(b[i], a[i], a[i + 1]))?;
    }
    c.append(Gate::toffoli(b[k - 1], a[k - 1], z))?;
    c.append(Gate::toffoli_zero_first(z, a[k - 1], b[k - 1]))?;
    for i in (0..k - 1).rev() {
        c.append(Gate::toffoli(b[i], a[i], a[i + 1]))?;
        c.append(Gate::toffoli_zero_first(z, a[i], b[i]))?;
    }
    for i in 1..k - 1 {
        c.append(Gate::cnot(a[i], a[i + 1]))?;
    }
    for i in 1..k {
        c.append(Gate::cnot(a[i], b[i]))?;
    }
    for i in 0..k {
        c.append(Gate::X(b[i]))?;
    }
    Ok(())
}

fn emit_variant_ii(
    c: &mut Circuit,
    a: &[QubitId],
    b: &[QubitId],
    z: QubitId,
    work: &[QubitId],
    parallel: bool,
) -> Result<(), BuildError> {
    let k = a.len();
    let (lanes, rest) = work.split_at(k - 1);
    let (cells, copies) = rest.split_at(pcell_count(k as u32) as usize);
    // Generate lanes for carries c_1..c_k; the top lane is the flag qubit.
    let mut generate: Vec<QubitId> = lanes.to_vec();
    generate.push(z);
    let layout = NetworkLayout {
        generate: &generate,
        propagate: b,
        work: cells,
        layout_span: k as u32,
    };

    for i in 0..k {
        c.append(Gate::X(b[i]))?;
    }
    for i in 0..k {
        c.append(Gate::toffoli(a[i], b[i], generate[i]))?;
    }
    for i in 0..k {
        c.append(Gate::cnot(a[i], b[i]))?;
    }
    c.append_all(carry_network_gates(k as u32, &layout))?;
    for i in 1..k {
        c.append(Gate::cnot(generate[i - 1], a[i]))?;
    }
    if parallel {
        c.append(Gate::MultiCnot {
            control: z,
            targets: copies.to_vec(),
        })?;
        for i in (0..k).rev() {
            let ctrl = if i == k - 1 { z } else { copies[i] };
            c.append(Gate::toffoli_zero_first(ctrl, a[i], b[i]))?;
        }
    } else {
        for i in (0..k).rev() {
            c.append(Gate::toffoli_zero_first(z, a[i], b[i]))?;
        }
    }
    for i in 1..k {
        c.append(Gate::cnot(generate[i - 1], a[i]))?;
    }
    if parallel {
        c.append(Gate::X(z))?;
        for i in 0..k - 1 {
            c.append(Gate::X(copies[i]))?;
        }
        c.append(Gate::cnot(z, b[k - 1]))?;
        for i in 0..k - 1 {
            c.append(Gate::cnot(copies[i], b[i]))?;
        }
        c.append(Gate::X(z))?;
        for i in 0..k - 1 {
            c.append(Gate::X(copies[i]))?;
        }
    } else {
        c.append(Gate::X(z))?;
        c.append(Gate::MultiCnot {
            control: z,
            targets: b.to_vec(),
        })?;
        c.append(Gate::X(z))?;
    }
    let mut undo = carry_network_gates(k as u32 - 1, &layout);
    undo.reverse();
    c.append_all(undo)?;
    for i in 0..k {
        c.append(Gate::cnot(a[i], b[i]))?;
    }
    for i in 0..k - 1 {
        c.append(Gate::toffoli(a[i], b[i], generate[i]))?;
    }
    if parallel {
        c.append(Gate::cnot(z, b[k - 1]))?;
        for i in 0..k - 1 {
            c.append(Gate::cnot(copies[i], b[i]))?;
        }
        c.append(Gate::MultiCnot {
            control: z,
            targets: copies.to_vec(),
        })?;
    } else {
        c.append(Gate::MultiCnot {
            control: z,
            targets: b.to_vec(),
        })?;
    }
    Ok(())
}

fn emit_variant_iii(
    c: &mut Circuit,
    a: &[QubitId],
    b: &[QubitId],
    z: QubitId,
    work: &[QubitId],
) -> Result<(), BuildError> {
    let k = a.len();
    if k == 1 {
        c.append(Gate::X(b[0]))?;
        c.append(Gate::AndCompute {
            controls: [b[0], a[0]],
            target: z,
        })?;
        c.append(Gate::toffoli_zero_first(z, a[0], b[0]))?;
        c.append(Gate::X(b[0]))?;
        return Ok(());
    }
    // work holds the k-1 low carry lanes; the flag is the top lane.
    let mut lane: Vec<QubitId> = work.to_vec();
    lane.push(z);

    for i in 0..k {
        c.append(Gate::X(b[i]))?;
    }
    c.append(Gate::AndCompute {
        controls: [b[0], a[0]],
        target: lane[0],
    })?;
    for i in 1..k {
        c.append(Gate::cnot(lane[i - 1], a[i]))?;
        c.append(Gate::cnot(lane[i - 1], b[i]))?;
        c.append(Gate::AndCompute {
            controls: [b[i], a[i]],
            target: lane[i],
        })?;
        c.append(Gate::cnot(lane[i - 1], lane[i]))?;
    }
    c.append(Gate::cnot(lane[k - 2], b[k - 1]))?;
    c.append(Gate::toffoli_zero_first(z, a[k - 1], b[k - 1]))?;
    c.append(Gate::cnot(lane[k - 2], a[k - 1]))?;
    for i in (1..k - 1).rev() {
        c.append(Gate::cnot(lane[i - 1], lane[i]))?;
        c.append(Gate::AndUncompute {
            controls: [b[i], a[i]],
            target: lane[i],
        })?;
        c.append(Gate::cnot(lane[i - 1], b[i]))?;
        c.append(Gate::toffoli_zero_first(z, a[i], b[i]))?;
        c.append(Gate::cnot(lane[i - 1], a[i]))?;
    }
    c.append(Gate::AndUncompute {
        controls: [b[0], a[0]],
        target: lane[0],
    })?;
    c.append(Gate::toffoli_zero_first(z, a[0], b[0]))?;
    for i in 0..k {
        c.append(Gate::X(b[i]))?;
    }
    Ok(())
}
