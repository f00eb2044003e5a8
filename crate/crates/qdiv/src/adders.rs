//! Adder builders: the in-place ripple-carry adder, the carry-lookahead
//! network with its carry compute/uncompute units, and the AND-gadget ripple
//! adder. All adders are in-place: register B ends holding the sum.

use crate::circuit::{Circuit, CircuitError, Gate, QubitId, QubitRole};
use crate::error::BuildError;

/// Number of ones in the binary expansion.
pub fn omega(k: u32) -> u64 {
    u64::from(k.count_ones())
}

/// floor(log2(k)) for k >= 1.
pub fn flog2(k: u32) -> u64 {
    assert!(k >= 1);
    u64::from(31 - k.leading_zeros())
}

/// floor(log2(k/3)) clamped to 0 for k < 3.
pub fn flog2_third(k: u32) -> u64 {
    let mut t = 0u64;
    while 3u64 * (1 << (t + 1)) <= u64::from(k) {
        t += 1;
    }
    if 3 <= u64::from(k) {
        t
    } else {
        0
    }
}

/// Work cells needed by the carry network over `span` positions.
pub fn pcell_count(span: u32) -> u64 {
    if span == 0 {
        return 0;
    }
    let mut total = 0u64;
    let mut t = 1u32;
    while (1u64 << t) <= u64::from(span) {
        total += (u64::from(span) >> t).saturating_sub(1);
        t += 1;
    }
    total
}

/// Toffoli count of the carry network over `span` positions:
/// 4s - 3w(s) - 3 floor(log2 s) - 1, with the empty network at s = 1.
pub fn network_toffoli_count(span: u32) -> u64 {
    if span <= 1 {
        return 0;
    }
    4 * u64::from(span) - 3 * omega(span) - 3 * flog2(span) - 1
}

/// Addressing for the carry network: generate lanes, propagate bits, and the
/// work-cell table laid out for a fixed span.
pub struct NetworkLayout<'a> {
    /// `generate[j-1]` holds the estimate for carry `c_j`, j = 1..=span.
    pub generate: &'a [QubitId],
    /// `propagate[i]` is the propagate bit of position i; positions 1..span
    /// are read, position 0 never is.
    pub propagate: &'a [QubitId],
    /// Work cells, at least `pcell_count(layout_span)` long.
    pub work: &'a [QubitId],
    /// Span the work-cell table is laid out for (>= any span emitted).
    pub layout_span: u32,
}

impl NetworkLayout<'_> {
    fn cell(&self, t: u32, m: u64) -> QubitId {
        let mut offset = 0u64;
        for tp in 1..t {
            offset += (u64::from(self.layout_span) >> tp).saturating_sub(1);
        }
        self.work[(offset + m - 1) as usize]
    }

    fn p(&self, t: u32, i: u64) -> QubitId {
        if t == 0 {
            self.propagate[i as usize]
        } else {
            self.cell(t, i)
        }
    }

    fn g(&self, j: u64) -> QubitId {
        self.generate[(j - 1) as usize]
    }
}

/// Carry network over `span` positions: propagate products up, generates up
/// the tree, carries back down, then the products are uncomputed. On input
/// `generate[j-1] = g_{j-1}` with propagate bits in place, every lane ends as
/// the carry: `generate[j-1] = c_j`.
pub fn carry_network_gates(span: u32, layout: &NetworkLayout) -> Vec<Gate> {
    let mut gates = Vec::new();
    if span <= 1 {
        return gates;
    }
    let s = u64::from(span);
    let logs = flog2(span) as u32;

    let mut p_rounds: Vec<Gate> = Vec::new();
    for t in 1..=logs {
        for m in 1..(s >> t).max(1) {
            p_rounds.push(Gate::toffoli(
                layout.p(t - 1, 2 * m),
                layout.p(t - 1, 2 * m + 1),
                layout.cell(t, m),
            ));
        }
    }
    gates.extend(p_rounds.iter().cloned());

    for t in 1..=logs {
        for m in 0..(s >> t) {
            gates.push(Gate::toffoli(
                layout.g((m << t) + (1 << (t - 1))),
                layout.p(t - 1, 2 * m + 1),
                layout.g((m + 1) << t),
            ));
        }
    }

    // C rounds run top-down; the deepest round index satisfies
    // 3 * 2^(t-1) <= span.
    let mut tmax = 0u32;
    while 3u64 * (1 << tmax) <= s {
        tmax += 1;
    }
    for t in (1..=tmax).rev() {
        for m in 1..=((s - (1 << (t - 1))) >> t) {
            gates.push(Gate::toffoli(
                layout.g(m << t),
                layout.p(t - 1, 2 * m),
                layout.g((m << t) + (1 << (t - 1))),
            ));
        }
    }

    gates.extend(p_rounds.into_iter().rev());
    gates
}

fn alloc(ids: &mut u32, n: u32) -> Vec<QubitId> {
    let start = *ids;
    *ids += n;
    (start..start + n).map(QubitId).collect()
}

/// In-place ripple-carry adder on registers A (k), B (k) and a high-bit
/// qubit Z: maps (a, b, 0) to (a, (a+b) mod 2^k, carry-out).
pub fn build_ripple_adder(k: u32) -> Result<Circuit, BuildError> {
    if k < 1 {
        return Err(BuildError::InvalidWidth { width: k, min: 1 });
    }
    let mut next = 0;
    let a = alloc(&mut next, k);
    let b = alloc(&mut next, k);
    let z = alloc(&mut next, 1)[0];
    let mut c = Circuit::new(next);
    emit_ripple_adder(&mut c, &a, &b, z)?;
    c.set_role(z, QubitRole::Output);
    c.add_register("a", a);
    c.add_register("b", b);
    c.add_register("z", vec![z]);
    Ok(c)
}

pub fn emit_ripple_adder(
    c: &mut Circuit,
    a: &[QubitId],
    b: &[QubitId],
    z: QubitId,
) -> Result<(), CircuitError> {
    let k = a.len();
    assert_eq!(k, b.len());
    if k == 1 {
        c.append(Gate::toffoli(a[0], b[0], z))?;
        c.append(Gate::cnot(a[0], b[0]))?;
        return Ok(());
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
    for i in (1..k).rev() {
        c.append(Gate::cnot(a[i], b[i]))?;
        c.append(Gate::toffoli(b[i - 1], a[i - 1], a[i]))?;
    }
    c.append(Gate::cnot(a[0], b[0]))?;
    for i in 1..k - 1 {
        c.append(Gate::cnot(a[i], a[i + 1]))?;
    }
    for i in 1..k {
        c.append(Gate::cnot(a[i], b[i]))?;
    }
    Ok(())
}

/// Carry-compute unit of the lookahead adder. Input lane conventions follow
/// the carry recurrence: A_i = a_i, B_i = a_i xor !b_i, Z_i = a_i !b_i; after
/// the unit, Z_i = c_{i+1} with all other lanes unchanged and the work cells
/// restored.
pub fn build_qcla_u1(k: u32) -> Result<Circuit, BuildError> {
    if k < 2 {
        return Err(BuildError::InvalidWidth { width: k, min: 2 });
    }
    let mut next = 0;
    let a = alloc(&mut next, k);
    let b = alloc(&mut next, k);
    let z = alloc(&mut next, k);
    let w = alloc(&mut next, pcell_count(k) as u32);
    let mut c = Circuit::new(next);
    let layout = NetworkLayout {
        generate: &z,
        propagate: &b,
        work: &w,
        layout_span: k,
    };
    c.append_all(carry_network_gates(k, &layout))?;
    c.set_roles(&w, QubitRole::Ancilla);
    c.add_register("a", a);
    c.add_register("b", b);
    c.add_register("z", z);
    c.add_register("w", w);
    Ok(c)
}

/// Carry-uncompute unit: the reverse of the network over the low k-1
/// positions, leaving the high carry in Z_{k-1} untouched.
pub fn build_qcla_u2(k: u32) -> Result<Circuit, BuildError> {
    if k < 2 {
        return Err(BuildError::InvalidWidth { width: k, min: 2 });
    }
    let mut next = 0;
    let a = alloc(&mut next, k);
    let b = alloc(&mut next, k);
    let z = alloc(&mut next, k);
    let w = alloc(&mut next, pcell_count(k) as u32);
    let mut c = Circuit::new(next);
    let layout = NetworkLayout {
        generate: &z,
        propagate: &b,
        work: &w,
        layout_span: k,
    };
    let mut gates = carry_network_gates(k - 1, &layout);
    gates.reverse();
    c.append_all(gates)?;
    c.set_roles(&w, QubitRole::Ancilla);
    c.add_register("a", a);
    c.add_register("b", b);
    c.add_register("z", z);
    c.add_register("w", w);
    Ok(c)
}

/// Full in-place carry-lookahead adder with carry-out, same interface as the
/// ripple adder plus restored work qubits.
pub fn build_qcla_adder(k: u32) -> Result<Circuit, BuildError> {
    if k < 1 {
        return Err(BuildError::InvalidWidth { width: k, min: 1 });
    }
    let mut next = 0;
    let a = alloc(&mut next, k);
    let b = alloc(&mut next, k);
    let z = alloc(&mut next, 1)[0];
    let lanes = alloc(&mut next, k.saturating_sub(1));
    let w = alloc(&mut next, pcell_count(k) as u32);
    let mut c = Circuit::new(next);
    emit_qcla_adder(&mut c, &a, &b, z, &lanes, &w)?;
    c.set_role(z, QubitRole::Output);
    c.set_roles(&lanes, QubitRole::Ancilla);
    c.set_roles(&w, QubitRole::Ancilla);
    c.add_register("a", a);
    c.add_register("b", b);
    c.add_register("z", vec![z]);
    let mut work = lanes;
    work.extend(w);
    c.add_register("work", work);
    Ok(c)
}

/// Lanes hold c_1..c_{k-1}; the carry-out c_k goes to z.
fn emit_qcla_adder(
    c: &mut Circuit,
    a: &[QubitId],
    b: &[QubitId],
    z: QubitId,
    lanes: &[QubitId],
    w: &[QubitId],
) -> Result<(), CircuitError> {
    let k = a.len();
    if k == 1 {
        c.append(Gate::toffoli(a[0], b[0], z))?;
        c.append(Gate::cnot(a[0], b[0]))?;
        return Ok(());
    }
    let mut generate: Vec<QubitId> = lanes.to_vec();
    generate.push(z);
    let layout = NetworkLayout {
        generate: &generate,
        propagate: b,
        work: w,
        layout_span: k as u32,
    };
    for i in 0..k {
        c.append(Gate::toffoli(a[i], b[i], generate[i]))?;
    }
    for i in 0..k {
        c.append(Gate::cnot(a[i], b[i]))?;
    }
    c.append_all(carry_network_gates(k as u32, &layout))?;
    for i in 1..k {
        c.append(Gate::cnot(generate[i - 1], b[i]))?;
    }
    // Uncompute c_1..c_{k-1} against the sum: the carry chain of (a, !s)
    // coincides with the carry chain of (a, b).
    for i in 0..k - 1 {
        c.append(Gate::X(b[i]))?;
    }
    for i in 1..k - 1 {
        c.append(Gate::cnot(a[i], b[i]))?;
    }
    let mut undo = carry_network_gates(k as u32 - 1, &layout);
    undo.reverse();
    c.append_all(undo)?;
    for i in 1..k - 1 {
        c.append(Gate::cnot(a[i], b[i]))?;
    }
    for i in 0..k - 1 {
        c.append(Gate::toffoli(a[i], b[i], generate[i]))?;
    }
    for i in 0..k - 1 {
        c.append(Gate::X(b[i]))?;
    }
    Ok(())
}

/// Carry-lookahead adder without carry-out: (a, b) -> (a, (a+b) mod 2^k).
pub fn emit_qcla_mod_adder(
    c: &mut Circuit,
    a: &[QubitId],
    b: &[QubitId],
    lanes: &[QubitId],
    w: &[QubitId],
) -> Result<(), CircuitError> {
    let k = a.len();
    if k == 1 {
        c.append(Gate::cnot(a[0], b[0]))?;
        return Ok(());
    }
    let span = k as u32 - 1;
    let layout = NetworkLayout {
        generate: lanes,
        propagate: b,
        work: w,
        layout_span: span,
    };
    for i in 0..k - 1 {
        c.append(Gate::toffoli(a[i], b[i], lanes[i]))?;
    }
    for i in 0..k {
        c.append(Gate::cnot(a[i], b[i]))?;
    }
    c.append_all(carry_network_gates(span, &layout))?;
    for i in 1..k {
        c.append(Gate::cnot(lanes[i - 1], b[i]))?;
    }
    for i in 0..k - 1 {
        c.append(Gate::X(b[i]))?;
    }
    for i in 1..k - 1 {
        c.append(Gate::cnot(a[i], b[i]))?;
    }
    let mut undo = carry_network_gates(span, &layout);
    undo.reverse();
    c.append_all(undo)?;
    for i in 1..k - 1 {
        c.append(Gate::cnot(a[i], b[i]))?;
    }
    for i in 0..k - 1 {
        c.append(Gate::toffoli(a[i], b[i], lanes[i]))?;
    }
    for i in 0..k - 1 {
        c.append(Gate::X(b[i]))?;
    }
    Ok(())
}

/// Ripple adder built from temporary logical-AND gadgets:
/// (a, b) -> (a, (a+b) mod 2^k) with k-1 restored carry ancillas and
/// T-count 4k-4. Measurement-based uncompute makes it non-reversible.
pub fn build_gidney_adder(k: u32) -> Result<Circuit, BuildError> {
    if k < 1 {
        return Err(BuildError::InvalidWidth { width: k, min: 1 });
    }
    let mut next = 0;
    let a = alloc(&mut next, k);
    let b = alloc(&mut next, k);
    let carries = alloc(&mut next, k.saturating_sub(1));
    let mut c = Circuit::new(next);
    emit_gidney_adder(&mut c, &a, &b, &carries)?;
    c.set_roles(&carries, QubitRole::Ancilla);
    c.add_register("a", a);
    c.add_register("b", b);
    c.add_register("work", carries);
    Ok(c)
}

/// `carries[i]` holds c_{i+1} transiently.
pub fn emit_gidney_adder(
    c: &mut Circuit,
    a: &[QubitId],
    b: &[QubitId],
    carries: &[QubitId],
) -> Result<(), CircuitError> {
    let k = a.len();
    if k == 1 {
        c.append(Gate::cnot(a[0], b[0]))?;
        return Ok(());
    }
    c.append(Gate::AndCompute {
        controls: [a[0], b[0]],
        target: carries[0],
    })?;
    for i in 1..k - 1 {
        c.append(Gate::cnot(carries[i - 1], a[i]))?;
        c.append(Gate::cnot(carries[i - 1], b[i]))?;
        c.append(Gate::AndCompute {
            controls: [a[i], b[i]],
            target: carries[i],
        })?;
        c.append(Gate::cnot(carries[i - 1], carries[i]))?;
    }
    c.append(Gate::cnot(a[k - 1], b[k - 1]))?;
    c.append(Gate::cnot(carries[k - 2], b[k - 1]))?;
    for i in (1..k - 1).rev() {
        c.append(Gate::cnot(carries[i - 1], carries[i]))?;
        c.append(Gate::AndUncompute {
            controls: [a[i], b[i]],
            target: carries[i],
        })?;
        c.append(Gate::cnot(a[i], b[i]))?;
        c.append(Gate::cnot(carries[i - 1], a[i]))?;
        c.append(Gate::cnot(carries[i - 1], b[i]))?;
    }
    c.append(Gate::AndUncompute {
        controls: [a[0], b[0]],
        target: carries[0],
    })?;
    c.append(Gate::cnot(a[0], b[0]))?;
    Ok(())
}
