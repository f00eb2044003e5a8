//! Division circuit builders: long division over sliding dividend windows,
//! restoring division on a doubled dividend register, and non-restoring
//! division from plain adders with a final compare-and-subtract correction.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::adders::{emit_gidney_adder, emit_qcla_mod_adder, pcell_count};
use crate::circuit::{Circuit, Gate, QubitId, QubitRole};
use crate::compnsub::{emit_compnsub, CnsPlacement, CnsVariant};
use crate::error::BuildError;
use crate::sim::BasisState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DivisionAlgorithm {
    Long,
    Restoring,
    NonRestoring,
}

/// Circuit family selector for non-restoring division, which only has the
/// lookahead (II) and AND-gadget (III) realizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NonRestoringVariant {
    II,
    III,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionResult {
    pub quotient: u64,
    pub remainder: u64,
    pub readouts: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisionReadError {
    #[error("circuit lacks register {0}")]
    MissingRegister(String),
    #[error("remainder contract violated: q={quotient} r={remainder} d={divisor}")]
    RemainderContract {
        quotient: u64,
        remainder: u64,
        divisor: u64,
    },
}

/// Inside dividers a width-1 window degenerates to the two-Toffoli circuit
/// (reversible variants) or its single-AND analogue (variant III).
fn emit_cns_any_width(
    c: &mut Circuit,
    variant: CnsVariant,
    k: u32,
    placement: &CnsPlacement,
) -> Result<(), BuildError> {
    let effective = if k == 1 && matches!(variant, CnsVariant::IIa | CnsVariant::IIb) {
        CnsVariant::I
    } else {
        variant
    };
    emit_compnsub(c, effective, k, placement)
}

fn cns_work_for_width(variant: CnsVariant, k: u32) -> u64 {
    if k == 1 {
        0
    } else {
        variant.work_qubits(k)
    }
}

/// Long division of an n-bit dividend by an m-bit divisor: one width-m
/// compare-and-subtract on the top window, then width-(m+1) instances on the
/// sliding windows, then the complement layer on the quotient.
pub fn build_long_division(n: u32, m: u32, variant: CnsVariant) -> Result<Circuit, BuildError> {
    if m < 1 || m > n {
        return Err(BuildError::InvalidWidths(format!(
            "long division needs 1 <= m <= n, got n={n} m={m}"
        )));
    }
    let max_width = if n > m { m + 1 } else { m };
    let work_n = cns_work_for_width(variant, max_width) as u32;

    let mut next = 0u32;
    let mut take = |count: u32| -> Vec<QubitId> {
        let out: Vec<QubitId> = (next..next + count).map(QubitId).collect();
        next += count;
        out
    };
    let a = take(m);
    let b = take(n);
    let q = take(n - m + 1);
    let prepend = if n > m { Some(take(1)[0]) } else { None };
    let work = take(work_n);
    let mut c = Circuit::new(next);

    let window0: Vec<QubitId> = ((n - m)..n).map(|i| b[i as usize]).collect();
    let placement = CnsPlacement {
        minuend: window0,
        subtrahend: a.clone(),
        high_bit: q[(n - m) as usize],
        work: work[..cns_work_for_width(variant, m) as usize].to_vec(),
    };
    emit_cns_any_width(&mut c, variant, m, &placement)?;

    for i in 1..=(n - m) {
        let window: Vec<QubitId> = ((n - m - i)..=(n - i)).map(|j| b[j as usize]).collect();
        let mut subtrahend = a.clone();
        subtrahend.push(prepend.expect("n > m implies a prepend qubit"));
        let placement = CnsPlacement {
            minuend: window,
            subtrahend,
            high_bit: q[(n - m - i) as usize],
            work: work[..cns_work_for_width(variant, m + 1) as usize].to_vec(),
        };
        emit_cns_any_width(&mut c, variant, m + 1, &placement)?;
    }
    for qq in &q {
        c.append(Gate::X(*qq))?;
    }

    c.set_roles(&q, QubitRole::Output);
    if let Some(p) = prepend {
        c.set_role(p, QubitRole::Ancilla);
    }
    c.set_roles(&work, QubitRole::Ancilla);
    c.add_register("divisor", a);
    c.add_register("remainder", b[..m as usize].to_vec());
    c.add_register("dividend", b);
    c.add_register("quotient", q);
    c.add_register("work", work);
    Ok(c)
}

/// Restoring division: dividend in the lower half of a 2n-qubit register,
/// n sliding compare-and-subtract windows each writing its flag into the
/// vacated top qubit, which is then complemented into the quotient bit.
pub fn build_restoring_division(n: u32, variant: CnsVariant) -> Result<Circuit, BuildError> {
    if n < 1 {
        return Err(BuildError::InvalidWidths("restoring division needs n >= 1".into()));
    }
    let work_n = cns_work_for_width(variant, n) as u32;
    let mut next = 0u32;
    let mut take = |count: u32| -> Vec<QubitId> {
        let out: Vec<QubitId> = (next..next + count).map(QubitId).collect();
        next += count;
        out
    };
    let a = take(n);
    let b = take(2 * n);
    let work = take(work_n);
    let mut c = Circuit::new(next);

    for i in 1..=n {
        let window: Vec<QubitId> = ((n - i)..(2 * n - i)).map(|j| b[j as usize]).collect();
        let high = b[(2 * n - i) as usize];
        let placement = CnsPlacement {
            minuend: window,
            subtrahend: a.clone(),
            high_bit: high,
            work: work[..cns_work_for_width(variant, n) as usize].to_vec(),
        };
        emit_cns_any_width(&mut c, variant, n, &placement)?;
        c.append(Gate::X(high))?;
    }

    for j in n..2 * n {
        c.set_role(b[j as usize], QubitRole::Output);
    }
    c.set_roles(&work, QubitRole::Ancilla);
    c.add_register("divisor", a);
    c.add_register("remainder", b[..n as usize].to_vec());
    c.add_register("quotient", b[n as usize..].to_vec());
    c.add_register("dividend", b[..n as usize].to_vec());
    c.add_register("b", b);
    c.add_register("work", work);
    Ok(c)
}

/// Work qubits the non-restoring circuit shares between its adders and the
/// final compare-and-subtract.
fn non_restoring_work(n: u32, variant: NonRestoringVariant) -> u64 {
    match variant {
        NonRestoringVariant::II => {
            let adder = u64::from(n - 1) + pcell_count(n - 1);
            let cns = CnsVariant::IIb.work_qubits(n);
            adder.max(cns)
        }
        NonRestoringVariant::III => u64::from(n - 1),
    }
}

/// Non-restoring division of an n-bit dividend by a divisor d <= 2^(n-1):
/// one unconditional subtraction, n-1 sign-conditioned add/subtract rounds
/// (conditioning by complement-conjugation of the window), and a final
/// add-plus-compare-and-subtract correction.
///
/// The sign of each partial remainder lands in the window's top bit, which
/// the next round consumes as its quotient/direction bit, so divisors must
/// leave the top window bit free: d <= 2^(n-1).
pub fn build_non_restoring_division(
    n: u32,
    variant: NonRestoringVariant,
) -> Result<Circuit, BuildError> {
    if n < 2 {
        return Err(BuildError::InvalidWidths("non-restoring division needs n >= 2".into()));
    }
    let work_n = non_restoring_work(n, variant) as u32;
    let mut next = 0u32;
    let mut take = |count: u32| -> Vec<QubitId> {
        let out: Vec<QubitId> = (next..next + count).map(QubitId).collect();
        next += count;
        out
    };
    // The shifted dividend string: r holds the low n-1 bits, q the rest.
    let r = take(n - 1);
    let q = take(n);
    let a = take(n);
    let flag = take(1)[0];
    let work = take(work_n);
    let mut c = Circuit::new(next);

    let s = |j: u32| -> QubitId {
        if j < n - 1 {
            r[j as usize]
        } else {
            q[(j - (n - 1)) as usize]
        }
    };
    // window(i) = S[2n-2-i .. n-1-i], least significant first.
    let window = |i: u32| -> Vec<QubitId> { ((n - 1 - i)..=(2 * n - 2 - i)).map(s).collect() };

    let emit_adder = |c: &mut Circuit, win: &[QubitId]| -> Result<(), BuildError> {
        match variant {
            NonRestoringVariant::II => {
                let (lanes, cells) = work.split_at((n - 1) as usize);
                emit_qcla_mod_adder(c, &a, win, lanes, &cells[..pcell_count(n - 1) as usize])?;
            }
            NonRestoringVariant::III => {
                emit_gidney_adder(c, &a, win, &work)?;
            }
        }
        Ok(())
    };

    // Round 0: unconditional subtraction via complement conjugation.
    let w0 = window(0);
    for qq in &w0 {
        c.append(Gate::X(*qq))?;
    }
    emit_adder(&mut c, &w0)?;
    for qq in &w0 {
        c.append(Gate::X(*qq))?;
    }

    for i in 1..n {
        let sign = q[(n - i) as usize];
        c.append(Gate::X(sign))?;
        let win = window(i);
        c.append(Gate::MultiCnot {
            control: sign,
            targets: win.clone(),
        })?;
        emit_adder(&mut c, &win)?;
        c.append(Gate::MultiCnot {
            control: sign,
            targets: win,
        })?;
    }

    // Correction: restore the last partial remainder if it went negative.
    // An unconditional addition folds both signs into one comparison.
    let win = window(n - 1);
    emit_adder(&mut c, &win)?;
    let cns_variant = match variant {
        NonRestoringVariant::II => CnsVariant::IIb,
        NonRestoringVariant::III => CnsVariant::III,
    };
    let placement = CnsPlacement {
        minuend: win,
        subtrahend: a.clone(),
        high_bit: flag,
        work: work[..cns_variant.work_qubits(n) as usize].to_vec(),
    };
    emit_compnsub(&mut c, cns_variant, n, &placement)?;
    c.append(Gate::cnot(flag, q[0]))?;
    c.append(Gate::X(q[0]))?;
    c.append(Gate::cnot(q[0], flag))?;
    c.append(Gate::X(flag))?;

    for i in 1..n {
        c.set_role(q[i as usize], QubitRole::Output);
    }
    c.set_role(flag, QubitRole::Ancilla);
    c.set_roles(&work, QubitRole::Ancilla);
    let mut dividend = r.clone();
    dividend.push(q[0]);
    c.add_register("divisor", a);
    c.add_register("dividend", dividend);
    c.add_register("quotient", q);
    c.add_register("remainder", r);
    c.add_register("work", work);
    Ok(c)
}

/// Inclusive divisor range each builder is correct for. Long division needs
/// a divisor of exactly m significant bits or the quotient overflows its
/// n-m+1 qubits; non-restoring reads the partial-remainder sign from the
/// window's top bit, which caps the divisor at 2^(n-1).
pub fn divisor_range(algorithm: DivisionAlgorithm, n: u32, m: u32) -> (u64, u64) {
    match algorithm {
        DivisionAlgorithm::Long => (1u64 << (m - 1), (1u64 << m) - 1),
        DivisionAlgorithm::Restoring => (1, (1u64 << n) - 1),
        DivisionAlgorithm::NonRestoring => (1, 1u64 << (n - 1)),
    }
}

/// Decodes quotient and remainder from a simulated final state and checks
/// the division identity against the divisor register.
pub fn read_result(circuit: &Circuit, final_state: &BasisState) -> Result<DivisionResult, DivisionReadError> {
    let get = |name: &str| -> Result<u64, DivisionReadError> {
        circuit
            .register(name)
            .map(|reg| final_state.read_register(reg))
            .map_err(|_| DivisionReadError::MissingRegister(name.to_string()))
    };
    let quotient = get("quotient")?;
    let remainder = get("remainder")?;
    let divisor = get("divisor")?;
    if divisor == 0 || remainder >= divisor {
        return Err(DivisionReadError::RemainderContract {
            quotient,
            remainder,
            divisor,
        });
    }
    let mut readouts = BTreeMap::new();
    for (name, reg) in circuit.registers() {
        readouts.insert(name.clone(), final_state.read_register(reg));
    }
    Ok(DivisionResult {
        quotient,
        remainder,
        readouts,
    })
}

/// Basis state with dividend and divisor loaded and everything else zero.
pub fn division_input(circuit: &Circuit, dividend: u64, divisor: u64) -> Result<BasisState, String> {
    let mut s = BasisState::zeros(circuit.qubit_count());
    let dd = circuit.register("dividend").map_err(|e| e.to_string())?;
    let dv = circuit.register("divisor").map_err(|e| e.to_string())?;
    if dividend >= (1u64 << dd.len()) {
        return Err(format!("dividend {dividend} exceeds {} bits", dd.len()));
    }
    if divisor >= (1u64 << dv.len()) {
        return Err(format!("divisor {divisor} exceeds {} bits", dv.len()));
    }
    s.write_register(dd, dividend);
    s.write_register(dv, divisor);
    Ok(s)
}

/// Loads dividend and divisor, runs the circuit, and decodes the result.
pub fn simulate_division(
    circuit: &Circuit,
    dividend: u64,
    divisor: u64,
) -> Result<DivisionResult, String> {
    let s = division_input(circuit, dividend, divisor)?;
    let out = crate::sim::simulate(circuit, s).map_err(|e| e.to_string())?;
    read_result(circuit, &out).map_err(|e| e.to_string())
}
