//! Dense unitaries for small circuits and equivalence up to global phase.
//! Used to certify the lowering templates and the lowered circuits against
//! their Toffoli-level originals.

use num_complex::Complex64;
use thiserror::Error;

use crate::circuit::{Circuit, Gate, Polarity, QubitId};
use crate::lowering::and_compute_template;

pub const MAX_QUBITS: u32 = 12;

#[derive(Debug, Clone)]
pub struct DenseUnitary {
    dim: usize,
    /// Row-major entries.
    data: Vec<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnitaryError {
    #[error("circuit has {0} qubits; dense verification supports at most {MAX_QUBITS}")]
    TooManyQubits(u32),
    #[error("measurement-based uncompute has no unitary representation")]
    NonUnitaryGate,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

impl DenseUnitary {
    pub fn identity(qubits: u32) -> DenseUnitary {
        let dim = 1usize << qubits;
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        DenseUnitary { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    /// Frobenius distance to the identity of U U^dagger.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.dim;
        let mut defect = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += self.data[i * n + k] * self.data[j * n + k].conj();
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                defect += (acc - expect).norm_sqr();
            }
        }
        defect.sqrt()
    }

    fn apply_single(&mut self, q: QubitId, m: [[Complex64; 2]; 2]) {
        let bit = 1usize << q.0;
        for r0 in 0..self.dim {
            if r0 & bit != 0 {
                continue;
            }
            let r1 = r0 | bit;
            for col in 0..self.dim {
                let a = self.data[r0 * self.dim + col];
                let b = self.data[r1 * self.dim + col];
                self.data[r0 * self.dim + col] = m[0][0] * a + m[0][1] * b;
                self.data[r1 * self.dim + col] = m[1][0] * a + m[1][1] * b;
            }
        }
    }

    fn apply_phase(&mut self, predicate: impl Fn(usize) -> bool, phase: Complex64) {
        for row in 0..self.dim {
            if predicate(row) {
                for col in 0..self.dim {
                    self.data[row * self.dim + col] *= phase;
                }
            }
        }
    }

    /// Permutation rows: flips `target_mask` wherever `fires` holds; callers
    /// guarantee `fires(r) == fires(r ^ target_mask)`.
    fn apply_controlled_flip(&mut self, fires: impl Fn(usize) -> bool, target_mask: usize) {
        for r in 0..self.dim {
            if r & target_mask == 0 && fires(r) {
                let r2 = r | target_mask;
                for col in 0..self.dim {
                    self.data.swap(r * self.dim + col, r2 * self.dim + col);
                }
            }
        }
    }
}

fn h_matrix() -> [[Complex64; 2]; 2] {
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[s, s], [s, -s]]
}

fn apply_gate(u: &mut DenseUnitary, gate: &Gate) -> Result<(), UnitaryError> {
    let one = Complex64::new(1.0, 0.0);
    match gate {
        Gate::X(q) => u.apply_controlled_flip(|_| true, 1 << q.0),
        Gate::H(q) => u.apply_single(*q, h_matrix()),
        Gate::S(q) => {
            let bit = 1usize << q.0;
            u.apply_phase(|r| r & bit != 0, Complex64::new(0.0, 1.0));
        }
        Gate::Sdg(q) => {
            let bit = 1usize << q.0;
            u.apply_phase(|r| r & bit != 0, Complex64::new(0.0, -1.0));
        }
        Gate::T(q) => {
            let bit = 1usize << q.0;
            u.apply_phase(|r| r & bit != 0, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4));
        }
        Gate::Tdg(q) => {
            let bit = 1usize << q.0;
            u.apply_phase(|r| r & bit != 0, Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4));
        }
        Gate::Z(q) => {
            let bit = 1usize << q.0;
            u.apply_phase(|r| r & bit != 0, -one);
        }
        Gate::Cz(a, b) => {
            let mask = (1usize << a.0) | (1 << b.0);
            u.apply_phase(|r| r & mask == mask, -one);
        }
        Gate::Cnot { control, target } => {
            let cbit = 1usize << control.0;
            u.apply_controlled_flip(|r| r & cbit != 0, 1 << target.0);
        }
        Gate::MultiCnot { control, targets } => {
            let cbit = 1usize << control.0;
            for t in targets {
                u.apply_controlled_flip(|r| r & cbit != 0, 1 << t.0);
            }
        }
        Gate::Toffoli { controls, target } => {
            let spec: Vec<(usize, bool)> = controls
                .iter()
                .map(|(q, p)| (1usize << q.0, *p == Polarity::One))
                .collect();
            u.apply_controlled_flip(
                move |r| spec.iter().all(|(bit, pol)| (r & bit != 0) == *pol),
                1 << target.0,
            );
        }
        Gate::AndCompute { controls, target } => {
            for g in and_compute_template(controls[0], controls[1], *target) {
                apply_gate(u, &g)?;
            }
        }
        Gate::AndUncompute { .. } => return Err(UnitaryError::NonUnitaryGate),
    }
    Ok(())
}

/// Product of the circuit's gate matrices in application order. AND-compute
/// gadgets enter through their Clifford+T realization with the magic state
/// prepared in place, so the result is unitary on the full space.
pub fn build_unitary(circuit: &Circuit) -> Result<DenseUnitary, UnitaryError> {
    if circuit.qubit_count() > MAX_QUBITS {
        return Err(UnitaryError::TooManyQubits(circuit.qubit_count()));
    }
    let mut u = DenseUnitary::identity(circuit.qubit_count());
    for gate in circuit.gates() {
        apply_gate(&mut u, gate)?;
    }
    Ok(u)
}

/// True when there is a unit-modulus phase p with ||u - p v||_F <= tol.
/// The phase comes from the largest-modulus diagonal entry of v^dagger u.
pub fn equivalent_up_to_global_phase(
    u: &DenseUnitary,
    v: &DenseUnitary,
    tol: f64,
) -> Result<bool, UnitaryError> {
    if u.dim != v.dim {
        return Err(UnitaryError::DimensionMismatch(u.dim, v.dim));
    }
    let n = u.dim;
    let mut best = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..n {
            acc += v.data[r * n + j].conj() * u.data[r * n + j];
        }
        if acc.norm() > best.norm() {
            best = acc;
        }
    }
    if best.norm() < 1e-12 {
        return Ok(false);
    }
    let phase = best / best.norm();
    let mut dist = 0.0f64;
    for i in 0..n * n {
        dist += (u.data[i] - phase * v.data[i]).norm_sqr();
    }
    Ok(dist.sqrt() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lowering::{lower, LoweringOptions, LoweringStrategy};

    fn q(i: u32) -> QubitId {
        QubitId(i)
    }

    #[test]
    fn x_matrix() {
        let mut c = Circuit::new(1);
        c.append(Gate::X(q(0))).unwrap();
        let u = build_unitary(&c).unwrap();
        assert_eq!(u.entry(0, 1), Complex64::new(1.0, 0.0));
        assert_eq!(u.entry(1, 0), Complex64::new(1.0, 0.0));
        assert_eq!(u.entry(0, 0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn empty_circuit_is_identity() {
        let u = build_unitary(&Circuit::new(2)).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((u.entry(i, j) - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn t_equivalent_to_itself() {
        let mut c = Circuit::new(1);
        c.append(Gate::T(q(0))).unwrap();
        let u = build_unitary(&c).unwrap();
        assert!(equivalent_up_to_global_phase(&u, &u, 1e-9).unwrap());
    }

    #[test]
    fn seven_t_circuit_is_a_toffoli() {
        let mut reference = Circuit::new(3);
        reference.append(Gate::toffoli(q(0), q(1), q(2))).unwrap();
        let lowered = lower(
            &reference,
            LoweringOptions {
                strategy: LoweringStrategy::Naive7T,
                expand_and_gadgets: false,
            },
        )
        .unwrap();
        let u = build_unitary(&lowered).unwrap();
        let v = build_unitary(&reference).unwrap();
        assert!(u.unitarity_defect() < 1e-9);
        assert!(equivalent_up_to_global_phase(&u, &v, 1e-9).unwrap());
    }

    #[test]
    fn and_compute_acts_as_toffoli_on_cleared_target() {
        let mut c = Circuit::new(3);
        c.append(Gate::AndCompute {
            controls: [q(0), q(1)],
            target: q(2),
        })
        .unwrap();
        let u = build_unitary(&c).unwrap();
        // Columns with the target clear must match Toffoli columns exactly
        // up to one global phase.
        let mut t = Circuit::new(3);
        t.append(Gate::toffoli(q(0), q(1), q(2))).unwrap();
        let v = build_unitary(&t).unwrap();
        let mut phase: Option<Complex64> = None;
        for col in 0..8 {
            if col & 0b100 != 0 {
                continue;
            }
            for row in 0..8 {
                let a = u.entry(row, col);
                let b = v.entry(row, col);
                if b.norm() > 0.5 {
                    let p = a / b;
                    assert!((p.norm() - 1.0).abs() < 1e-9, "non-unit amplitude");
                    match phase {
                        None => phase = Some(p),
                        Some(prev) => assert!((prev - p).norm() < 1e-9),
                    }
                } else {
                    assert!(a.norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let u = DenseUnitary::identity(1);
        let v = DenseUnitary::identity(2);
        assert!(matches!(
            equivalent_up_to_global_phase(&u, &v, 1e-9),
            Err(UnitaryError::DimensionMismatch(2, 4))
        ));
    }

    #[test]
    fn composition_order() {
        // X then H on one qubit equals the matrix product H * X.
        let mut c = Circuit::new(1);
        c.append(Gate::X(q(0))).unwrap();
        c.append(Gate::H(q(0))).unwrap();
        let u = build_unitary(&c).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((u.entry(0, 0).re - s).abs() < 1e-12);
        assert!((u.entry(1, 0).re + s).abs() < 1e-12);
        assert!((u.entry(0, 1).re - s).abs() < 1e-12);
        assert!((u.entry(1, 1).re - s).abs() < 1e-12);
    }
}
