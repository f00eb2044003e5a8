//! Reference implementations in plain integer arithmetic.
//!
//! Everything in this module is deliberately independent of the circuit
//! machinery: circuits are checked against these functions, never the other
//! way round.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("operand {value} does not fit in {bits} bits")]
    OutOfRange { value: u64, bits: u32 },
    #[error("division by zero")]
    DivideByZero,
}

fn check_range(value: u64, bits: u32) -> Result<(), OracleError> {
    if bits >= 64 || value < (1u64 << bits) {
        Ok(())
    } else {
        Err(OracleError::OutOfRange { value, bits })
    }
}

/// Compare-and-subtract on k-bit integers: returns `(b - a, 0)` when
/// `b >= a`, otherwise `(b, 1)`.
pub fn ref_compnsub(a: u64, b: u64, k: u32) -> Result<(u64, u64), OracleError> {
    check_range(a, k)?;
    check_range(b, k)?;
    if b >= a {
        Ok((b - a, 0))
    } else {
        Ok((b, 1))
    }
}

/// Carry chain of the one's-complement sum `!b + a` over k bits.
///
/// Returns `c_1 ..= c_k` where `c_0 = 0` and
/// `c_{i+1} = a_i !b_i XOR !b_i c_i XOR c_i a_i`. The last entry equals the
/// high bit of [`ref_compnsub`].
pub fn ref_carries(a: u64, b: u64, k: u32) -> Result<Vec<u8>, OracleError> {
    check_range(a, k)?;
    check_range(b, k)?;
    let mut carries = Vec::with_capacity(k as usize);
    let mut c = 0u8;
    for i in 0..k {
        let ai = ((a >> i) & 1) as u8;
        let nbi = (((b >> i) & 1) ^ 1) as u8;
        c = (ai & nbi) ^ (nbi & c) ^ (c & ai);
        carries.push(c);
    }
    Ok(carries)
}

/// Integer division: `(floor(n / d), n mod d)`.
pub fn ref_divide(n: u64, d: u64) -> Result<(u64, u64), OracleError> {
    if d == 0 {
        return Err(OracleError::DivideByZero);
    }
    Ok((n / d, n % d))
}

/// The one's-complement subtraction procedure executed literally: complement
/// the minuend, add, and post-process depending on the carry-out.
///
/// Used only by tests to confirm that `ref_compnsub` agrees with the textbook
/// method it abbreviates.
pub fn ones_complement_compnsub(a: u64, b: u64, k: u32) -> Result<(u64, u64), OracleError> {
    check_range(a, k)?;
    check_range(b, k)?;
    let mask = (1u64 << k) - 1;
    let s = (!b & mask) + a;
    let high = s >> k;
    if high == 0 {
        Ok((!s & mask, 0))
    } else {
        // Negative difference: the registers are to be restored, so the
        // unitary leaves b in place and only flags the high bit.
        Ok((b, 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compnsub_basics() {
        assert_eq!(ref_compnsub(3, 5, 3).unwrap(), (2, 0));
        assert_eq!(ref_compnsub(5, 3, 3).unwrap(), (3, 1));
        assert_eq!(ref_compnsub(0, 0, 1).unwrap(), (0, 0));
        assert!(ref_compnsub(8, 0, 3).is_err());
    }

    #[test]
    fn compnsub_matches_ones_complement_procedure() {
        for k in 1..=8u32 {
            for a in 0..(1u64 << k) {
                for b in 0..(1u64 << k) {
                    assert_eq!(
                        ref_compnsub(a, b, k).unwrap(),
                        ones_complement_compnsub(a, b, k).unwrap(),
                        "a={a} b={b} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn carries_of_zero_addend() {
        for k in 1..=6u32 {
            for b in 0..(1u64 << k) {
                assert!(ref_carries(0, b, k).unwrap().iter().all(|&c| c == 0));
            }
        }
    }

    #[test]
    fn carry_out_flags_comparison() {
        let k = 8u32;
        for a in 0..(1u64 << k) {
            for b in 0..(1u64 << k) {
                let carries = ref_carries(a, b, k).unwrap();
                let high = *carries.last().unwrap() as u64;
                assert_eq!(high, ref_compnsub(a, b, k).unwrap().1);
            }
        }
    }

    #[test]
    fn first_bit_carry() {
        // a=1, b=0, k=1: !b = 1, 1+1 carries.
        assert_eq!(ref_carries(1, 0, 1).unwrap(), vec![1]);
    }

    #[test]
    fn divide_basics() {
        assert_eq!(ref_divide(27, 5).unwrap(), (5, 2));
        assert_eq!(ref_divide(0, 7).unwrap(), (0, 0));
        assert_eq!(ref_divide(31, 1).unwrap(), (31, 0));
        assert_eq!(ref_divide(5, 0), Err(OracleError::DivideByZero));
    }
}
