//! Quantum Fourier transform circuits.
//!
//! With bit reversal enabled (the default elsewhere in the crate) the circuit
//! unitary equals the DFT matrix with entries e^{2πi kx/N}/√N. Without it, the
//! output bits come out in reversed order, matching the binary-fraction
//! product-state construction: after the ladder, qubit j carries the relative
//! phase e^{2πi (.x_j x_{j-1} … x_0)}.
//!
//! The controlled-R_d gates within one target's layer are mutually diagonal,
//! so their relative order is immaterial; we emit them from nearest control
//! (d = 1) outward.

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::scalar::Scalar;

pub const MAX_QFT_QUBITS: usize = 10;

/// QFT gates on an explicit qubit list, `qubits[0]` the least significant bit.
pub fn qft_gates_on<F: Scalar>(qubits: &[usize], include_bit_reversal: bool) -> Vec<Gate<F>> {
    let m = qubits.len();
    let mut gates = Vec::with_capacity(m + m * (m - 1) / 2 + m / 2);
    for j in (0..m).rev() {
        gates.push(Gate::h(qubits[j]));
        for l in (0..j).rev() {
            let d = (j - l) as u32;
            gates.push(Gate::crd(d, qubits[l], qubits[j]));
        }
    }
    if include_bit_reversal {
        for j in 0..m / 2 {
            gates.push(Gate::swap(qubits[j], qubits[m - 1 - j]));
        }
    }
    gates
}

/// Adjoint of [`qft_gates_on`]: the reversed sequence of adjoint gates.
pub fn inverse_qft_gates_on<F: Scalar>(qubits: &[usize], include_bit_reversal: bool) -> Vec<Gate<F>> {
    let m = qubits.len();
    let mut gates = Vec::new();
    if include_bit_reversal {
        for j in (0..m / 2).rev() {
            gates.push(Gate::swap(qubits[j], qubits[m - 1 - j]));
        }
    }
    for j in 0..m {
        for l in 0..j {
            let d = (j - l) as u32;
            gates.push(Gate::crd_adjoint(d, qubits[l], qubits[j]));
        }
        gates.push(Gate::h(qubits[j]));
    }
    gates
}

/// m-qubit QFT circuit: m Hadamards and m(m−1)/2 controlled-R_d gates, plus
/// ⌊m/2⌋ swaps when `include_bit_reversal` is set.
pub fn qft_circuit<F: Scalar>(m: usize, include_bit_reversal: bool) -> Result<Circuit<F>> {
    if m < 1 || m > MAX_QFT_QUBITS {
        return Err(Error::QubitCountOutOfRange(m, 1, MAX_QFT_QUBITS));
    }
    let qubits: Vec<usize> = (0..m).collect();
    let mut c = Circuit::new(m);
    c.extend(qft_gates_on(&qubits, include_bit_reversal))?;
    Ok(c)
}
