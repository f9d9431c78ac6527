//! Circuits: ordered gate lists, execution, the dense-matrix oracle, and the
//! text format.
//!
//! Text format, one gate per line (`#` starts a comment):
//! ```text
//! H 0
//! T 2
//! X 1
//! CNOT 0 1
//! RD 3 0 1    # controlled R_3, control 0, target 1
//! SWAP 0 2
//! ```

use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::linalg::Matrix;
use crate::scalar::{Scalar, C};
use crate::statevec::StateVector;

/// Oracle cap: full matrices only for small registers.
pub const MAX_ORACLE_QUBITS: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit<F: Scalar> {
    n_qubits: usize,
    gates: Vec<Gate<F>>,
}

impl<F: Scalar> Circuit<F> {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate<F>] {
        &self.gates
    }

    pub fn push(&mut self, gate: Gate<F>) -> Result<()> {
        if let Some(&q) = gate.qubits.iter().find(|&&q| q >= self.n_qubits) {
            return Err(Error::QubitIndexOutOfRange {
                index: q,
                n_qubits: self.n_qubits,
            });
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate<F>>) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    /// Apply the gates in list order.
    pub fn execute(&self, state: &StateVector<F>) -> Result<StateVector<F>> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "circuit on {} qubits applied to {}-qubit state",
                self.n_qubits,
                state.n_qubits()
            )));
        }
        let mut s = state.clone();
        for gate in &self.gates {
            s = gate.apply(&s)?;
        }
        Ok(s)
    }

    /// Full 2^n × 2^n unitary: product of embedded gate matrices, gate order
    /// respected. Deliberately small-scale.
    pub fn unitary(&self) -> Result<Matrix<F>> {
        if self.n_qubits > MAX_ORACLE_QUBITS {
            return Err(Error::QubitCountOutOfRange(self.n_qubits, 1, MAX_ORACLE_QUBITS));
        }
        let dim = 1usize << self.n_qubits;
        let mut u = Matrix::identity(dim);
        for gate in &self.gates {
            let g = embed_unitary(&gate.matrix(), &gate.qubits, self.n_qubits);
            u = g.mul(&u);
        }
        Ok(u)
    }

    /// Serialize to the text format. Fails for gate kinds without a mnemonic.
    pub fn to_text(&self) -> Result<String> {
        let mut out = String::new();
        for g in &self.gates {
            match g.mnemonic() {
                Some(line) => {
                    out.push_str(&line);
                    out.push('\n');
                }
                None => {
                    return Err(Error::InvalidArgument(
                        "circuit contains gates with no text mnemonic".into(),
                    ))
                }
            }
        }
        Ok(out)
    }

    /// Parse the text format; `n_qubits` fixes the register width.
    pub fn parse(text: &str, n_qubits: usize) -> Result<Self> {
        let mut circuit = Circuit::new(n_qubits);
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut parts = body.split_whitespace();
            let mnemonic = parts.next().expect("nonempty line");
            let args: Vec<&str> = parts.collect();
            let parse_qubit = |s: &str| -> Result<usize> {
                s.parse::<usize>().map_err(|_| Error::Parse {
                    line,
                    message: format!("invalid qubit index {s:?}"),
                })
            };
            let expect_args = |n: usize| -> Result<()> {
                if args.len() != n {
                    return Err(Error::Parse {
                        line,
                        message: format!(
                            "{mnemonic} expects {n} argument(s), got {}",
                            args.len()
                        ),
                    });
                }
                Ok(())
            };
            let gate = match mnemonic.to_ascii_uppercase().as_str() {
                "H" => {
                    expect_args(1)?;
                    Gate::h(parse_qubit(args[0])?)
                }
                "T" => {
                    expect_args(1)?;
                    Gate::t(parse_qubit(args[0])?)
                }
                "X" => {
                    expect_args(1)?;
                    Gate::x(parse_qubit(args[0])?)
                }
                "Z" => {
                    expect_args(1)?;
                    Gate::z(parse_qubit(args[0])?)
                }
                "S" => {
                    expect_args(1)?;
                    Gate::s(parse_qubit(args[0])?)
                }
                "CNOT" => {
                    expect_args(2)?;
                    Gate::cnot(parse_qubit(args[0])?, parse_qubit(args[1])?)
                }
                "SWAP" => {
                    expect_args(2)?;
                    Gate::swap(parse_qubit(args[0])?, parse_qubit(args[1])?)
                }
                "RD" => {
                    expect_args(3)?;
                    let d: u32 = args[0].parse().map_err(|_| Error::Parse {
                        line,
                        message: format!("invalid R_d order {:?}", args[0]),
                    })?;
                    if d < 1 {
                        return Err(Error::Parse {
                            line,
                            message: "R_d requires d >= 1".into(),
                        });
                    }
                    Gate::crd(d, parse_qubit(args[1])?, parse_qubit(args[2])?)
                }
                other => {
                    return Err(Error::Parse {
                        line,
                        message: format!("unknown gate mnemonic {other:?}"),
                    })
                }
            };
            circuit.push(gate).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
        }
        Ok(circuit)
    }
}

/// Embed a gate matrix on `qubits` (first listed = most significant matrix
/// bit) into the full 2^n-dimensional unitary.
pub fn embed_unitary<F: Scalar>(m: &Matrix<F>, qubits: &[usize], n: usize) -> Matrix<F> {
    let k = qubits.len();
    let dim = 1usize << n;
    let sub_dim = 1usize << k;
    assert_eq!(m.dim(), sub_dim, "gate matrix dimension mismatch");
    let bit_of: Vec<usize> = qubits.iter().map(|&q| 1usize << q).collect();
    let support_mask: usize = bit_of.iter().sum();
    let mut out = Matrix::zeros(dim);
    let expand = |rest: usize, sub: usize| -> usize {
        let mut idx = rest;
        for (pos, bit) in bit_of.iter().enumerate() {
            if sub & (1 << (k - 1 - pos)) != 0 {
                idx |= bit;
            }
        }
        idx
    };
    for rest in 0..dim {
        if rest & support_mask != 0 {
            continue;
        }
        for r in 0..sub_dim {
            let row = expand(rest, r);
            for c in 0..sub_dim {
                let v = m[(r, c)];
                if v != C::new(F::zero(), F::zero()) {
                    out[(row, expand(rest, c))] = v;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::{matrix_1q, GateKind};
    use crate::scalar::C;

    type Cf = Circuit<f64>;

    #[test]
    fn empty_circuit_is_identity() {
        let c = Cf::new(2);
        let s = StateVector::bloch_state(1.0, 2.0).unwrap();
        let s2 = {
            // embed the 1-qubit state into two qubits as ψ ⊗ |0⟩ manually
            let mut amps = vec![C::new(0.0, 0.0); 4];
            amps[0] = s.amplitude(0);
            amps[1] = s.amplitude(1);
            StateVector::from_amplitudes(2, amps).unwrap()
        };
        assert_eq!(c.execute(&s2).unwrap(), s2);
    }

    #[test]
    fn bell_circuit() {
        let mut c = Cf::new(2);
        c.push(Gate::h(0)).unwrap();
        c.push(Gate::cnot(0, 1)).unwrap();
        let out = c.execute(&StateVector::zeros(2).unwrap()).unwrap();
        let inv = 1.0 / 2.0f64.sqrt();
        assert!((out.amplitude(0).re - inv).abs() < 1e-12);
        assert!((out.amplitude(3).re - inv).abs() < 1e-12);
        // Oracle: first column of the 4x4 unitary.
        let u = c.unitary().unwrap();
        assert!((u[(0, 0)].re - inv).abs() < 1e-12);
        assert!((u[(3, 0)].re - inv).abs() < 1e-12);
        assert!(u[(1, 0)].norm() < 1e-12 && u[(2, 0)].norm() < 1e-12);
    }

    #[test]
    fn h_twice_identity() {
        let mut c = Cf::new(1);
        c.push(Gate::h(0)).unwrap();
        c.push(Gate::h(0)).unwrap();
        let s = StateVector::zeros(1).unwrap();
        let out = c.execute(&s).unwrap();
        assert!(out.equal_up_to_phase(&s, 1e-12));
        let mut cx = Cf::new(1);
        cx.push(Gate::x(0)).unwrap();
        cx.push(Gate::x(0)).unwrap();
        assert!(cx.unitary().unwrap().sub(&Matrix::identity(2)).max_abs() < 1e-12);
    }

    #[test]
    fn single_h_unitary_is_h() {
        let mut c = Cf::new(1);
        c.push(Gate::h(0)).unwrap();
        let u = c.unitary().unwrap();
        assert!(u.sub(&matrix_1q(&GateKind::H)).max_abs() < 1e-14);
    }

    #[test]
    fn oracle_size_guard() {
        let c = Cf::new(11);
        assert!(c.unitary().is_err());
    }

    #[test]
    fn qubit_range_enforced() {
        let mut c = Cf::new(2);
        assert!(c.push(Gate::h(2)).is_err());
        let s3 = StateVector::zeros(3).unwrap();
        assert!(Cf::new(2).execute(&s3).is_err());
    }

    #[test]
    fn parse_round_trip() {
        let text = "# bell pair\nH 0\nCNOT 0 1  # entangle\n";
        let c = Cf::parse(text, 2).unwrap();
        assert_eq!(c.gates().len(), 2);
        assert_eq!(c.to_text().unwrap(), "H 0\nCNOT 0 1\n");
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = Cf::parse("H 0\nFOO 1\n", 2).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
        let err = Cf::parse("H 5\n", 2).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = Cf::parse("RD 0 0 1\n", 2).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn swap_as_three_cnots() {
        let mut swap = Cf::new(2);
        swap.push(Gate::swap(0, 1)).unwrap();
        let mut cnots = Cf::new(2);
        cnots.push(Gate::cnot(0, 1)).unwrap();
        cnots.push(Gate::cnot(1, 0)).unwrap();
        cnots.push(Gate::cnot(0, 1)).unwrap();
        assert!(swap.unitary().unwrap().sub(&cnots.unitary().unwrap()).max_abs() < 1e-12);
    }
}
