//! Gate vocabulary.
//!
//! The named alphabet follows {H, T, CNOT} plus the derived X, Z, S, the
//! controlled phase rotations R_d used by the QFT, and generic matrix gates for
//! oracle construction. Pauli rotations (optionally controlled) carry the
//! Trotter step and spectroscopy payloads on arbitrary support.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::pauli::{pauli_string_matrix, Pauli};
use crate::scalar::{cis, Scalar, C};
use crate::statevec::StateVector;

#[derive(Clone, Debug, PartialEq)]
pub enum GateKind<F: Scalar> {
    H,
    T,
    X,
    Z,
    S,
    /// diag(1, e^{iπ/2^d}); `adjoint` negates the phase.
    Rd { d: u32, adjoint: bool },
    /// Controlled R_d, phase applied only on |11⟩.
    CRd { d: u32, adjoint: bool },
    Cnot,
    Swap,
    Generic1Q(Matrix<F>),
    Generic2Q(Matrix<F>),
    /// e^{-i angle P} for the Pauli string P on the gate's qubits.
    PauliRot { axes: Vec<Pauli>, angle: F },
    /// Same rotation conditioned on qubits[0] = 1; axes act on qubits[1..].
    ControlledPauliRot { axes: Vec<Pauli>, angle: F },
    /// Matrix on qubits[1..] conditioned on qubits[0] = 1.
    ControlledMatrix(Matrix<F>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gate<F: Scalar> {
    pub kind: GateKind<F>,
    pub qubits: Vec<usize>,
}

/// 2×2 matrix of a fixed single-qubit gate kind.
pub fn matrix_1q<F: Scalar>(kind: &GateKind<F>) -> Matrix<F> {
    let z = C::new(F::zero(), F::zero());
    let one = C::new(F::one(), F::zero());
    let inv_sqrt2 = C::new(F::one() / F::from_f64_c(2.0).sqrt(), F::zero());
    match kind {
        GateKind::H => Matrix::from_rows(&[&[inv_sqrt2, inv_sqrt2], &[inv_sqrt2, -inv_sqrt2]]),
        GateKind::T => Matrix::from_rows(&[&[one, z], &[z, cis(F::FRAC_PI_4())]]),
        GateKind::X => Pauli::X.matrix(),
        GateKind::Z => Pauli::Z.matrix(),
        GateKind::S => Matrix::from_rows(&[&[one, z], &[z, C::new(F::zero(), F::one())]]),
        GateKind::Rd { d, adjoint } => {
            let phase = rd_phase::<F>(*d, *adjoint);
            Matrix::from_rows(&[&[one, z], &[z, phase]])
        }
        GateKind::Generic1Q(m) => m.clone(),
        _ => panic!("not a single-qubit gate kind"),
    }
}

fn rd_phase<F: Scalar>(d: u32, adjoint: bool) -> C<F> {
    let theta = F::PI() / F::from_f64_c(f64::from(1u32 << d));
    cis(if adjoint { -theta } else { theta })
}

/// CNOT with the first (control) qubit as the most significant matrix bit:
/// |0⟩⟨0|⊗I + |1⟩⟨1|⊗X.
pub fn cnot_matrix<F: Scalar>() -> Matrix<F> {
    let mut m = Matrix::zeros(4);
    let one = C::new(F::one(), F::zero());
    m[(0, 0)] = one;
    m[(1, 1)] = one;
    m[(2, 3)] = one;
    m[(3, 2)] = one;
    m
}

pub fn swap_matrix<F: Scalar>() -> Matrix<F> {
    let mut m = Matrix::zeros(4);
    let one = C::new(F::one(), F::zero());
    m[(0, 0)] = one;
    m[(1, 2)] = one;
    m[(2, 1)] = one;
    m[(3, 3)] = one;
    m
}

/// e^{-i angle P} = cos(angle) I − i sin(angle) P.
pub fn pauli_rotation_matrix<F: Scalar>(axes: &[Pauli], angle: F) -> Matrix<F> {
    let p = pauli_string_matrix::<F>(axes);
    let dim = p.dim();
    let cos = C::new(angle.cos(), F::zero());
    let misin = C::new(F::zero(), -angle.sin());
    let mut m = p.scale(misin);
    for k in 0..dim {
        m[(k, k)] += cos;
    }
    m
}

/// Block-diagonal controlled embedding diag(I, m).
pub fn controlled_matrix<F: Scalar>(m: &Matrix<F>) -> Matrix<F> {
    let d = m.dim();
    let mut out = Matrix::identity(2 * d);
    for r in 0..d {
        for c in 0..d {
            out[(d + r, d + c)] = m[(r, c)];
        }
    }
    out
}

impl<F: Scalar> Gate<F> {
    pub fn new(kind: GateKind<F>, qubits: Vec<usize>) -> Result<Self> {
        let arity = match &kind {
            GateKind::H
            | GateKind::T
            | GateKind::X
            | GateKind::Z
            | GateKind::S
            | GateKind::Rd { .. }
            | GateKind::Generic1Q(_) => 1,
            GateKind::CRd { .. } | GateKind::Cnot | GateKind::Swap | GateKind::Generic2Q(_) => 2,
            GateKind::PauliRot { axes, .. } => axes.len(),
            GateKind::ControlledPauliRot { axes, .. } => axes.len() + 1,
            GateKind::ControlledMatrix(m) => {
                let dim = m.dim();
                if !dim.is_power_of_two() {
                    return Err(Error::DimensionMismatch(
                        "controlled matrix dimension must be a power of two".into(),
                    ));
                }
                1 + dim.trailing_zeros() as usize
            }
        };
        if let GateKind::Rd { d, .. } | GateKind::CRd { d, .. } = &kind {
            if *d < 1 {
                return Err(Error::InvalidArgument("R_d requires d >= 1".into()));
            }
        }
        if qubits.len() != arity {
            return Err(Error::InvalidArgument(format!(
                "gate expects {arity} qubits, got {}",
                qubits.len()
            )));
        }
        let mut sorted = qubits.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument("gate qubits must be distinct".into()));
        }
        Ok(Gate { kind, qubits })
    }

    pub fn h(q: usize) -> Self {
        Gate { kind: GateKind::H, qubits: vec![q] }
    }
    pub fn t(q: usize) -> Self {
        Gate { kind: GateKind::T, qubits: vec![q] }
    }
    pub fn x(q: usize) -> Self {
        Gate { kind: GateKind::X, qubits: vec![q] }
    }
    pub fn z(q: usize) -> Self {
        Gate { kind: GateKind::Z, qubits: vec![q] }
    }
    pub fn s(q: usize) -> Self {
        Gate { kind: GateKind::S, qubits: vec![q] }
    }
    pub fn cnot(control: usize, target: usize) -> Self {
        Gate { kind: GateKind::Cnot, qubits: vec![control, target] }
    }
    pub fn swap(a: usize, b: usize) -> Self {
        Gate { kind: GateKind::Swap, qubits: vec![a, b] }
    }
    pub fn crd(d: u32, control: usize, target: usize) -> Self {
        Gate { kind: GateKind::CRd { d, adjoint: false }, qubits: vec![control, target] }
    }
    pub fn crd_adjoint(d: u32, control: usize, target: usize) -> Self {
        Gate { kind: GateKind::CRd { d, adjoint: true }, qubits: vec![control, target] }
    }

    /// The gate's unitary on its own qubits; first listed qubit is the most
    /// significant matrix bit.
    pub fn matrix(&self) -> Matrix<F> {
        match &self.kind {
            GateKind::CRd { d, adjoint } => {
                let mut m = Matrix::identity(4);
                m[(3, 3)] = rd_phase::<F>(*d, *adjoint);
                m
            }
            GateKind::Cnot => cnot_matrix(),
            GateKind::Swap => swap_matrix(),
            GateKind::Generic2Q(m) => m.clone(),
            GateKind::PauliRot { axes, angle } => pauli_rotation_matrix(axes, *angle),
            GateKind::ControlledPauliRot { axes, angle } => {
                controlled_matrix(&pauli_rotation_matrix(axes, *angle))
            }
            GateKind::ControlledMatrix(m) => controlled_matrix(m),
            one_q => matrix_1q(one_q),
        }
    }

    /// Apply to a state; controlled kinds use the control-aware kernel.
    pub fn apply(&self, state: &StateVector<F>) -> Result<StateVector<F>> {
        match &self.kind {
            GateKind::ControlledMatrix(m) => {
                state.apply_matrix_controlled(&self.qubits[..1], m, &self.qubits[1..])
            }
            GateKind::ControlledPauliRot { axes, angle } => state.apply_matrix_controlled(
                &self.qubits[..1],
                &pauli_rotation_matrix(axes, *angle),
                &self.qubits[1..],
            ),
            _ if self.qubits.len() == 1 => state.apply_1q(&self.matrix(), self.qubits[0]),
            _ => state.apply_matrix(&self.matrix(), &self.qubits),
        }
    }

    /// Serialized mnemonic used by the circuit text format, when one exists.
    pub fn mnemonic(&self) -> Option<String> {
        match &self.kind {
            GateKind::H => Some(format!("H {}", self.qubits[0])),
            GateKind::T => Some(format!("T {}", self.qubits[0])),
            GateKind::X => Some(format!("X {}", self.qubits[0])),
            GateKind::Z => Some(format!("Z {}", self.qubits[0])),
            GateKind::S => Some(format!("S {}", self.qubits[0])),
            GateKind::Cnot => Some(format!("CNOT {} {}", self.qubits[0], self.qubits[1])),
            GateKind::Swap => Some(format!("SWAP {} {}", self.qubits[0], self.qubits[1])),
            GateKind::CRd { d, adjoint: false } => {
                Some(format!("RD {} {} {}", d, self.qubits[0], self.qubits[1]))
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hadamard_matrix() {
        let h = matrix_1q::<f64>(&GateKind::H);
        let inv = 1.0 / 2.0f64.sqrt();
        assert!((h[(0, 0)].re - inv).abs() < 1e-15);
        assert!((h[(1, 1)].re + inv).abs() < 1e-15);
        assert!(h.unitarity_residual() < 1e-15);
    }

    #[test]
    fn rd2_equals_t() {
        let rd = matrix_1q::<f64>(&GateKind::Rd { d: 2, adjoint: false });
        let t = matrix_1q::<f64>(&GateKind::T);
        assert!(rd.sub(&t).max_abs() < 1e-15);
    }

    #[test]
    fn t_squared_is_s() {
        let t = matrix_1q::<f64>(&GateKind::T);
        let s = matrix_1q::<f64>(&GateKind::S);
        assert!(t.mul(&t).sub(&s).max_abs() < 1e-15);
    }

    #[test]
    fn all_named_gates_unitary() {
        let kinds: Vec<GateKind<f64>> = vec![
            GateKind::H,
            GateKind::T,
            GateKind::X,
            GateKind::Z,
            GateKind::S,
            GateKind::Rd { d: 3, adjoint: true },
        ];
        for k in kinds {
            assert!(matrix_1q(&k).unitarity_residual() < 1e-10);
        }
        assert!(cnot_matrix::<f64>().unitarity_residual() < 1e-10);
        assert!(swap_matrix::<f64>().unitarity_residual() < 1e-10);
        let rot = pauli_rotation_matrix::<f64>(&[Pauli::X, Pauli::Z], 0.37);
        assert!(rot.unitarity_residual() < 1e-12);
        assert!(controlled_matrix(&rot).unitarity_residual() < 1e-12);
    }

    #[test]
    fn gate_validation() {
        assert!(Gate::<f64>::new(GateKind::Cnot, vec![1, 1]).is_err());
        assert!(Gate::<f64>::new(GateKind::H, vec![0, 1]).is_err());
        assert!(Gate::<f64>::new(GateKind::Rd { d: 0, adjoint: false }, vec![0]).is_err());
    }
}
