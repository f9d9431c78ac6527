//! Single-qubit Pauli operators and small helpers shared by the gate set and
//! the Hamiltonian machinery.

use crate::linalg::Matrix;
use crate::scalar::{Scalar, C};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix<F: Scalar>(self) -> Matrix<F> {
        let z = C::new(F::zero(), F::zero());
        let one = C::new(F::one(), F::zero());
        let mone = C::new(-F::one(), F::zero());
        let i = C::new(F::zero(), F::one());
        let mi = C::new(F::zero(), -F::one());
        match self {
            Pauli::X => Matrix::from_rows(&[&[z, one], &[one, z]]),
            Pauli::Y => Matrix::from_rows(&[&[z, mi], &[i, z]]),
            Pauli::Z => Matrix::from_rows(&[&[one, z], &[z, mone]]),
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'X' | 'x' => Some(Pauli::X),
            'Y' | 'y' => Some(Pauli::Y),
            'Z' | 'z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pauli::X => write!(f, "X"),
            Pauli::Y => write!(f, "Y"),
            Pauli::Z => write!(f, "Z"),
        }
    }
}

/// Tensor product of the listed Paulis, first entry most significant.
pub fn pauli_string_matrix<F: Scalar>(axes: &[Pauli]) -> Matrix<F> {
    let mut m = Matrix::identity(1);
    for p in axes {
        m = m.kron(&p.matrix());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_matrices_square_to_identity() {
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            let m = p.matrix::<f64>();
            assert!(m.mul(&m).sub(&Matrix::identity(2)).max_abs() < 1e-15);
            assert!(m.unitarity_residual() < 1e-15);
        }
    }

    #[test]
    fn string_matrix_is_tensor() {
        let zz = pauli_string_matrix::<f64>(&[Pauli::Z, Pauli::Z]);
        for k in 0..4usize {
            let sign = if k.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            assert!((zz[(k, k)].re - sign).abs() < 1e-15);
        }
    }
}
