//! Brute-force single-qubit compilation over the {H, T} alphabet.
//!
//! The search enumerates all distinct products of length ≤ max_depth by
//! iterative deepening, skipping words containing HH or eight consecutive T's
//! (both reduce exactly to shorter words, so nothing is lost). Candidates are
//! visited in length order and lexicographically (H before T) within a length,
//! making the result deterministic. The distance metric is the operator-norm
//! distance minimized over global phase, which for 2×2 unitaries has the
//! closed form sqrt(2 − |tr(U†V)|).

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{cis, Scalar, C};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphabetGate {
    H,
    T,
}

impl fmt::Display for AlphabetGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphabetGate::H => write!(f, "H"),
            AlphabetGate::T => write!(f, "T"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum CompileOutcome<F: Scalar> {
    /// First sequence (length, then lexicographic order) within `eps`.
    Found {
        sequence: Vec<AlphabetGate>,
        distance: F,
    },
    /// No sequence of length ≤ max_depth reaches `eps`; not an error.
    NotFound {
        best_distance: F,
        best_sequence: Vec<AlphabetGate>,
    },
}

/// Operator-norm distance between 2×2 unitaries, minimized over global phase.
pub fn phase_distance<F: Scalar>(u: &Matrix<F>, v: &Matrix<F>) -> F {
    debug_assert_eq!(u.dim(), 2);
    debug_assert_eq!(v.dim(), 2);
    dist2(&mat2_of(u), &mat2_of(v))
}

type M2<F> = [C<F>; 4];

fn mat2_of<F: Scalar>(m: &Matrix<F>) -> M2<F> {
    [m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]]
}

fn mul2<F: Scalar>(a: &M2<F>, b: &M2<F>) -> M2<F> {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

/// min_φ ‖U − e^{iφ}V‖∞. The closed form sqrt(2 − |tr(U†V)|) is exact but
/// loses half the significant digits near zero (sqrt of a cancellation); the
/// explicit singular value of U − e^{i arg tr}V is accurate near zero but
/// breaks down when tr ≈ 0. Each only ever overestimates where it is weak, so
/// the minimum of the two is accurate everywhere.
fn dist2<F: Scalar>(target: &M2<F>, v: &M2<F>) -> F {
    let mut tr = C::new(F::zero(), F::zero());
    for k in 0..4 {
        tr += target[k].conj() * v[k];
    }
    let closed = (F::from_f64_c(2.0) - tr.norm()).max(F::zero()).sqrt();
    let phase = if tr.norm() > F::zero() {
        tr / C::new(tr.norm(), F::zero())
    } else {
        C::new(F::one(), F::zero())
    };
    let m: M2<F> = [
        target[0] - phase.conj() * v[0],
        target[1] - phase.conj() * v[1],
        target[2] - phase.conj() * v[2],
        target[3] - phase.conj() * v[3],
    ];
    // Largest singular value of the 2×2 difference.
    let frob2: F = m.iter().map(|c| c.norm_sqr()).sum();
    let det = (m[0] * m[3] - m[1] * m[2]).norm_sqr();
    let disc = (frob2 * frob2 - F::from_f64_c(4.0) * det).max(F::zero()).sqrt();
    let sigma = ((frob2 + disc) * F::from_f64_c(0.5)).sqrt();
    closed.min(sigma)
}

struct Search<F: Scalar> {
    target: M2<F>,
    h: M2<F>,
    t: M2<F>,
    eps: F,
    best_distance: F,
    best_sequence: Vec<AlphabetGate>,
}

impl<F: Scalar> Search<F> {
    /// Depth-first over reduced words of exactly `remaining` more gates.
    /// `product` is the operator for the gates chosen so far (first gate
    /// rightmost). Returns the found sequence in application order.
    fn dfs(
        &mut self,
        product: &M2<F>,
        prefix: &mut Vec<AlphabetGate>,
        remaining: usize,
        t_run: usize,
        last_h: bool,
    ) -> Option<Vec<AlphabetGate>> {
        if remaining == 0 {
            let d = dist2(&self.target, product);
            if d < self.best_distance {
                self.best_distance = d;
                self.best_sequence = prefix.clone();
            }
            if d <= self.eps {
                return Some(prefix.clone());
            }
            return None;
        }
        if !last_h {
            let next = mul2(&self.h, product);
            prefix.push(AlphabetGate::H);
            if let Some(hit) = self.dfs(&next, prefix, remaining - 1, 0, true) {
                return Some(hit);
            }
            prefix.pop();
        }
        if t_run < 7 {
            let next = mul2(&self.t, product);
            prefix.push(AlphabetGate::T);
            if let Some(hit) = self.dfs(&next, prefix, remaining - 1, t_run + 1, false) {
                return Some(hit);
            }
            prefix.pop();
        }
        None
    }
}

/// Exhaustive search for a {H, T} word within operator-norm distance `eps`
/// of `target` (up to global phase), among all words of length ≤ `max_depth`.
pub fn compile_1q<F: Scalar>(
    target: &Matrix<F>,
    eps: F,
    max_depth: usize,
) -> Result<CompileOutcome<F>> {
    if target.dim() != 2 {
        return Err(Error::DimensionMismatch("compile target must be 2x2".into()));
    }
    target.require_unitary(F::from_f64_c(1e-8))?;
    if eps <= F::zero() {
        return Err(Error::InvalidArgument("eps must be positive".into()));
    }
    let inv_sqrt2 = C::new(F::one() / F::from_f64_c(2.0).sqrt(), F::zero());
    let zero = C::new(F::zero(), F::zero());
    let one = C::new(F::one(), F::zero());
    let mut search = Search {
        target: mat2_of(target),
        h: [inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2],
        t: [one, zero, zero, cis(F::FRAC_PI_4())],
        eps,
        best_distance: F::infinity(),
        best_sequence: Vec::new(),
    };
    let identity: M2<F> = [one, zero, zero, one];
    for len in 0..=max_depth {
        let mut prefix = Vec::with_capacity(len);
        if let Some(sequence) = search.dfs(&identity, &mut prefix, len, 0, false) {
            let mut p = identity;
            for g in &sequence {
                p = match g {
                    AlphabetGate::H => mul2(&search.h, &p),
                    AlphabetGate::T => mul2(&search.t, &p),
                };
            }
            let distance = dist2(&search.target, &p);
            return Ok(CompileOutcome::Found { sequence, distance });
        }
    }
    Ok(CompileOutcome::NotFound {
        best_distance: search.best_distance,
        best_sequence: search.best_sequence,
    })
}

/// Multiply a compiled word back out, in application order.
pub fn sequence_matrix<F: Scalar>(sequence: &[AlphabetGate]) -> Matrix<F> {
    let h = crate::gate::matrix_1q::<F>(&crate::gate::GateKind::H);
    let t = crate::gate::matrix_1q::<F>(&crate::gate::GateKind::T);
    let mut m = Matrix::identity(2);
    for g in sequence {
        let gm = match g {
            AlphabetGate::H => &h,
            AlphabetGate::T => &t,
        };
        m = gm.mul(&m);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::{matrix_1q, GateKind};

    #[test]
    fn target_in_alphabet() {
        let h = matrix_1q::<f64>(&GateKind::H);
        match compile_1q(&h, 1e-10, 4).unwrap() {
            CompileOutcome::Found { sequence, distance } => {
                assert_eq!(sequence, vec![AlphabetGate::H]);
                assert!(distance < 1e-10);
            }
            other => panic!("expected Found, got {other:?}"),
        }
    }

    #[test]
    fn s_is_two_ts() {
        let s = matrix_1q::<f64>(&GateKind::S);
        match compile_1q(&s, 1e-10, 4).unwrap() {
            CompileOutcome::Found { sequence, .. } => {
                assert_eq!(sequence, vec![AlphabetGate::T, AlphabetGate::T]);
            }
            other => panic!("expected Found, got {other:?}"),
        }
    }

    #[test]
    fn not_found_is_soft() {
        // A rotation far from anything reachable in two gates.
        let rot = crate::gate::pauli_rotation_matrix::<f64>(&[crate::pauli::Pauli::Y], 0.4321);
        match compile_1q(&rot, 1e-6, 2).unwrap() {
            CompileOutcome::NotFound { best_distance, .. } => {
                assert!(best_distance > 1e-6);
            }
            other => panic!("expected NotFound, got {other:?}"),
        }
    }

    #[test]
    fn phase_distance_ignores_global_phase() {
        let h = matrix_1q::<f64>(&GateKind::H);
        let phased = h.scale(C::from_polar(1.0, 1.234));
        assert!(phase_distance(&h, &phased) < 1e-12);
        let x = matrix_1q::<f64>(&GateKind::X);
        let id = Matrix::identity(2);
        assert!((phase_distance(&id, &x) - 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_targets() {
        let bad = Matrix::from_rows(&[
            &[C::new(2.0, 0.0), C::new(0.0, 0.0)],
            &[C::new(0.0, 0.0), C::new(1.0, 0.0)],
        ]);
        assert!(compile_1q(&bad, 0.1, 3).is_err());
        let h = matrix_1q::<f64>(&GateKind::H);
        assert!(compile_1q(&h, -0.1, 3).is_err());
    }
}
