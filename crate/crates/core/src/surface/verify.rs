//! Quantum error-correction condition verification on the d = 3 code.
//!
//! Codewords are built directly: |0̄⟩ projects |0…0⟩ onto the +1 eigenspace of
//! every vertex check A_v (the X-star on the vertex's incident edges), and
//! |1̄⟩ = X̄|0̄⟩ (|0̄⟩ is by construction the +1 eigenstate of Z̄, so the basis
//! flip is the anticommuting X string). The verified conditions, for Pauli
//! errors E_a, E_b of bounded weight:
//!   1. bit-perp:    E_a|0̄⟩ ⊥ E_b|1̄⟩
//!   2. phase-perp:  E_a(|0̄⟩+|1̄⟩) ⊥ E_b(|0̄⟩−|1̄⟩)
//!   3. equality:    ⟨0̄|E_a†E_b|0̄⟩ = ⟨1̄|E_a†E_b|1̄⟩

use super::lattice::SurfaceLattice;
use crate::error::{Error, Result};
use crate::hamiltonian::apply_pauli_string_to_index;
use crate::pauli::Pauli;
use crate::scalar::{Scalar, C};
use std::collections::BTreeMap;

/// A Pauli error: qubit (edge) index → Pauli factor. Empty = identity.
pub type PauliError = BTreeMap<usize, Pauli>;

pub fn error_label(e: &PauliError) -> String {
    if e.is_empty() {
        return "I".to_string();
    }
    e.iter()
        .map(|(q, p)| format!("{p}{q}"))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub e_a: String,
    pub e_b: String,
    pub condition: &'static str,
    pub magnitude: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CodeConditionReport {
    pub d: usize,
    pub max_error_weight: usize,
    pub pairs_checked: usize,
    pub first_violation: Option<Violation>,
}

impl CodeConditionReport {
    pub fn passed(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// The four reference states: |0̄⟩, |1̄⟩, |+̄⟩, |−̄⟩ as raw amplitude vectors.
pub struct CodeStates<F: Scalar> {
    pub n: usize,
    pub zero_bar: Vec<C<F>>,
    pub one_bar: Vec<C<F>>,
    pub plus_bar: Vec<C<F>>,
    pub minus_bar: Vec<C<F>>,
}

impl<F: Scalar> CodeStates<F> {
    pub fn build(lat: &SurfaceLattice) -> Result<Self> {
        let n = lat.n_edges();
        if n > 16 {
            return Err(Error::InvalidDistance(lat.d()));
        }
        let dim = 1usize << n;
        let mut zero_bar = vec![C::new(F::zero(), F::zero()); dim];
        zero_bar[0] = C::new(F::one(), F::zero());
        // Π_v (I + A_v)/2 applied sequentially; A_v|x⟩ = |x ^ star_mask⟩.
        for v in lat.interior_vertices() {
            let mask: usize = lat.vertex_star(v).iter().map(|&e| 1usize << e).sum();
            let old = zero_bar.clone();
            let half = F::from_f64_c(0.5);
            for x in 0..dim {
                zero_bar[x] = (old[x] + old[x ^ mask]) * C::new(half, F::zero());
            }
        }
        let nrm = crate::linalg::norm(&zero_bar);
        for a in zero_bar.iter_mut() {
            *a = *a / C::new(nrm, F::zero());
        }
        // The all-zeros seed is already a +1 eigenstate of the Z-string Z̄, so
        // the basis flip is the anticommuting partner: |1̄⟩ = X̄|0̄⟩, an X
        // string on the dual (left-to-right) path.
        let (_, xbar) = lat.logical_operators();
        let xmask: usize = xbar.iter().map(|&e| 1usize << e).sum();
        let one_bar: Vec<C<F>> = (0..dim).map(|x| zero_bar[x ^ xmask]).collect();
        let inv_sqrt2 = C::new(F::one() / F::from_f64_c(2.0).sqrt(), F::zero());
        let plus_bar: Vec<C<F>> = zero_bar
            .iter()
            .zip(&one_bar)
            .map(|(&a, &b)| (a + b) * inv_sqrt2)
            .collect();
        let minus_bar: Vec<C<F>> = zero_bar
            .iter()
            .zip(&one_bar)
            .map(|(&a, &b)| (a - b) * inv_sqrt2)
            .collect();
        Ok(CodeStates {
            n,
            zero_bar,
            one_bar,
            plus_bar,
            minus_bar,
        })
    }
}

pub fn apply_error<F: Scalar>(e: &PauliError, amps: &[C<F>]) -> Vec<C<F>> {
    let mut out = vec![C::new(F::zero(), F::zero()); amps.len()];
    for (col, &a) in amps.iter().enumerate() {
        let (row, phase) = apply_pauli_string_to_index::<F>(e, col);
        out[row] += phase * a;
    }
    out
}

fn inner<F: Scalar>(a: &[C<F>], b: &[C<F>]) -> C<F> {
    let mut acc = C::new(F::zero(), F::zero());
    for (x, y) in a.iter().zip(b) {
        acc += x.conj() * *y;
    }
    acc
}

/// Check the three conditions for one ordered pair; returns the first
/// violated condition, if any.
pub fn check_error_pair<F: Scalar>(
    code: &CodeStates<F>,
    e_a: &PauliError,
    e_b: &PauliError,
    tol: f64,
) -> Option<Violation> {
    let a0 = apply_error(e_a, &code.zero_bar);
    let b1 = apply_error(e_b, &code.one_bar);
    let bit = inner(&a0, &b1).norm().to_f64_c();
    if bit > tol {
        return Some(Violation {
            e_a: error_label(e_a),
            e_b: error_label(e_b),
            condition: "bit-perp",
            magnitude: bit,
        });
    }
    let ap = apply_error(e_a, &code.plus_bar);
    let bm = apply_error(e_b, &code.minus_bar);
    let phase = inner(&ap, &bm).norm().to_f64_c();
    if phase > tol {
        return Some(Violation {
            e_a: error_label(e_a),
            e_b: error_label(e_b),
            condition: "phase-perp",
            magnitude: phase,
        });
    }
    let b0 = apply_error(e_b, &code.zero_bar);
    let a1 = apply_error(e_a, &code.one_bar);
    let diff = (inner(&a0, &b0) - inner(&a1, &b1)).norm().to_f64_c();
    if diff > tol {
        return Some(Violation {
            e_a: error_label(e_a),
            e_b: error_label(e_b),
            condition: "matrix-element equality",
            magnitude: diff,
        });
    }
    None
}

/// All Pauli errors of weight ≤ `max_weight` on `n` qubits (identity first).
pub fn enumerate_errors(n: usize, max_weight: usize) -> Vec<PauliError> {
    let mut out = vec![PauliError::new()];
    let mut frontier = out.clone();
    for _ in 0..max_weight {
        let mut next = Vec::new();
        for base in &frontier {
            let start = base.keys().last().map_or(0, |&q| q + 1);
            for q in start..n {
                for p in [Pauli::X, Pauli::Y, Pauli::Z] {
                    let mut e = base.clone();
                    e.insert(q, p);
                    next.push(e);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Exhaustively verify the conditions for every ordered pair of errors of
/// weight ≤ `max_error_weight`, to tolerance 1e-9.
pub fn verify_code_conditions(
    lat: &SurfaceLattice,
    max_error_weight: usize,
) -> Result<CodeConditionReport> {
    if lat.d() != 3 {
        return Err(Error::InvalidDistance(lat.d()));
    }
    let code = CodeStates::<f64>::build(lat)?;
    let errors = enumerate_errors(code.n, max_error_weight);
    let mut pairs_checked = 0usize;
    for e_a in &errors {
        for e_b in &errors {
            pairs_checked += 1;
            if let Some(v) = check_error_pair(&code, e_a, e_b, 1e-9) {
                return Ok(CodeConditionReport {
                    d: lat.d(),
                    max_error_weight,
                    pairs_checked,
                    first_violation: Some(v),
                });
            }
        }
    }
    Ok(CodeConditionReport {
        d: lat.d(),
        max_error_weight,
        pairs_checked,
        first_violation: None,
    })
}
