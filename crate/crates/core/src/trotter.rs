//! First-order (Lie-Trotter) product-formula evolution and its error analysis.
//!
//! One step approximates e^{−iHΔ} by Π_a e^{−i c_a Δ P_a} in the plan's term
//! ordering; the full evolution repeats the step `steps` times. The leading
//! single-step error is governed by the pairwise term commutators, bounded by
//! [`commutator_bound`] times Δ².

use crate::error::{Error, Result};
use crate::gate::{Gate, GateKind};
use crate::hamiltonian::PauliHamiltonian;
use crate::linalg::Matrix;
use crate::pauli::Pauli;
use crate::scalar::{Scalar, C};
use crate::statevec::StateVector;
use std::collections::BTreeSet;

/// Oracle cap for dense operator-error evaluation.
pub const MAX_ERROR_QUBITS: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct TrotterPlan<F: Scalar> {
    pub delta: F,
    pub steps: usize,
    /// Term permutation applied within each step; identity by default.
    pub ordering: Vec<usize>,
}

impl<F: Scalar> TrotterPlan<F> {
    /// Evenly divide total time `t` into `steps` steps, identity ordering.
    pub fn new(t: F, steps: usize, num_terms: usize) -> Result<Self> {
        if steps < 1 {
            return Err(Error::InvalidArgument("plan needs at least one step".into()));
        }
        Ok(TrotterPlan {
            delta: t / F::from_f64_c(steps as f64),
            steps,
            ordering: (0..num_terms).collect(),
        })
    }

    pub fn with_ordering(mut self, ordering: Vec<usize>) -> Result<Self> {
        let mut seen: Vec<bool> = vec![false; self.ordering.len()];
        if ordering.len() != self.ordering.len() {
            return Err(Error::InvalidArgument(
                "ordering length must equal the term count".into(),
            ));
        }
        for &idx in &ordering {
            if idx >= seen.len() || seen[idx] {
                return Err(Error::InvalidArgument(
                    "ordering must be a permutation of term indices".into(),
                ));
            }
            seen[idx] = true;
        }
        self.ordering = ordering;
        Ok(self)
    }

    pub fn total_time(&self) -> F {
        self.delta * F::from_f64_c(self.steps as f64)
    }
}

/// One rotation gate e^{−i c_a Δ P_a} per term, in `ordering` order.
pub fn trotter_step_gates<F: Scalar>(
    ham: &PauliHamiltonian<F>,
    delta: F,
    ordering: &[usize],
) -> Result<Vec<Gate<F>>> {
    let mut gates = Vec::with_capacity(ordering.len());
    for &idx in ordering {
        let term = ham
            .terms()
            .get(idx)
            .ok_or_else(|| Error::InvalidArgument(format!("ordering index {idx} out of range")))?;
        let qubits: Vec<usize> = term.support().collect();
        let axes: Vec<Pauli> = term.paulis.values().copied().collect();
        gates.push(Gate::new(
            GateKind::PauliRot {
                axes,
                angle: term.coefficient * delta,
            },
            qubits,
        )?);
    }
    Ok(gates)
}

/// Controlled version of the step: each rotation conditioned on `control`.
pub fn controlled_trotter_step_gates<F: Scalar>(
    ham: &PauliHamiltonian<F>,
    delta: F,
    ordering: &[usize],
    control: usize,
) -> Result<Vec<Gate<F>>> {
    let mut gates = Vec::with_capacity(ordering.len());
    for &idx in ordering {
        let term = ham
            .terms()
            .get(idx)
            .ok_or_else(|| Error::InvalidArgument(format!("ordering index {idx} out of range")))?;
        let mut qubits = vec![control];
        qubits.extend(term.support());
        let axes: Vec<Pauli> = term.paulis.values().copied().collect();
        gates.push(Gate::new(
            GateKind::ControlledPauliRot {
                axes,
                angle: term.coefficient * delta,
            },
            qubits,
        )?);
    }
    Ok(gates)
}

/// Apply `plan.steps` repetitions of the step-gate sequence to `s`.
pub fn trotter_evolve<F: Scalar>(
    ham: &PauliHamiltonian<F>,
    plan: &TrotterPlan<F>,
    s: &StateVector<F>,
) -> Result<StateVector<F>> {
    if s.n_qubits() != ham.n_qubits() {
        return Err(Error::DimensionMismatch(
            "state and hamiltonian qubit counts differ".into(),
        ));
    }
    let gates = trotter_step_gates(ham, plan.delta, &plan.ordering)?;
    let mut state = s.clone();
    for _ in 0..plan.steps {
        for g in &gates {
            state = g.apply(&state)?;
        }
    }
    Ok(state)
}

/// Δ = δ / (C·h²·M·t), then steps = ⌈t/Δ⌉ and Δ recomputed as t/steps.
pub fn step_size_for<F: Scalar>(
    delta_target_error: F,
    ham: &PauliHamiltonian<F>,
    t: F,
    c: F,
) -> Result<TrotterPlan<F>> {
    if delta_target_error <= F::zero() || t <= F::zero() || c <= F::zero() {
        return Err(Error::InvalidArgument(
            "target error, time, and constant must be positive".into(),
        ));
    }
    let h = ham.term_bound();
    let m = F::from_f64_c(ham.num_terms() as f64);
    let delta = delta_target_error / (c * h * h * m * t);
    let steps = (t / delta).to_f64_c().ceil().max(1.0) as usize;
    TrotterPlan::new(t, steps, ham.num_terms())
}

/// Dense matrix of one Trotter step (oracle substrate).
pub fn trotter_step_matrix<F: Scalar>(
    ham: &PauliHamiltonian<F>,
    delta: F,
    ordering: &[usize],
) -> Result<Matrix<F>> {
    let n = ham.n_qubits();
    if n > MAX_ERROR_QUBITS {
        return Err(Error::QubitCountOutOfRange(n, 1, MAX_ERROR_QUBITS));
    }
    let mut u = Matrix::identity(1 << n);
    for gate in trotter_step_gates(ham, delta, ordering)? {
        let g = crate::circuit::embed_unitary(&gate.matrix(), &gate.qubits, n);
        u = g.mul(&u);
    }
    Ok(u)
}

/// Spectral-norm distance ‖Ũ(t) − e^{−iHt}‖∞ for the plan's full evolution.
pub fn operator_error<F: Scalar>(ham: &PauliHamiltonian<F>, plan: &TrotterPlan<F>) -> Result<F> {
    let step = trotter_step_matrix(ham, plan.delta, &plan.ordering)?;
    let approx = step.pow(plan.steps as u64);
    let exact = ham.exact_evolution_matrix(plan.total_time())?;
    Ok(approx.sub(&exact).spectral_norm(F::from_f64_c(1e-8)))
}

/// ½ Σ_{a<b} ‖[H_a, H_b]‖∞, each commutator evaluated on the pair's joint
/// support (≤ 2k qubits), never the full space.
pub fn commutator_bound<F: Scalar>(ham: &PauliHamiltonian<F>) -> F {
    let terms = ham.terms();
    let mut total = F::zero();
    for a in 0..terms.len() {
        for b in (a + 1)..terms.len() {
            let joint: BTreeSet<usize> = terms[a].support().chain(terms[b].support()).collect();
            let overlap = terms[a].support().any(|q| terms[b].paulis.contains_key(&q));
            if !overlap {
                continue; // disjoint supports commute exactly
            }
            let joint: Vec<usize> = joint.into_iter().collect();
            let ma = embed_term_on(&terms[a].paulis, terms[a].coefficient, &joint);
            let mb = embed_term_on(&terms[b].paulis, terms[b].coefficient, &joint);
            let comm = ma.mul(&mb).sub(&mb.mul(&ma));
            total += comm.spectral_norm(F::from_f64_c(1e-8));
        }
    }
    total * F::from_f64_c(0.5)
}

/// c·P embedded on an explicit qubit list (identity on listed qubits the term
/// does not touch); `qubits[0]` is the most significant matrix bit.
fn embed_term_on<F: Scalar>(
    paulis: &std::collections::BTreeMap<usize, Pauli>,
    coefficient: F,
    qubits: &[usize],
) -> Matrix<F> {
    let dim = 1usize << qubits.len();
    let mut m = Matrix::zeros(dim);
    let coeff = C::new(coefficient, F::zero());
    for col in 0..dim {
        let mut row = col;
        let mut phase = C::new(F::one(), F::zero());
        let i = C::new(F::zero(), F::one());
        for (pos, q) in qubits.iter().enumerate() {
            let Some(&p) = paulis.get(q) else { continue };
            let bitpos = qubits.len() - 1 - pos;
            let bit = (col >> bitpos) & 1;
            match p {
                Pauli::X => row ^= 1 << bitpos,
                Pauli::Y => {
                    row ^= 1 << bitpos;
                    phase = phase * if bit == 0 { i } else { -i };
                }
                Pauli::Z => {
                    if bit == 1 {
                        phase = -phase;
                    }
                }
            }
        }
        m[(row, col)] += coeff * phase;
    }
    m
}
