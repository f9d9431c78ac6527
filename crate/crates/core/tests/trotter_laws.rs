//! First-order Trotter error laws on the 4-qubit transverse-field Ising chain:
//! H = Σ_i Z_i Z_{i+1} + Σ_i X_i (open boundary, 7 terms, h = 1).

use qforge_core::hamiltonian::{PauliHamiltonian, PauliTerm};
use qforge_core::seed::child_rng;
use qforge_core::trotter::{
    commutator_bound, operator_error, trotter_evolve, trotter_step_matrix, TrotterPlan,
};
use qforge_core::{Pauli, StateVector64, C};
use rand::Rng;

fn ising_chain(n: usize) -> PauliHamiltonian<f64> {
    let mut terms = Vec::new();
    for i in 0..n - 1 {
        terms.push(PauliTerm::new(1.0, [(i, Pauli::Z), (i + 1, Pauli::Z)]));
    }
    for i in 0..n {
        terms.push(PauliTerm::new(1.0, [(i, Pauli::X)]));
    }
    PauliHamiltonian::new(n, terms, 2, 1.0).unwrap()
}

#[test]
fn commutator_accounting() {
    let ham = ising_chain(4);
    assert_eq!(ham.num_terms(), 7);
    assert!(ham.num_terms() <= 2 * ham.n_qubits());
    // Each ZZ bond fails to commute with exactly the two X fields it touches:
    // 6 pairs, each ‖[ZZ, X]‖ = 2, so the bound is ½·6·2 = 6.
    assert_eq!(ham.non_commuting_pairs(), 6);
    assert!(ham.non_commuting_pairs() <= 4 * ham.n_qubits());
    assert!((commutator_bound(&ham) - 6.0).abs() < 1e-6);
}

#[test]
fn single_step_error_is_quadratic() {
    let ham = ising_chain(4);
    let bound = commutator_bound(&ham);
    let h = ham.term_bound();
    let m = ham.num_terms() as f64;
    let mut ratios = Vec::new();
    for delta in [0.1f64, 0.05, 0.025] {
        let plan = TrotterPlan::new(delta, 1, ham.num_terms()).unwrap();
        let err = operator_error(&ham, &plan).unwrap();
        // Within the first-order bound, with slack for higher-order terms.
        let slack = 1.0 + 10.0 * delta * h * m;
        assert!(
            err <= bound * delta * delta * slack,
            "delta={delta}: err {err} vs bound {}",
            bound * delta * delta * slack
        );
        ratios.push(err / (delta * delta));
    }
    // err/Δ² must be constant to 20% across the ladder.
    let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
    assert!(
        (max - min) / max < 0.2,
        "ratios not constant: {ratios:?}"
    );
}

#[test]
fn halving_step_size_halves_error() {
    let ham = ising_chain(4);
    let t = 1.0f64;
    let errs: Vec<f64> = [10usize, 20, 40]
        .iter()
        .map(|&steps| {
            let plan = TrotterPlan::new(t, steps, ham.num_terms()).unwrap();
            operator_error(&ham, &plan).unwrap()
        })
        .collect();
    for w in errs.windows(2) {
        let ratio = w[0] / w[1];
        assert!(
            (ratio - 2.0).abs() < 0.3,
            "halving ratio {ratio} outside 2 ± 15% ({errs:?})"
        );
    }
}

#[test]
fn state_evolution_converges_to_exact() {
    let ham = ising_chain(4);
    let t = 1.0f64;
    let mut rng = child_rng(77, 0);
    let amps: Vec<C<f64>> = (0..16)
        .map(|_| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let psi = StateVector64::from_amplitudes(4, amps).unwrap();
    let exact = ham.exact_evolution(t, &psi).unwrap();
    let mut last = f64::INFINITY;
    for steps in [100usize, 1000, 10_000] {
        let plan = TrotterPlan::new(t, steps, ham.num_terms()).unwrap();
        let approx = trotter_evolve(&ham, &plan, &psi).unwrap();
        let dist: f64 = exact
            .amplitudes()
            .iter()
            .zip(approx.amplitudes())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(dist < last, "error must shrink with more steps");
        last = dist;
    }
    assert!(last < 1e-3, "final distance {last}");
}

#[test]
fn state_evolution_matches_step_matrix_oracle() {
    let ham = ising_chain(3);
    let plan = TrotterPlan::new(0.7, 5, ham.num_terms()).unwrap();
    let psi = StateVector64::basis_state(3, "010").unwrap();
    let fast = trotter_evolve(&ham, &plan, &psi).unwrap();
    let u = trotter_step_matrix(&ham, plan.delta, &plan.ordering)
        .unwrap()
        .pow(plan.steps as u64);
    let slow = u.mul_vec(psi.amplitudes());
    for (a, b) in fast.amplitudes().iter().zip(&slow) {
        assert!((a - b).norm() < 1e-10);
    }
}
