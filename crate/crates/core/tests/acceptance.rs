//! End-to-end acceptance suite. Each criterion is one test that prints a
//! single PASS line on success (visible with `--nocapture`); a failed
//! criterion fails its test.
//!
//! The Monte Carlo criteria are heavy by design (10⁵ trials per point where
//! stated); expect this suite to take a few minutes.

use qforge_core::hamiltonian::{PauliHamiltonian, PauliTerm};
use qforge_core::phasest::{
    default_time_unit, estimate_phase, phase_estimation_circuit, spectrum_histogram,
    time_register_distribution, EvolutionMode, PhaseEstimationConfig,
};
use qforge_core::qft::qft_circuit;
use qforge_core::scalar::cis;
use qforge_core::seed::child_rng;
use qforge_core::statevec::helstrom_success;
use qforge_core::surface::{
    decode_mwpm, exhaustive_logical_rate, is_logical_failure, run_trials, sample_errors,
    syndrome_of, threshold_estimate, union_bound, verify_code_conditions, SurfaceLattice,
};
use qforge_core::trotter::{commutator_bound, operator_error, trotter_evolve, TrotterPlan};
use qforge_core::{Matrix, Pauli, StateVector64, C};
use std::f64::consts::PI;

fn pass(n: usize, what: &str) {
    println!("ACCEPTANCE {n:02}: PASS - {what}");
}

fn ising_chain_4() -> PauliHamiltonian<f64> {
    let mut terms = Vec::new();
    for i in 0..3 {
        terms.push(PauliTerm::new(1.0, [(i, Pauli::Z), (i + 1, Pauli::Z)]));
    }
    for i in 0..4 {
        terms.push(PauliTerm::new(1.0, [(i, Pauli::X)]));
    }
    PauliHamiltonian::new(4, terms, 2, 1.0).unwrap()
}

#[test]
fn acceptance_01_threshold_location() {
    let ds = [3usize, 5, 7];
    let grid = [0.08f64, 0.09, 0.10, 0.11, 0.12];
    let est = threshold_estimate(&ds, &grid, 20_000, 20_260_823).unwrap();
    assert!(
        (0.09..=0.115).contains(&est.epsilon0),
        "epsilon0 {} outside [0.09, 0.115] (crossings {:?})",
        est.epsilon0,
        est.crossings
    );
    pass(1, &format!("threshold epsilon0 = {:.4}", est.epsilon0));
}

#[test]
fn acceptance_02_monte_carlo_matches_exhaustive_oracle() {
    let lat = SurfaceLattice::build(3).unwrap();
    let trials = 100_000usize;
    for (i, eps) in [0.02f64, 0.05, 0.10].into_iter().enumerate() {
        let exact = exhaustive_logical_rate(&lat, eps).unwrap();
        let stats = run_trials(&lat, eps, trials, 9_100 + i as u64).unwrap();
        let sigma = (exact * (1.0 - exact) / trials as f64).sqrt();
        assert!(
            (stats.p_logical - exact).abs() <= 3.0 * sigma,
            "eps={eps}: mc {} vs exact {exact} (sigma {sigma})",
            stats.p_logical
        );
    }
    pass(2, "d=3 Monte Carlo within 3 sigma of the exhaustive oracle");
}

#[test]
fn acceptance_03_union_bound_dominates() {
    for d in [3usize, 5] {
        let lat = SurfaceLattice::build(d).unwrap();
        for eps in [0.01f64, 0.02] {
            let stats = run_trials(&lat, eps, 100_000, 9_200 + d as u64).unwrap();
            let bound = union_bound(d, eps);
            assert!(
                stats.ci_high <= bound,
                "d={d} eps={eps}: ci_high {} above bound {bound}",
                stats.ci_high
            );
        }
    }
    pass(3, "union bound dominates the 95% CI at eps in {0.01, 0.02}");
}

#[test]
fn acceptance_04_distance_suppression() {
    let eps = 0.05f64;
    let trials = 100_000usize;
    let mut prev: Option<(f64, f64)> = None;
    for d in [3usize, 5, 7] {
        let lat = SurfaceLattice::build(d).unwrap();
        let stats = run_trials(&lat, eps, trials, 9_300 + d as u64).unwrap();
        let sigma = ((stats.p_logical * (1.0 - stats.p_logical)).max(1e-9) / trials as f64).sqrt();
        if let Some((p_prev, s_prev)) = prev {
            let gap = p_prev - stats.p_logical;
            let combined = (sigma * sigma + s_prev * s_prev).sqrt();
            assert!(
                gap > 3.0 * combined,
                "d={d}: gap {gap} below 3 sigma ({combined})"
            );
        }
        prev = Some((stats.p_logical, sigma));
    }
    pass(4, "p_logical drops by >3 sigma from d=3 to 5 to 7 at eps=0.05");
}

#[test]
fn acceptance_05_qft_equals_dft() {
    for m in 1..=6usize {
        let u = qft_circuit::<f64>(m, true).unwrap().unitary().unwrap();
        let n = 1usize << m;
        let scale = 1.0 / (n as f64).sqrt();
        let dft = Matrix::from_fn(n, |k, x| {
            let theta = 2.0 * PI * (k as f64) * (x as f64) / n as f64;
            C::new(scale * theta.cos(), scale * theta.sin())
        });
        assert!(u.sub(&dft).max_abs() < 1e-10, "m={m}");
        let count = qft_circuit::<f64>(m, true).unwrap().gates().len();
        assert_eq!(count, m + m * (m - 1) / 2 + m / 2, "gate count m={m}");
    }
    pass(5, "QFT unitary equals the DFT matrix to 1e-10 for m = 1..6");
}

#[test]
fn acceptance_06_phase_estimation_exact_and_sampled() {
    // Representable phases: all mass in one bin, deterministically.
    let m = 5usize;
    let nn = 1usize << m;
    let psi = StateVector64::basis_state(1, "1").unwrap();
    for k0 in [0usize, 3, nn / 2, nn - 1] {
        let phi = k0 as f64 / nn as f64;
        let zero = C::new(0.0, 0.0);
        let one = C::new(1.0, 0.0);
        let u = Matrix::from_rows(&[&[one, zero], &[zero, cis(-2.0 * PI * phi)]]);
        let cfg = PhaseEstimationConfig::new(m, 200, 1.0).unwrap();
        let hist = estimate_phase(&u, &psi, &cfg, 77).unwrap();
        assert_eq!(hist.counts()[k0], 200, "k0={k0}: {:?}", hist.counts());
    }
    // Non-representable phase: sampled histogram within 5/sqrt(shots) total
    // variation of the brute-force distribution.
    let phi = 0.318f64;
    let zero = C::new(0.0, 0.0);
    let one = C::new(1.0, 0.0);
    let u = Matrix::from_rows(&[&[one, zero], &[zero, cis(-2.0 * PI * phi)]]);
    let shots = 10_000usize;
    let cfg = PhaseEstimationConfig::new(m, shots, 1.0).unwrap();
    let hist = estimate_phase(&u, &psi, &cfg, 78).unwrap();
    let circuit = phase_estimation_circuit(m, &u).unwrap();
    let mut amps = vec![C::new(0.0, 0.0); 1 << (m + 1)];
    amps[1] = C::new(1.0, 0.0);
    let initial = StateVector64::from_amplitudes(m + 1, amps).unwrap();
    let p = time_register_distribution(&circuit.execute(&initial).unwrap(), m);
    let tv: f64 = (0..nn)
        .map(|k| (hist.frequency(k) - p[k]).abs())
        .sum::<f64>()
        / 2.0;
    assert!(tv < 5.0 / (shots as f64).sqrt(), "tv {tv}");
    pass(6, "phase estimation exact on representable phases; sampled TV in bound");
}

#[test]
fn acceptance_07_spectroscopy_of_z() {
    // H = Z probed through |+⟩ with the default T = pi/2: eigenvalues ±1 sit
    // at phases ±1/4, i.e. bins 4 and 12 of a 4-bit register.
    let ham = PauliHamiltonian::new(1, vec![PauliTerm::new(1.0, [(0, Pauli::Z)])], 2, 1.0).unwrap();
    let t = default_time_unit(&ham);
    assert!((t - PI / 2.0).abs() < 1e-12);
    let psi = StateVector64::bloch_state(PI / 2.0, 0.0).unwrap();
    let cfg = PhaseEstimationConfig::new(4, 10_000, t).unwrap();
    let hist = spectrum_histogram(&ham, &psi, &cfg, &EvolutionMode::Exact, 314).unwrap();
    let f4 = hist.frequency(4);
    let f12 = hist.frequency(12);
    assert!((f4 - 0.5).abs() <= 0.02, "bin 4 weight {f4}");
    assert!((f12 - 0.5).abs() <= 0.02, "bin 12 weight {f12}");
    assert!((f4 + f12 - 1.0).abs() < 1e-12, "mass outside the two peaks");
    let peaks = hist.peaks(0.1);
    assert_eq!(peaks.len(), 2);
    let energies: Vec<f64> = peaks.iter().map(|p| p.energy.unwrap()).collect();
    assert!(energies.iter().any(|&e| (e - 1.0).abs() < 1e-9));
    assert!(energies.iter().any(|&e| (e + 1.0).abs() < 1e-9));
    pass(7, "H = Z spectrum: two peaks at E = ±1 with weight 0.5 ± 0.02");
}

#[test]
fn acceptance_08_trotter_single_step_law() {
    let ham = ising_chain_4();
    let bound = commutator_bound(&ham);
    let h = ham.term_bound();
    let m = ham.num_terms() as f64;
    let mut ratios = Vec::new();
    for delta in [0.1f64, 0.05, 0.025] {
        let plan = TrotterPlan::new(delta, 1, ham.num_terms()).unwrap();
        let err = operator_error(&ham, &plan).unwrap();
        let slack = 1.0 + 10.0 * delta * h * m;
        assert!(
            err <= bound * delta * delta * slack,
            "delta={delta}: err {err} above bound"
        );
        ratios.push(err / (delta * delta));
    }
    let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
    let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
    assert!((max - min) / max < 0.2, "ratios {ratios:?}");
    pass(8, "single-step Trotter error is quadratic and within the bound");
}

#[test]
fn acceptance_09_trotter_convergence() {
    let ham = ising_chain_4();
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
        assert!((ratio - 2.0).abs() <= 0.3, "ratio {ratio} ({errs:?})");
    }
    let psi = StateVector64::basis_state(4, "0101").unwrap();
    let exact = ham.exact_evolution(t, &psi).unwrap();
    let plan = TrotterPlan::new(t, 10_000, ham.num_terms()).unwrap();
    let approx = trotter_evolve(&ham, &plan, &psi).unwrap();
    let dist: f64 = exact
        .amplitudes()
        .iter()
        .zip(approx.amplitudes())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    assert!(dist < 1e-3, "state distance {dist}");
    pass(9, "halving the step halves the error; evolved state within 1e-3");
}

#[test]
fn acceptance_10_helstrom_bound() {
    let zero = StateVector64::basis_state(1, "0").unwrap();
    let plus = StateVector64::bloch_state(PI / 2.0, 0.0).unwrap();
    let p = helstrom_success(&zero, &plus, 0.5).unwrap();
    let expect = (PI / 8.0).cos().powi(2);
    assert!((p - expect).abs() < 1e-12, "{p} vs {expect}");
    pass(10, "Helstrom success for |0> vs |+> equals cos^2(pi/8) to 1e-12");
}

#[test]
fn acceptance_11_code_conditions() {
    let lat = SurfaceLattice::build(3).unwrap();
    let report = verify_code_conditions(&lat, 1).unwrap();
    assert!(report.passed(), "violation {:?}", report.first_violation);
    assert_eq!(report.pairs_checked, 1600);
    // The weight-3 logical Z string is exactly the kind of error the
    // conditions must reject.
    let (zbar, _) = lat.logical_operators();
    assert_eq!(zbar.len(), 3);
    let code = qforge_core::surface::CodeStates::<f64>::build(&lat).unwrap();
    let ez: qforge_core::surface::PauliError =
        zbar.iter().map(|&q| (q, Pauli::Z)).collect();
    let v = qforge_core::surface::check_error_pair(
        &code,
        &qforge_core::surface::PauliError::new(),
        &ez,
        1e-9,
    );
    assert!(v.is_some(), "logical Z must violate the conditions");
    pass(11, "QEC conditions hold at weight 1 and fail for the weight-3 logical");
}

#[test]
fn acceptance_12_property_suite() {
    // Determinism: identical seeds give identical Monte Carlo results.
    let lat = SurfaceLattice::build(5).unwrap();
    let a = run_trials(&lat, 0.07, 5_000, 5).unwrap();
    let b = run_trials(&lat, 0.07, 5_000, 5).unwrap();
    assert_eq!(a, b);
    // Decoder soundness: corrections always clear the syndrome.
    for trial in 0..500u64 {
        let mut rng = child_rng(86, trial);
        let chain = sample_errors(&lat, 0.1, &mut rng).unwrap();
        let syn = syndrome_of(&lat, &chain);
        let correction = decode_mwpm(&lat, &syn);
        let residual = chain.xor(&correction);
        assert!(syndrome_of(&lat, &residual).anyons.is_empty());
        // is_logical_failure accepts every such residual, and its verdict is
        // independent of which horizontal cut is inspected.
        let verdict = is_logical_failure(&lat, &residual).unwrap();
        for band in 0..lat.d() {
            assert_eq!(qforge_core::surface::cut_parity(&lat, &residual, band), verdict);
        }
    }
    // Determinism: identical seeds give identical histograms.
    let ham = PauliHamiltonian::new(1, vec![PauliTerm::new(1.0, [(0, Pauli::Z)])], 2, 1.0).unwrap();
    let psi = StateVector64::bloch_state(PI / 2.0, 0.0).unwrap();
    let cfg = PhaseEstimationConfig::new(4, 500, default_time_unit(&ham)).unwrap();
    let h1 = spectrum_histogram(&ham, &psi, &cfg, &EvolutionMode::Exact, 11).unwrap();
    let h2 = spectrum_histogram(&ham, &psi, &cfg, &EvolutionMode::Exact, 11).unwrap();
    assert_eq!(h1.counts(), h2.counts());
    pass(12, "determinism and decoder soundness properties hold");
}
