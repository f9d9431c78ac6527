//! Phase estimation and Hamiltonian spectroscopy.
//!
//! Layout: data qubits occupy 0..n_data, the m-bit time register occupies
//! n_data..n_data+m with time bit 0 (least significant) at qubit n_data.
//! Sign convention: eigenvalues are λ = e^{−2πiφ} with φ ∈ [0, 1); outcome
//! bin k estimates φ = k/2^m. With that sign, the readout transform mapping
//! Σ_t λ^t|t⟩/√N to |k⟩ is the DFT with entries e^{+2πikx/N}/√N, i.e. the
//! QFT circuit with bit reversal.

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::gate::{Gate, GateKind};
use crate::hamiltonian::PauliHamiltonian;
use crate::linalg::Matrix;
use crate::qft::qft_gates_on;
use crate::scalar::{Scalar, C};
use crate::seed::child_rng;
use crate::statevec::StateVector;
use crate::trotter::{controlled_trotter_step_gates, TrotterPlan};
use rand::Rng;

/// Total register cap: data width + m.
pub const MAX_TOTAL_QUBITS: usize = 20;
pub const MAX_TIME_BITS: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseEstimationConfig<F: Scalar> {
    /// Time-register width: bits of phase precision.
    pub m: usize,
    pub shots: usize,
    /// Time unit T for Hamiltonian mode (e^{−iHT} is the stepped unitary).
    pub t_unit: F,
}

impl<F: Scalar> PhaseEstimationConfig<F> {
    pub fn new(m: usize, shots: usize, t_unit: F) -> Result<Self> {
        if m < 1 || m > MAX_TIME_BITS {
            return Err(Error::QubitCountOutOfRange(m, 1, MAX_TIME_BITS));
        }
        if shots < 1 {
            return Err(Error::InvalidArgument("shots must be >= 1".into()));
        }
        if t_unit <= F::zero() {
            return Err(Error::InvalidArgument("time unit must be positive".into()));
        }
        Ok(PhaseEstimationConfig { m, shots, t_unit })
    }
}

/// A located histogram peak.
#[derive(Clone, Debug, PartialEq)]
pub struct Peak<F: Scalar> {
    pub k: usize,
    /// φ = k/2^m.
    pub phase: F,
    /// Fraction of shots in the bin.
    pub weight: F,
    /// E = 2πφ'/T with φ' = φ − 1 for φ > ½ (set when T is known).
    pub energy: Option<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumHistogram<F: Scalar> {
    m: usize,
    counts: Vec<u64>,
    shots: usize,
    t_unit: Option<F>,
    warnings: Vec<String>,
}

impl<F: Scalar> SpectrumHistogram<F> {
    fn from_samples(m: usize, samples: impl IntoIterator<Item = usize>, t_unit: Option<F>) -> Self {
        let mut counts = vec![0u64; 1 << m];
        let mut shots = 0usize;
        for k in samples {
            counts[k] += 1;
            shots += 1;
        }
        SpectrumHistogram {
            m,
            counts,
            shots,
            t_unit,
            warnings: Vec::new(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn shots(&self) -> usize {
        self.shots
    }

    pub fn t_unit(&self) -> Option<F> {
        self.t_unit
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn push_warning(&mut self, w: impl Into<String>) {
        self.warnings.push(w.into());
    }

    pub fn frequency(&self, k: usize) -> F {
        F::from_f64_c(self.counts[k] as f64) / F::from_f64_c(self.shots as f64)
    }

    /// Bin with the most counts (smallest k on ties).
    pub fn mode_bin(&self) -> usize {
        let mut best = 0usize;
        for (k, &c) in self.counts.iter().enumerate() {
            if c > self.counts[best] {
                best = k;
            }
        }
        best
    }

    /// Circular local maxima with weight ≥ `min_weight`.
    pub fn peaks(&self, min_weight: F) -> Vec<Peak<F>> {
        let n = self.counts.len();
        let mut out = Vec::new();
        for k in 0..n {
            let c = self.counts[k];
            let left = self.counts[(k + n - 1) % n];
            let right = self.counts[(k + 1) % n];
            let weight = self.frequency(k);
            // Strict against the left neighbor breaks plateau ties once.
            if c > left && c >= right && weight >= min_weight {
                let phase = F::from_f64_c(k as f64) / F::from_f64_c(n as f64);
                let energy = self.t_unit.map(|t| {
                    let half = F::from_f64_c(0.5);
                    let signed = if phase > half { phase - F::one() } else { phase };
                    F::from_f64_c(2.0) * F::PI() * signed / t
                });
                out.push(Peak {
                    k,
                    phase,
                    weight,
                    energy,
                });
            }
        }
        out
    }
}

/// Phase-estimation circuit for the unitary `u` on the data register:
/// Hadamards on the time register, controlled-U^{2^j} conditioned on time
/// bit j, then the QFT readout on the time register.
pub fn phase_estimation_circuit<F: Scalar>(m: usize, u: &Matrix<F>) -> Result<Circuit<F>> {
    if !u.dim().is_power_of_two() || u.dim() < 2 {
        return Err(Error::DimensionMismatch(
            "unitary dimension must be a power of two >= 2".into(),
        ));
    }
    let n_data = u.dim().trailing_zeros() as usize;
    if m < 1 || m > MAX_TIME_BITS {
        return Err(Error::QubitCountOutOfRange(m, 1, MAX_TIME_BITS));
    }
    if n_data + m > MAX_TOTAL_QUBITS {
        return Err(Error::QubitCountOutOfRange(n_data + m, 2, MAX_TOTAL_QUBITS));
    }
    u.require_unitary(F::from_f64_c(1e-8))?;
    let mut circuit = Circuit::new(n_data + m);
    for j in 0..m {
        circuit.push(Gate::h(n_data + j))?;
    }
    // Data-register matrix convention: first listed target is the most
    // significant matrix bit, so list data qubits high-to-low.
    let data_hi_to_lo: Vec<usize> = (0..n_data).rev().collect();
    let mut power = u.clone(); // U^{2^j} by repeated squaring
    for j in 0..m {
        let mut qubits = vec![n_data + j];
        qubits.extend(&data_hi_to_lo);
        circuit.push(Gate::new(GateKind::ControlledMatrix(power.clone()), qubits)?)?;
        if j + 1 < m {
            power = power.mul(&power);
        }
    }
    let time_qubits: Vec<usize> = (n_data..n_data + m).collect();
    circuit.extend(qft_gates_on(&time_qubits, true))?;
    Ok(circuit)
}

/// Embed `psi` on the data qubits with the time register at |0…0⟩.
fn attach_time_register<F: Scalar>(psi: &StateVector<F>, m: usize) -> Result<StateVector<F>> {
    let n_data = psi.n_qubits();
    let mut amps = vec![C::new(F::zero(), F::zero()); 1 << (n_data + m)];
    amps[..1 << n_data].copy_from_slice(psi.amplitudes());
    StateVector::from_amplitudes(n_data + m, amps)
}

/// Marginal outcome distribution of the time register after the circuit.
pub fn time_register_distribution<F: Scalar>(final_state: &StateVector<F>, m: usize) -> Vec<F> {
    let n_data = final_state.n_qubits() - m;
    let mut p = vec![F::zero(); 1 << m];
    for (idx, a) in final_state.amplitudes().iter().enumerate() {
        p[idx >> n_data] = p[idx >> n_data] + a.norm_sqr();
    }
    p
}

fn sample_bin<F: Scalar>(p: &[F], rng: &mut impl Rng) -> usize {
    let r: f64 = rng.gen::<f64>();
    let mut acc = 0.0f64;
    for (k, w) in p.iter().enumerate() {
        acc += w.to_f64_c();
        if r < acc {
            return k;
        }
    }
    p.len() - 1
}

/// Run phase estimation on an eigenstate of `u`, sampling `cfg.shots` outcomes.
/// A non-eigenstate input is allowed (general-state mode); it only triggers a
/// recorded warning.
pub fn estimate_phase<F: Scalar>(
    u: &Matrix<F>,
    eigenstate: &StateVector<F>,
    cfg: &PhaseEstimationConfig<F>,
    seed: u64,
) -> Result<SpectrumHistogram<F>> {
    if u.dim() != 1 << eigenstate.n_qubits() {
        return Err(Error::DimensionMismatch(
            "unitary and state dimensions differ".into(),
        ));
    }
    let residual = eigenstate_residual(u, eigenstate);
    let circuit = phase_estimation_circuit(cfg.m, u)?;
    let initial = attach_time_register(eigenstate, cfg.m)?;
    let final_state = circuit.execute(&initial)?;
    let p = time_register_distribution(&final_state, cfg.m);
    let samples = (0..cfg.shots).map(|shot| {
        let mut rng = child_rng(seed, shot as u64);
        sample_bin(&p, &mut rng)
    });
    let mut hist = SpectrumHistogram::from_samples(cfg.m, samples, None);
    if residual > F::from_f64_c(1e-8) {
        hist.push_warning(format!(
            "input is not an eigenstate (residual {:e}); histogram mixes eigenphases",
            residual.to_f64_c()
        ));
    }
    Ok(hist)
}

/// ‖U|ψ⟩ − ⟨ψ|U|ψ⟩|ψ⟩‖: zero iff |ψ⟩ is an eigenvector.
pub fn eigenstate_residual<F: Scalar>(u: &Matrix<F>, psi: &StateVector<F>) -> F {
    let upsi = u.mul_vec(psi.amplitudes());
    let mut lambda = C::new(F::zero(), F::zero());
    for (a, b) in psi.amplitudes().iter().zip(upsi.iter()) {
        lambda += a.conj() * *b;
    }
    let mut sq = F::zero();
    for (a, b) in psi.amplitudes().iter().zip(upsi.iter()) {
        sq = sq + (*b - lambda * *a).norm_sqr();
    }
    sq.sqrt()
}

#[derive(Clone, Debug)]
pub enum EvolutionMode<F: Scalar> {
    /// Controlled powers of the dense e^{−iHT} oracle.
    Exact,
    /// Controlled Trotter rotation gates; the plan covers one time unit T.
    Trotter(TrotterPlan<F>),
}

/// T = π/(2·Σ|c_a|): the full spectrum fits in half a period, so the sign of
/// every eigenvalue is recoverable from its bin.
pub fn default_time_unit<F: Scalar>(ham: &PauliHamiltonian<F>) -> F {
    F::PI() / (F::from_f64_c(2.0) * ham.coefficient_l1())
}

fn spectroscopy_circuit<F: Scalar>(
    ham: &PauliHamiltonian<F>,
    cfg: &PhaseEstimationConfig<F>,
    mode: &EvolutionMode<F>,
) -> Result<Circuit<F>> {
    let n_data = ham.n_qubits();
    if n_data + cfg.m > MAX_TOTAL_QUBITS {
        return Err(Error::QubitCountOutOfRange(n_data + cfg.m, 2, MAX_TOTAL_QUBITS));
    }
    match mode {
        EvolutionMode::Exact => {
            let u = ham.exact_evolution_matrix(cfg.t_unit)?;
            phase_estimation_circuit(cfg.m, &u)
        }
        EvolutionMode::Trotter(plan) => {
            let mut circuit = Circuit::new(n_data + cfg.m);
            for j in 0..cfg.m {
                circuit.push(Gate::h(n_data + j))?;
            }
            for j in 0..cfg.m {
                let control = n_data + j;
                let step = controlled_trotter_step_gates(ham, plan.delta, &plan.ordering, control)?;
                // (Trotterized e^{−iHT})^{2^j}: repeat the step sequence.
                let reps = plan
                    .steps
                    .checked_shl(j as u32)
                    .ok_or_else(|| Error::InvalidArgument("step count overflow".into()))?;
                for _ in 0..reps {
                    circuit.extend(step.iter().cloned())?;
                }
            }
            let time_qubits: Vec<usize> = (n_data..n_data + cfg.m).collect();
            circuit.extend(qft_gates_on(&time_qubits, true))?;
            Ok(circuit)
        }
    }
}

/// Eigenvalue histogram of `ham` probed through the state `psi`: peaks sit at
/// bins k ≈ 2^m·frac(E_a T/2π) with weights estimating |⟨E_a|ψ⟩|².
pub fn spectrum_histogram<F: Scalar>(
    ham: &PauliHamiltonian<F>,
    psi: &StateVector<F>,
    cfg: &PhaseEstimationConfig<F>,
    mode: &EvolutionMode<F>,
    seed: u64,
) -> Result<SpectrumHistogram<F>> {
    if psi.n_qubits() != ham.n_qubits() {
        return Err(Error::DimensionMismatch(
            "state and hamiltonian qubit counts differ".into(),
        ));
    }
    let circuit = spectroscopy_circuit(ham, cfg, mode)?;
    let initial = attach_time_register(psi, cfg.m)?;
    let final_state = circuit.execute(&initial)?;
    let p = time_register_distribution(&final_state, cfg.m);
    let samples = (0..cfg.shots).map(|shot| {
        let mut rng = child_rng(seed, shot as u64);
        sample_bin(&p, &mut rng)
    });
    let mut hist = SpectrumHistogram::from_samples(cfg.m, samples, Some(cfg.t_unit));
    // Spectral width is bounded by 2·Σ|c_a|; beyond 2π/T energies alias.
    let width_bound = F::from_f64_c(2.0) * ham.coefficient_l1();
    if width_bound > F::from_f64_c(2.0) * F::PI() / cfg.t_unit {
        hist.push_warning(format!(
            "possible aliasing: spectral width bound {width_bound} exceeds 2*pi/T"
        ));
    }
    Ok(hist)
}

#[derive(Clone, Debug)]
pub struct ProjectionOutcome<F: Scalar> {
    /// Collapsed data-register state on success; `None` if the budget ran out.
    pub state: Option<StateVector<F>>,
    pub attempts: usize,
    /// Successes/attempts; estimates Σ_{a near k} |⟨E_a|ψ⟩|².
    pub hit_rate: F,
}

/// Run phase-estimation instances keeping the data register; condition on the
/// time register reading `target_k` and return the collapsed data state.
pub fn project_by_outcome<F: Scalar>(
    ham: &PauliHamiltonian<F>,
    psi: &StateVector<F>,
    cfg: &PhaseEstimationConfig<F>,
    mode: &EvolutionMode<F>,
    target_k: usize,
    attempt_budget: usize,
    seed: u64,
) -> Result<ProjectionOutcome<F>> {
    if target_k >= 1 << cfg.m {
        return Err(Error::InvalidArgument(format!(
            "target bin {target_k} out of range for m = {}",
            cfg.m
        )));
    }
    if attempt_budget < 1 {
        return Err(Error::InvalidArgument("attempt budget must be >= 1".into()));
    }
    let circuit = spectroscopy_circuit(ham, cfg, mode)?;
    let initial = attach_time_register(psi, cfg.m)?;
    let final_state = circuit.execute(&initial)?;
    let n_data = ham.n_qubits();
    for attempt in 0..attempt_budget {
        let mut rng = child_rng(seed, attempt as u64);
        let idx = final_state.sample_index(&mut rng);
        if idx >> n_data != target_k {
            continue;
        }
        // Collapse onto the measured time value and strip the time register.
        let mut amps = Vec::with_capacity(1 << n_data);
        for d in 0..1usize << n_data {
            amps.push(final_state.amplitude((target_k << n_data) | d));
        }
        let state = StateVector::from_amplitudes(n_data, amps)?;
        let attempts = attempt + 1;
        return Ok(ProjectionOutcome {
            state: Some(state),
            attempts,
            hit_rate: F::one() / F::from_f64_c(attempts as f64),
        });
    }
    Ok(ProjectionOutcome {
        state: None,
        attempts: attempt_budget,
        hit_rate: F::zero(),
    })
}
