//! Dense state vectors for n-qubit pure states.
//!
//! Qubit 0 is the least significant bit of the basis index throughout the
//! toolkit. Gate application uses strided in-place amplitude updates; full
//! matrices are only ever built by the oracle operations in [`crate::circuit`].

use crate::error::{Error, Result};
use crate::linalg::{norm, Matrix};
use crate::scalar::{one, zero, Scalar, C};
use rand::Rng;

/// Hard cap for dense simulation: 2^24 amplitudes is about 256 MB at f64.
pub const MAX_QUBITS: usize = 24;

/// Unitarity tolerance for gates handed to the kernels.
pub const UNITARITY_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<F: Scalar> {
    n_qubits: usize,
    amplitudes: Vec<C<F>>,
}

/// Result of measuring qubits in the standard basis.
#[derive(Clone, Debug)]
pub struct MeasurementOutcome<F: Scalar> {
    /// Measured bits, `bits[q]` for measured qubit `q` (in the order the
    /// qubits were passed; for `measure_all`, qubit order).
    pub bits: Vec<u8>,
    /// Post-measurement state.
    pub collapsed: StateVector<F>,
}

impl<F: Scalar> StateVector<F> {
    fn check_qubit_count(n: usize) -> Result<()> {
        if n < 1 || n > MAX_QUBITS {
            return Err(Error::QubitCountOutOfRange(n, 1, MAX_QUBITS));
        }
        Ok(())
    }

    /// Computational basis state |x⟩ given as a bitstring `"x_{n-1}…x_0"`.
    pub fn basis_state(n: usize, x: &str) -> Result<Self> {
        Self::check_qubit_count(n)?;
        if x.len() != n || x.bytes().any(|b| b != b'0' && b != b'1') {
            return Err(Error::InvalidArgument(format!(
                "bitstring {x:?} must have exactly {n} binary digits"
            )));
        }
        let index = usize::from_str_radix(x, 2).expect("validated binary string");
        Ok(Self::basis_index(n, index).expect("index in range"))
    }

    /// Basis state from an integer index.
    pub fn basis_index(n: usize, index: usize) -> Result<Self> {
        Self::check_qubit_count(n)?;
        if index >= (1 << n) {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for {n} qubits"
            )));
        }
        let mut amplitudes = vec![zero(); 1 << n];
        amplitudes[index] = one();
        Ok(StateVector {
            n_qubits: n,
            amplitudes,
        })
    }

    /// All-zeros state |0…0⟩.
    pub fn zeros(n: usize) -> Result<Self> {
        Self::basis_index(n, 0)
    }

    /// Single-qubit Bloch-sphere state
    /// `e^{-iφ/2} cos(θ/2)|0⟩ + e^{+iφ/2} sin(θ/2)|1⟩`.
    pub fn bloch_state(theta: F, phi: F) -> Result<Self> {
        let pi = F::PI();
        let two_pi = pi + pi;
        if theta < F::zero() || theta > pi {
            return Err(Error::InvalidArgument(format!("theta {theta} outside [0, pi]")));
        }
        if phi < F::zero() || phi >= two_pi {
            return Err(Error::InvalidArgument(format!("phi {phi} outside [0, 2pi)")));
        }
        let half = F::from_f64_c(0.5);
        let a0 = crate::scalar::cis(-phi * half) * C::new((theta * half).cos(), F::zero());
        let a1 = crate::scalar::cis(phi * half) * C::new((theta * half).sin(), F::zero());
        Ok(StateVector {
            n_qubits: 1,
            amplitudes: vec![a0, a1],
        })
    }

    /// Build directly from amplitudes; normalizes the input.
    pub fn from_amplitudes(n: usize, amplitudes: Vec<C<F>>) -> Result<Self> {
        Self::check_qubit_count(n)?;
        if amplitudes.len() != 1 << n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} amplitudes, got {}",
                1usize << n,
                amplitudes.len()
            )));
        }
        let mut amplitudes = amplitudes;
        let nrm = norm(&amplitudes);
        if nrm == F::zero() {
            return Err(Error::InvalidArgument("zero vector".into()));
        }
        for a in amplitudes.iter_mut() {
            *a = *a / C::new(nrm, F::zero());
        }
        Ok(StateVector {
            n_qubits: n,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[C<F>] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> C<F> {
        self.amplitudes[index]
    }

    pub fn norm(&self) -> F {
        norm(&self.amplitudes)
    }

    /// Probability of basis outcome `index`.
    pub fn probability(&self, index: usize) -> F {
        self.amplitudes[index].norm_sqr()
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits {
            return Err(Error::QubitIndexOutOfRange {
                index: q,
                n_qubits: self.n_qubits,
            });
        }
        Ok(())
    }

    /// Apply a 2×2 unitary on qubit `q` (strided pair updates).
    pub fn apply_1q(&self, u: &Matrix<F>, q: usize) -> Result<Self> {
        self.check_qubit(q)?;
        if u.dim() != 2 {
            return Err(Error::DimensionMismatch("apply_1q expects a 2x2 matrix".into()));
        }
        u.require_unitary(F::from_f64_c(UNITARITY_TOL))?;
        let mut out = self.clone();
        let mask = 1usize << q;
        let (u00, u01, u10, u11) = (u[(0, 0)], u[(0, 1)], u[(1, 0)], u[(1, 1)]);
        for base in 0..self.amplitudes.len() {
            if base & mask != 0 {
                continue;
            }
            let a0 = self.amplitudes[base];
            let a1 = self.amplitudes[base | mask];
            out.amplitudes[base] = u00 * a0 + u01 * a1;
            out.amplitudes[base | mask] = u10 * a0 + u11 * a1;
        }
        Ok(out)
    }

    /// Apply a 4×4 unitary on the ordered qubit pair `(q1, q2)`, where the
    /// matrix is indexed by the two-bit value `q1 q2` (q1 is the high bit).
    pub fn apply_2q(&self, u: &Matrix<F>, q1: usize, q2: usize) -> Result<Self> {
        if q1 == q2 {
            return Err(Error::InvalidArgument("apply_2q requires distinct qubits".into()));
        }
        if u.dim() != 4 {
            return Err(Error::DimensionMismatch("apply_2q expects a 4x4 matrix".into()));
        }
        self.apply_matrix(u, &[q1, q2])
    }

    /// Apply a `2^k × 2^k` unitary on the ordered qubit list `qs`. The first
    /// listed qubit is the most significant bit of the matrix index.
    pub fn apply_matrix(&self, u: &Matrix<F>, qs: &[usize]) -> Result<Self> {
        self.apply_matrix_controlled(&[], u, qs)
    }

    /// Apply a unitary on `targets`, conditioned on every qubit in `controls`
    /// being 1. Controls and targets must be disjoint.
    pub fn apply_matrix_controlled(
        &self,
        controls: &[usize],
        u: &Matrix<F>,
        targets: &[usize],
    ) -> Result<Self> {
        let k = targets.len();
        for &q in targets.iter().chain(controls) {
            self.check_qubit(q)?;
        }
        let mut seen: Vec<usize> = targets.iter().chain(controls).copied().collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(
                "control/target qubit indices must be distinct".into(),
            ));
        }
        if u.dim() != 1 << k {
            return Err(Error::DimensionMismatch(format!(
                "matrix dim {} does not match {} target qubits",
                u.dim(),
                k
            )));
        }
        u.require_unitary(F::from_f64_c(UNITARITY_TOL))?;

        let control_mask: usize = controls.iter().map(|&q| 1usize << q).sum();
        // First listed target is the most significant matrix bit.
        let bit_of: Vec<usize> = targets.iter().map(|&q| 1usize << q).collect();
        let all_targets: usize = bit_of.iter().sum();

        let mut out = self.clone();
        let dim = 1usize << k;
        let mut gathered = vec![zero(); dim];
        for base in 0..self.amplitudes.len() {
            if base & all_targets != 0 || base & control_mask != control_mask {
                continue;
            }
            for sub in 0..dim {
                let mut idx = base;
                for (pos, bit) in bit_of.iter().enumerate() {
                    if sub & (1 << (k - 1 - pos)) != 0 {
                        idx |= bit;
                    }
                }
                gathered[sub] = self.amplitudes[idx];
            }
            for row in 0..dim {
                let mut acc = zero();
                for col in 0..dim {
                    acc += u[(row, col)] * gathered[col];
                }
                let mut idx = base;
                for (pos, bit) in bit_of.iter().enumerate() {
                    if row & (1 << (k - 1 - pos)) != 0 {
                        idx |= bit;
                    }
                }
                out.amplitudes[idx] = acc;
            }
        }
        Ok(out)
    }

    /// `Σ_x conj(a_x) b_x`.
    pub fn inner_product(&self, other: &Self) -> Result<C<F>> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "inner product between {} and {} qubits",
                self.n_qubits, other.n_qubits
            )));
        }
        let mut acc = zero();
        for (a, b) in self.amplitudes.iter().zip(other.amplitudes.iter()) {
            acc += a.conj() * *b;
        }
        Ok(acc)
    }

    /// Equality up to global phase: `|⟨a|b⟩| = 1` criterion.
    pub fn equal_up_to_phase(&self, other: &Self, tol: F) -> bool {
        match self.inner_product(other) {
            Ok(ip) => (ip.norm() - F::one()).abs() <= tol,
            Err(_) => false,
        }
    }

    /// Measure every qubit in the standard basis.
    pub fn measure_all(&self, rng: &mut impl Rng) -> MeasurementOutcome<F> {
        let index = self.sample_index(rng);
        let bits = (0..self.n_qubits).map(|q| ((index >> q) & 1) as u8).collect();
        let collapsed = Self::basis_index(self.n_qubits, index).expect("in range");
        MeasurementOutcome { bits, collapsed }
    }

    /// Sample a basis index with probability `|a_x|²`.
    pub fn sample_index(&self, rng: &mut impl Rng) -> usize {
        let r: f64 = rng.gen::<f64>();
        let mut acc = 0.0f64;
        for (idx, a) in self.amplitudes.iter().enumerate() {
            acc += a.norm_sqr().to_f64_c();
            if r < acc {
                return idx;
            }
        }
        self.amplitudes.len() - 1
    }

    /// Measure only the listed qubits; returns their bits (in list order) and
    /// the collapsed, renormalized full state.
    pub fn measure_qubits(&self, qs: &[usize], rng: &mut impl Rng) -> Result<MeasurementOutcome<F>> {
        for &q in qs {
            self.check_qubit(q)?;
        }
        let full = self.sample_index(rng);
        let bits: Vec<u8> = qs.iter().map(|&q| ((full >> q) & 1) as u8).collect();
        let mask: usize = qs.iter().map(|&q| 1usize << q).sum();
        let pattern: usize = qs
            .iter()
            .zip(bits.iter())
            .filter(|(_, &b)| b == 1)
            .map(|(&q, _)| 1usize << q)
            .sum();
        let mut amps = self.amplitudes.clone();
        for (idx, a) in amps.iter_mut().enumerate() {
            if idx & mask != pattern {
                *a = zero();
            }
        }
        let collapsed = Self::from_amplitudes(self.n_qubits, amps)?;
        Ok(MeasurementOutcome { bits, collapsed })
    }

    /// Extract the substate on `keep` qubits given that all other qubits hold
    /// the definite bits recorded in `fixed` (qubit → bit). The state must be
    /// a product across that split (true after measuring the others).
    pub fn extract_qubits(&self, keep: &[usize], fixed: &[(usize, u8)]) -> Result<Self> {
        let pattern: usize = fixed
            .iter()
            .filter(|&&(_, b)| b == 1)
            .map(|&(q, _)| 1usize << q)
            .sum();
        let mask: usize = fixed.iter().map(|&(q, _)| 1usize << q).sum();
        if keep.len() + fixed.len() != self.n_qubits {
            return Err(Error::DimensionMismatch(
                "keep + fixed must cover all qubits".into(),
            ));
        }
        let mut amps = vec![zero(); 1 << keep.len()];
        for sub in 0..amps.len() {
            let mut idx = pattern;
            for (pos, &q) in keep.iter().enumerate() {
                if sub & (1 << pos) != 0 {
                    idx |= 1usize << q;
                }
            }
            debug_assert_eq!(idx & mask, pattern);
            amps[sub] = self.amplitudes[idx];
        }
        Self::from_amplitudes(keep.len(), amps)
    }

    /// Marginal probability that qubit `q` reads 0.
    pub fn marginal_zero(&self, q: usize) -> Result<F> {
        self.check_qubit(q)?;
        let mask = 1usize << q;
        let mut p = F::zero();
        for (idx, a) in self.amplitudes.iter().enumerate() {
            if idx & mask == 0 {
                p = p + a.norm_sqr();
            }
        }
        Ok(p)
    }

    /// Purity of the single-qubit reduced state of qubit `q`:
    /// `tr(ρ_q²)`, 1 for a product state.
    pub fn qubit_purity(&self, q: usize) -> Result<F> {
        self.check_qubit(q)?;
        let mask = 1usize << q;
        // 2x2 reduced density matrix.
        let mut r00 = F::zero();
        let mut r11 = F::zero();
        let mut r01 = zero::<F>();
        for (idx, a) in self.amplitudes.iter().enumerate() {
            if idx & mask == 0 {
                r00 = r00 + a.norm_sqr();
                r01 += *a * self.amplitudes[idx | mask].conj();
            } else {
                r11 = r11 + a.norm_sqr();
            }
        }
        Ok(r00 * r00 + r11 * r11 + F::from_f64_c(2.0) * r01.norm_sqr())
    }
}

/// Optimal (Helstrom) success probability for discriminating two known pure
/// states with priors `p0` and `1 − p0`:
/// `½ (1 + sqrt(1 − 4 p0 (1−p0) |⟨ψ0|ψ1⟩|²))`.
pub fn helstrom_success<F: Scalar>(
    psi0: &StateVector<F>,
    psi1: &StateVector<F>,
    p0: F,
) -> Result<F> {
    if p0 < F::zero() || p0 > F::one() {
        return Err(Error::InvalidArgument(format!("prior {p0} outside [0, 1]")));
    }
    let overlap = psi0.inner_product(psi1)?.norm_sqr();
    let four = F::from_f64_c(4.0);
    let half = F::from_f64_c(0.5);
    let disc = (F::one() - four * p0 * (F::one() - p0) * overlap).max(F::zero());
    Ok(half * (F::one() + disc.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::{self, GateKind};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type SV = StateVector<f64>;

    #[test]
    fn basis_states() {
        let s = SV::basis_state(1, "0").unwrap();
        assert_eq!(s.amplitude(0), C::new(1.0, 0.0));
        assert_eq!(s.amplitude(1), C::new(0.0, 0.0));
        let s = SV::basis_state(2, "10").unwrap();
        assert_eq!(s.amplitude(2), C::new(1.0, 0.0));
        let s = SV::basis_state(3, "111").unwrap();
        assert_eq!(s.amplitude(7), C::new(1.0, 0.0));
    }

    #[test]
    fn qubit_count_guard() {
        assert!(SV::zeros(0).is_err());
        assert!(SV::zeros(25).is_err());
        assert!(SV::zeros(24).is_ok() || cfg!(debug_assertions));
    }

    #[test]
    fn bloch_states() {
        let s = SV::bloch_state(0.0, 0.0).unwrap();
        assert!(s.equal_up_to_phase(&SV::basis_state(1, "0").unwrap(), 1e-12));
        let s = SV::bloch_state(std::f64::consts::PI, 0.0).unwrap();
        assert!(s.equal_up_to_phase(&SV::basis_state(1, "1").unwrap(), 1e-12));
        let s = SV::bloch_state(std::f64::consts::FRAC_PI_2, 0.0).unwrap();
        assert!((s.probability(0) - 0.5).abs() < 1e-12);
        assert!(SV::bloch_state(-0.1, 0.0).is_err());
        assert!(SV::bloch_state(0.1, 7.0).is_err());
    }

    #[test]
    fn hadamard_and_t() {
        let h = gate::matrix_1q::<f64>(&GateKind::H);
        let s = SV::zeros(1).unwrap().apply_1q(&h, 0).unwrap();
        let inv = 1.0 / 2.0f64.sqrt();
        assert!((s.amplitude(0).re - inv).abs() < 1e-12);
        assert!((s.amplitude(1).re - inv).abs() < 1e-12);
        let t = gate::matrix_1q::<f64>(&GateKind::T);
        let s = s.apply_1q(&t, 0).unwrap();
        let expected = C::from_polar(inv, std::f64::consts::FRAC_PI_4);
        assert!((s.amplitude(1) - expected).norm() < 1e-12);
    }

    #[test]
    fn x_flips() {
        let x = gate::matrix_1q::<f64>(&GateKind::X);
        let s = SV::zeros(1).unwrap().apply_1q(&x, 0).unwrap();
        assert_eq!(s.amplitude(1), C::new(1.0, 0.0));
    }

    #[test]
    fn rejects_non_unitary() {
        let bad = Matrix::from_rows(&[
            &[C::new(1.0, 0.0), C::new(0.0, 0.0)],
            &[C::new(0.0, 0.0), C::new(2.0, 0.0)],
        ]);
        assert!(matches!(
            SV::zeros(1).unwrap().apply_1q(&bad, 0),
            Err(Error::NotUnitary { .. })
        ));
        let h = gate::matrix_1q::<f64>(&GateKind::H);
        assert!(SV::zeros(1).unwrap().apply_1q(&h, 3).is_err());
    }

    #[test]
    fn cnot_entangles() {
        let h = gate::matrix_1q::<f64>(&GateKind::H);
        let cnot = gate::cnot_matrix::<f64>();
        let bell = SV::zeros(2)
            .unwrap()
            .apply_1q(&h, 0)
            .unwrap()
            .apply_2q(&cnot, 0, 1)
            .unwrap();
        let inv = 1.0 / 2.0f64.sqrt();
        assert!((bell.amplitude(0).re - inv).abs() < 1e-12);
        assert!((bell.amplitude(3).re - inv).abs() < 1e-12);
        assert!(bell.amplitude(1).norm() < 1e-12 && bell.amplitude(2).norm() < 1e-12);

        // control 0 acts trivially; control 1 flips target.
        let s = SV::basis_state(2, "00").unwrap().apply_2q(&cnot, 0, 1).unwrap();
        assert_eq!(s.amplitude(0), C::new(1.0, 0.0));
        // |10⟩ as bitstring x1 x0 = "01" means qubit 0 = 1 (control).
        let s = SV::basis_state(2, "01").unwrap().apply_2q(&cnot, 0, 1).unwrap();
        assert_eq!(s.amplitude(3), C::new(1.0, 0.0));
        assert!(SV::zeros(2).unwrap().apply_2q(&cnot, 1, 1).is_err());
    }

    #[test]
    fn inner_products() {
        let zero_s = SV::basis_state(1, "0").unwrap();
        let one_s = SV::basis_state(1, "1").unwrap();
        let h = gate::matrix_1q::<f64>(&GateKind::H);
        let plus = zero_s.apply_1q(&h, 0).unwrap();
        assert!(zero_s.inner_product(&one_s).unwrap().norm() < 1e-12);
        assert!((zero_s.inner_product(&plus).unwrap().re - 1.0 / 2.0f64.sqrt()).abs() < 1e-12);
        assert!((plus.inner_product(&plus).unwrap().re - 1.0).abs() < 1e-12);
        assert!(zero_s.inner_product(&SV::zeros(2).unwrap()).is_err());
    }

    #[test]
    fn measurement_deterministic_eigenstate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let one_s = SV::basis_state(1, "1").unwrap();
        for _ in 0..32 {
            let out = one_s.measure_all(&mut rng);
            assert_eq!(out.bits, vec![1]);
            assert!((out.collapsed.probability(1) - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn measurement_frequencies_match_born_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let theta = 1.1f64;
        let s = SV::bloch_state(theta, 0.3).unwrap();
        let shots = 20_000;
        let mut zeros_count = 0u32;
        for _ in 0..shots {
            if s.measure_all(&mut rng).bits[0] == 0 {
                zeros_count += 1;
            }
        }
        let freq = f64::from(zeros_count) / f64::from(shots);
        let p0 = (theta / 2.0).cos().powi(2);
        assert!((freq - p0).abs() < 5.0 / (f64::from(shots)).sqrt());
    }

    #[test]
    fn helstrom_values() {
        let zero_s = SV::basis_state(1, "0").unwrap();
        let one_s = SV::basis_state(1, "1").unwrap();
        let h = gate::matrix_1q::<f64>(&GateKind::H);
        let plus = zero_s.apply_1q(&h, 0).unwrap();
        let p = helstrom_success(&zero_s, &plus, 0.5).unwrap();
        assert!((p - (std::f64::consts::FRAC_PI_8).cos().powi(2)).abs() < 1e-12);
        assert!((helstrom_success(&zero_s, &one_s, 0.5).unwrap() - 1.0).abs() < 1e-12);
        // Identical states: discriminant cancels to ~1e-16 and sqrt halves
        // the significant digits, so only ~1e-8 accuracy is attainable.
        assert!((helstrom_success(&plus, &plus, 0.5).unwrap() - 0.5).abs() < 1e-7);
        assert!(helstrom_success(&zero_s, &one_s, 1.5).is_err());
    }

    #[test]
    fn helstrom_floor_and_ceiling() {
        let s0 = SV::bloch_state(0.7, 0.1).unwrap();
        let s1 = SV::bloch_state(2.0, 4.4).unwrap();
        for &p0 in &[0.0, 0.2, 0.5, 0.9, 1.0] {
            let p = helstrom_success(&s0, &s1, p0).unwrap();
            assert!(p >= p0.max(1.0 - p0) - 1e-12);
            assert!(p <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn composition_returns_original() {
        let t = gate::matrix_1q::<f64>(&GateKind::T);
        let tdag = t.adjoint();
        let s = SV::bloch_state(0.9, 1.7).unwrap();
        let back = s.apply_1q(&t, 0).unwrap().apply_1q(&tdag, 0).unwrap();
        for k in 0..2 {
            assert!((s.amplitude(k) - back.amplitude(k)).norm() < 1e-9);
        }
    }

    #[test]
    fn diagonal_gate_leaves_other_marginals() {
        let h = gate::matrix_1q::<f64>(&GateKind::H);
        let t = gate::matrix_1q::<f64>(&GateKind::T);
        let mut s = SV::zeros(3).unwrap();
        for q in 0..3 {
            s = s.apply_1q(&h, q).unwrap();
        }
        let before: Vec<f64> = (0..3).map(|q| s.marginal_zero(q).unwrap()).collect();
        let s2 = s.apply_1q(&t, 1).unwrap();
        for q in [0usize, 2] {
            assert!((s2.marginal_zero(q).unwrap() - before[q]).abs() < 1e-12);
        }
    }

    #[test]
    fn measure_subset_collapses() {
        let h = gate::matrix_1q::<f64>(&GateKind::H);
        let cnot = gate::cnot_matrix::<f64>();
        let bell = SV::zeros(2)
            .unwrap()
            .apply_1q(&h, 0)
            .unwrap()
            .apply_2q(&cnot, 0, 1)
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let out = bell.measure_qubits(&[0], &mut rng).unwrap();
        // Perfectly correlated: qubit 1 must agree with measured qubit 0.
        let expect = usize::from(out.bits[0]) * 3;
        assert!((out.collapsed.probability(expect) - 1.0).abs() < 1e-10);
    }
}
