//! Pauli-term local Hamiltonians H = Σ_a H_a and the dense oracle substrate.
//!
//! Text file format:
//! ```text
//! n 4 k 2 h 1.0
//! 1.0 Z0 Z1
//! 1.0 Z1 Z2
//! 0.5 X2
//! geom 0 0
//! geom 1 1
//! ```

use crate::error::{Error, Result};
use crate::linalg::{hermitian_exp, Matrix};
use crate::pauli::Pauli;
use crate::scalar::{Scalar, C};
use crate::statevec::StateVector;
use std::collections::BTreeMap;

/// Dense-oracle cap: 2^12 × 2^12 matrices at most.
pub const MAX_DENSE_QUBITS: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct PauliTerm<F: Scalar> {
    pub coefficient: F,
    /// Qubit index → Pauli; BTreeMap keeps support ordering deterministic.
    pub paulis: BTreeMap<usize, Pauli>,
}

impl<F: Scalar> PauliTerm<F> {
    pub fn new(coefficient: F, paulis: impl IntoIterator<Item = (usize, Pauli)>) -> Self {
        PauliTerm {
            coefficient,
            paulis: paulis.into_iter().collect(),
        }
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.paulis.keys().copied()
    }

    pub fn weight(&self) -> usize {
        self.paulis.len()
    }

    /// True iff the two Pauli strings anticommute: an odd number of shared
    /// qubits carrying different Paulis.
    pub fn anticommutes_with(&self, other: &Self) -> bool {
        let mut differing = 0usize;
        for (q, p) in &self.paulis {
            if let Some(p2) = other.paulis.get(q) {
                if p != p2 {
                    differing += 1;
                }
            }
        }
        differing % 2 == 1
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Geometry {
    /// Qubit index → integer lattice coordinate (1-D chains in practice).
    pub coords: BTreeMap<usize, i64>,
    /// Every term's support must fit in a ball of this radius.
    pub radius: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PauliHamiltonian<F: Scalar> {
    n_qubits: usize,
    terms: Vec<PauliTerm<F>>,
    k: usize,
    h: F,
    geometry: Option<Geometry>,
}

impl<F: Scalar> PauliHamiltonian<F> {
    pub fn new(n_qubits: usize, terms: Vec<PauliTerm<F>>, k: usize, h: F) -> Result<Self> {
        let ham = PauliHamiltonian {
            n_qubits,
            terms,
            k,
            h,
            geometry: None,
        };
        ham.validate()?;
        Ok(ham)
    }

    pub fn with_geometry(mut self, geometry: Geometry) -> Result<Self> {
        self.geometry = Some(geometry);
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        if self.n_qubits < 1 {
            return Err(Error::InvalidArgument("hamiltonian needs at least one qubit".into()));
        }
        for (idx, term) in self.terms.iter().enumerate() {
            if term.paulis.is_empty() {
                return Err(Error::InvalidArgument(format!(
                    "term {idx} has empty support"
                )));
            }
            if term.weight() > self.k {
                return Err(Error::InvalidArgument(format!(
                    "term {idx} has support {} exceeding k = {}",
                    term.weight(),
                    self.k
                )));
            }
            if term.coefficient.abs() > self.h {
                return Err(Error::InvalidArgument(format!(
                    "term {idx} coefficient {} exceeds bound h = {}",
                    term.coefficient, self.h
                )));
            }
            for &q in term.paulis.keys() {
                if q >= self.n_qubits {
                    return Err(Error::QubitIndexOutOfRange {
                        index: q,
                        n_qubits: self.n_qubits,
                    });
                }
            }
            if let Some(geometry) = &self.geometry {
                let coords: Vec<i64> = term
                    .paulis
                    .keys()
                    .map(|q| {
                        geometry.coords.get(q).copied().ok_or_else(|| {
                            Error::InvalidArgument(format!("qubit {q} missing a geometry coordinate"))
                        })
                    })
                    .collect::<Result<_>>()?;
                let spread = coords.iter().max().unwrap() - coords.iter().min().unwrap();
                if spread > 2 * geometry.radius {
                    return Err(Error::InvalidArgument(format!(
                        "term {idx} spans {spread} lattice units, beyond a ball of radius {}",
                        geometry.radius
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm<F>] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn locality(&self) -> usize {
        self.k
    }

    pub fn term_bound(&self) -> F {
        self.h
    }

    pub fn geometry(&self) -> Option<&Geometry> {
        self.geometry.as_ref()
    }

    /// Σ_a |c_a|, an upper bound on the spectral radius.
    pub fn coefficient_l1(&self) -> F {
        self.terms.iter().map(|t| t.coefficient.abs()).sum()
    }

    /// Number of term pairs (a < b) whose Pauli strings anticommute.
    pub fn non_commuting_pairs(&self) -> usize {
        let mut count = 0;
        for a in 0..self.terms.len() {
            for b in (a + 1)..self.terms.len() {
                if self.terms[a].anticommutes_with(&self.terms[b]) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Dense Hermitian matrix Σ_a c_a P_a; oracle use only.
    pub fn matrix(&self) -> Result<Matrix<F>> {
        if self.n_qubits > MAX_DENSE_QUBITS {
            return Err(Error::QubitCountOutOfRange(self.n_qubits, 1, MAX_DENSE_QUBITS));
        }
        let dim = 1usize << self.n_qubits;
        let mut m = Matrix::zeros(dim);
        for term in &self.terms {
            let coeff = C::new(term.coefficient, F::zero());
            for col in 0..dim {
                let (row, phase) = apply_pauli_string_to_index::<F>(&term.paulis, col);
                m[(row, col)] += coeff * phase;
            }
        }
        Ok(m)
    }

    /// e^{−iHt}|s⟩ via eigendecomposition of the dense matrix.
    pub fn exact_evolution(&self, t: F, s: &StateVector<F>) -> Result<StateVector<F>> {
        if s.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch(
                "state and hamiltonian qubit counts differ".into(),
            ));
        }
        let (vals, vecs) = self.matrix()?.hermitian_eigen()?;
        let adj = vecs.adjoint();
        let mut coeffs = adj.mul_vec(s.amplitudes());
        for (c, &e) in coeffs.iter_mut().zip(vals.iter()) {
            *c = *c * crate::scalar::cis(-e * t);
        }
        let amps = vecs.mul_vec(&coeffs);
        let out_norm = crate::linalg::norm(&amps);
        if (out_norm - F::one()).abs() > F::from_f64_c(1e-9) {
            return Err(Error::Numeric(format!(
                "exact evolution lost unitarity (norm {out_norm})"
            )));
        }
        StateVector::from_amplitudes(self.n_qubits, amps)
    }

    /// Dense matrix of e^{−iHt}; oracle use only.
    pub fn exact_evolution_matrix(&self, t: F) -> Result<Matrix<F>> {
        hermitian_exp(&self.matrix()?, -t)
    }

    /// Parse the text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut k: Option<usize> = None;
        let mut h: Option<f64> = None;
        let mut terms: Vec<PauliTerm<F>> = Vec::new();
        let mut coords: BTreeMap<usize, i64> = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = body.split_whitespace().collect();
            if tokens[0] == "n" {
                // header: n <int> k <int> h <float>
                if tokens.len() != 6 || tokens[2] != "k" || tokens[4] != "h" {
                    return Err(Error::Parse {
                        line,
                        message: "header must be `n <int> k <int> h <float>`".into(),
                    });
                }
                n = Some(tokens[1].parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("invalid qubit count {:?}", tokens[1]),
                })?);
                k = Some(tokens[3].parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("invalid locality {:?}", tokens[3]),
                })?);
                h = Some(tokens[5].parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("invalid term bound {:?}", tokens[5]),
                })?);
            } else if tokens[0] == "geom" {
                if tokens.len() != 3 {
                    return Err(Error::Parse {
                        line,
                        message: "geometry line must be `geom <qubit> <coord>`".into(),
                    });
                }
                let q: usize = tokens[1].parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("invalid qubit {:?}", tokens[1]),
                })?;
                let coord: i64 = tokens[2].parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("invalid coordinate {:?}", tokens[2]),
                })?;
                coords.insert(q, coord);
            } else {
                let coeff: f64 = tokens[0].parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("invalid coefficient {:?}", tokens[0]),
                })?;
                if tokens.len() < 2 {
                    return Err(Error::Parse {
                        line,
                        message: "term needs at least one Pauli factor".into(),
                    });
                }
                let mut paulis = BTreeMap::new();
                for tok in &tokens[1..] {
                    let mut chars = tok.chars();
                    let p = chars
                        .next()
                        .and_then(Pauli::from_char)
                        .ok_or_else(|| Error::Parse {
                            line,
                            message: format!("invalid Pauli factor {tok:?}"),
                        })?;
                    let q: usize = chars.as_str().parse().map_err(|_| Error::Parse {
                        line,
                        message: format!("invalid Pauli factor {tok:?}"),
                    })?;
                    if paulis.insert(q, p).is_some() {
                        return Err(Error::Parse {
                            line,
                            message: format!("qubit {q} repeated within one term"),
                        });
                    }
                }
                terms.push(PauliTerm::new(F::from_f64_c(coeff), paulis));
            }
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            message: "missing header line `n <int> k <int> h <float>`".into(),
        })?;
        let k = k.unwrap_or(2);
        let h = h.unwrap_or(1.0);
        let ham = PauliHamiltonian::new(n, terms, k, F::from_f64_c(h))?;
        if coords.is_empty() {
            Ok(ham)
        } else {
            let radius = k as i64;
            ham.with_geometry(Geometry { coords, radius })
        }
    }
}

/// Action of a Pauli string on a computational basis index: P|col⟩ = phase |row⟩.
pub fn apply_pauli_string_to_index<F: Scalar>(
    paulis: &BTreeMap<usize, Pauli>,
    col: usize,
) -> (usize, C<F>) {
    let mut row = col;
    let mut phase = C::new(F::one(), F::zero());
    let i = C::new(F::zero(), F::one());
    for (&q, &p) in paulis {
        let bit = (col >> q) & 1;
        match p {
            Pauli::X => row ^= 1 << q,
            Pauli::Y => {
                row ^= 1 << q;
                phase = phase * if bit == 0 { i } else { -i };
            }
            Pauli::Z => {
                if bit == 1 {
                    phase = -phase;
                }
            }
        }
    }
    (row, phase)
}
