//! Small dense complex matrices.
//!
//! These are deliberately simple row-major square matrices. They back the
//! oracle-style operations (full circuit unitaries, dense Hamiltonians, exact
//! evolution) which are capped at a handful of qubits; the state-vector kernels
//! never build them.

use crate::error::{Error, Result};
use crate::scalar::{cis, one, zero, Scalar, C};

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Scalar> {
    dim: usize,
    data: Vec<C<F>>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m[(k, k)] = one();
        }
        m
    }

    pub fn from_rows(rows: &[&[C<F>]]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "matrix rows must be square");
            for (c, v) in row.iter().enumerate() {
                m[(r, c)] = *v;
            }
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C<F>) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a == zero() {
                    continue;
                }
                for c in 0..n {
                    out[(r, c)] += a * other[(k, c)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C<F>]) -> Vec<C<F>> {
        assert_eq!(v.len(), self.dim);
        let n = self.dim;
        let mut out = vec![zero(); n];
        for r in 0..n {
            let mut acc = zero();
            for c in 0..n {
                acc += self[(r, c)] * v[c];
            }
            out[r] = acc;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self::from_fn(self.dim, |r, c| self[(r, c)] - other[(r, c)])
    }

    pub fn scale(&self, s: C<F>) -> Self {
        Self::from_fn(self.dim, |r, c| self[(r, c)] * s)
    }

    /// Binary exponentiation; `pow(0)` is the identity.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Kronecker product, `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        Self::from_fn(a * b, |r, c| {
            self[(r / b, c / b)] * other[(r % b, c % b)]
        })
    }

    /// Largest elementwise modulus.
    pub fn max_abs(&self) -> F {
        self.data
            .iter()
            .map(|z| z.norm())
            .fold(F::zero(), |m, x| if x > m { x } else { m })
    }

    pub fn frobenius_norm(&self) -> F {
        self.data.iter().map(|z| z.norm_sqr()).sum::<F>().sqrt()
    }

    /// Max elementwise modulus of `U†U − I`.
    pub fn unitarity_residual(&self) -> F {
        self.adjoint().mul(self).sub(&Self::identity(self.dim)).max_abs()
    }

    pub fn require_unitary(&self, tol: F) -> Result<()> {
        let residual = self.unitarity_residual();
        if residual > tol {
            return Err(Error::NotUnitary {
                residual: residual.to_f64_c(),
            });
        }
        Ok(())
    }

    /// Operator (spectral) norm: largest singular value, by power iteration on
    /// `A†A` to relative tolerance `rel_tol`.
    pub fn spectral_norm(&self, rel_tol: F) -> F {
        let n = self.dim;
        if n == 0 {
            return F::zero();
        }
        let scale = self.max_abs();
        if scale == F::zero() {
            return F::zero();
        }
        let adj = self.adjoint();
        // Deterministic start vector with all components nonzero.
        let mut v: Vec<C<F>> = (0..n)
            .map(|k| C::new(F::one() / F::from_f64_c(1.0 + k as f64), F::zero()))
            .collect();
        normalize(&mut v);
        let mut sigma = F::zero();
        for _ in 0..20_000 {
            let w = self.mul_vec(&v);
            let new_sigma = norm(&w);
            let mut z = adj.mul_vec(&w);
            let zn = norm(&z);
            if zn == F::zero() {
                return F::zero();
            }
            for a in z.iter_mut() {
                *a = *a / C::new(zn, F::zero());
            }
            v = z;
            if (new_sigma - sigma).abs() <= rel_tol * new_sigma.max(scale * F::epsilon()) {
                return new_sigma;
            }
            sigma = new_sigma;
        }
        sigma
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
    /// rotations. Returns eigenvalues ascending and the unitary of column
    /// eigenvectors, so `self = V diag(w) V†`.
    pub fn hermitian_eigen(&self) -> Result<(Vec<F>, Matrix<F>)> {
        let n = self.dim;
        let herm_residual = self.sub(&self.adjoint()).max_abs();
        let scale = self.max_abs().max(F::one());
        if herm_residual > scale * F::epsilon().sqrt() {
            return Err(Error::Numeric(format!(
                "matrix is not Hermitian (residual {:.3e})",
                herm_residual.to_f64_c()
            )));
        }
        let mut a = self.clone();
        let mut v = Matrix::identity(n);
        let fro = a.frobenius_norm().max(F::epsilon());
        let tol = fro * F::epsilon() * F::from_f64_c(16.0);
        let mut converged = false;
        for _sweep in 0..100 {
            let mut off = F::zero();
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off + a[(p, q)].norm_sqr();
                }
            }
            if off.sqrt() <= tol {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let w = a[(p, q)];
                    let wn = w.norm();
                    if wn <= tol / F::from_f64_c((n * n) as f64) {
                        continue;
                    }
                    let u = w / C::new(wn, F::zero());
                    let app = a[(p, p)].re;
                    let aqq = a[(q, q)].re;
                    let tau = (aqq - app) / (wn + wn);
                    let t = if tau >= F::zero() {
                        F::one() / (tau + (F::one() + tau * tau).sqrt())
                    } else {
                        -F::one() / (-tau + (F::one() + tau * tau).sqrt())
                    };
                    let c = F::one() / (F::one() + t * t).sqrt();
                    let s = t * c;
                    // G = [[c, s], [-s·ū, c·ū]] acting on the (p, q) plane.
                    let cc = C::new(c, F::zero());
                    let sc = C::new(s, F::zero());
                    let g_qp = -sc * u.conj();
                    let g_qq = cc * u.conj();
                    // A ← G† A G: columns then rows.
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = akp * cc + akq * g_qp;
                        a[(k, q)] = akp * sc + akq * g_qq;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = apk * cc + aqk * g_qp.conj();
                        a[(q, k)] = apk * sc + aqk * g_qq.conj();
                    }
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * cc + vkq * g_qp;
                        v[(k, q)] = vkp * sc + vkq * g_qq;
                    }
                }
            }
        }
        if !converged {
            return Err(Error::Numeric(format!(
                "Jacobi eigensolver did not converge (off-diagonal residual {:.3e})",
                off_diagonal(&a).to_f64_c()
            )));
        }
        let mut order: Vec<usize> = (0..n).collect();
        let evals: Vec<F> = (0..n).map(|k| a[(k, k)].re).collect();
        order.sort_by(|&i, &j| evals[i].partial_cmp(&evals[j]).unwrap());
        let sorted_vals: Vec<F> = order.iter().map(|&k| evals[k]).collect();
        let sorted_vecs = Matrix::from_fn(n, |r, c| v[(r, order[c])]);
        Ok((sorted_vals, sorted_vecs))
    }
}

fn off_diagonal<F: Scalar>(a: &Matrix<F>) -> F {
    let n = a.dim();
    let mut off = F::zero();
    for p in 0..n {
        for q in 0..n {
            if p != q {
                off = off + a[(p, q)].norm_sqr();
            }
        }
    }
    off.sqrt()
}

pub fn norm<F: Scalar>(v: &[C<F>]) -> F {
    v.iter().map(|z| z.norm_sqr()).sum::<F>().sqrt()
}

pub fn normalize<F: Scalar>(v: &mut [C<F>]) {
    let n = norm(v);
    if n > F::zero() {
        for a in v.iter_mut() {
            *a = *a / C::new(n, F::zero());
        }
    }
}

impl<F: Scalar> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = C<F>;
    fn index(&self, (r, c): (usize, usize)) -> &C<F> {
        &self.data[r * self.dim + c]
    }
}

impl<F: Scalar> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C<F> {
        &mut self.data[r * self.dim + c]
    }
}

/// Dense matrix exponential `e^{i theta_scale · H}` of a Hermitian `H` via
/// eigendecomposition. `theta_scale` is typically `-t`.
pub fn hermitian_exp<F: Scalar>(h: &Matrix<F>, theta_scale: F) -> Result<Matrix<F>> {
    let (vals, vecs) = h.hermitian_eigen()?;
    let n = h.dim();
    let mut phase = Matrix::zeros(n);
    for k in 0..n {
        phase[(k, k)] = cis(vals[k] * theta_scale);
    }
    Ok(vecs.mul(&phase).mul(&vecs.adjoint()))
}
