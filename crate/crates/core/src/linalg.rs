//! Dense complex linear algebra for few-qubit operators.
//!
//! Basis convention: qubit 0 is the most significant bit of a basis index,
//! and bit value 0 is `|↓⟩` (the σᶻ eigenvector with eigenvalue −1). The
//! all-down state is therefore index 0 and the all-up state index `2^N − 1`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cr, Real, C};

/// Dense square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    dim: usize,
    data: Vec<C<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![C::new(T::zero(), T::zero()); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| if r == c { cr(T::one()) } else { cr(T::zero()) })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    /// Builds from row-major entries. Panics unless `entries.len()` is a perfect square.
    pub fn from_row_major(entries: Vec<C<T>>) -> Self {
        let dim = (entries.len() as f64).sqrt().round() as usize;
        assert!(
            dim > 0 && dim * dim == entries.len(),
            "entry count {} is not a positive perfect square",
            entries.len()
        );
        Self { dim, data: entries }
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "rows must be square");
        Self::from_fn(dim, |r, c| cr(T::lit(rows[r][c])))
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        Self::from_fn(diag.len(), |r, c| {
            if r == c {
                cr(diag[r])
            } else {
                cr(T::zero())
            }
        })
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn outer(psi: &[C<T>]) -> Self {
        Self::from_fn(psi.len(), |r, c| psi[r] * psi[c].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn as_slice(&self) -> &[C<T>] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<C<T>> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> C<T> {
        (0..self.dim).fold(cr(T::zero()), |acc, i| acc + self[(i, i)])
    }

    pub fn scale(&self, factor: C<T>) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: T) -> Self {
        self.scale(cr(factor))
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(self.dim, v.len(), "mul_vec dimension mismatch");
        let n = self.dim;
        (0..n)
            .map(|r| {
                self.data[r * n..(r + 1) * n]
                    .iter()
                    .zip(v)
                    .fold(cr(T::zero()), |acc, (&a, &x)| acc + a * x)
            })
            .collect()
    }

    /// `⟨ψ|A|ψ⟩`.
    pub fn expectation(&self, psi: &[C<T>]) -> C<T> {
        let a_psi = self.mul_vec(psi);
        psi.iter()
            .zip(&a_psi)
            .fold(cr(T::zero()), |acc, (&x, &y)| acc + x.conj() * y)
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// `max |A[i][j] − conj(A[j][i])|`.
    pub fn hermitian_defect(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermitian_defect() <= tol
    }

    /// `(A + A†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let half = T::lit(0.5);
        Self::from_fn(self.dim, |r, c| (self[(r, c)] + self[(c, r)].conj()) * half)
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim, "max_abs_diff dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm()))
    }

    pub fn map<U: Real>(&self, f: impl Fn(C<T>) -> C<U>) -> ComplexMatrix<U> {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = C<T>;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &C<T> {
        &self.data[r * self.dim + c]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C<T> {
        &mut self.data[r * self.dim + c]
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "add dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "sub dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;
    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        self.matmul(rhs)
    }
}

impl<T: fmt::Debug> fmt::Debug for ComplexMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for r in 0..self.dim {
            write!(f, "  ")?;
            for c in 0..self.dim {
                let z = &self[(r, c)];
                write!(f, "({:?}, {:?})  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

// Pauli matrices in the (↓, ↑) ordering.

pub fn identity2<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::identity(2)
}

pub fn sigma_x<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
}

/// σʸ consistent with `σˣσʸ = iσᶻ` for `σᶻ = diag(−1, 1)`.
pub fn sigma_y<T: Real>() -> ComplexMatrix<T> {
    let i = Complex::new(T::zero(), T::one());
    ComplexMatrix::from_row_major(vec![cr(T::zero()), i, -i, cr(T::zero())])
}

pub fn sigma_z<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_diagonal(&[-T::one(), T::one()])
}

/// Kronecker product; `a` acts on the more significant subsystem.
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let (na, nb) = (a.dim(), b.dim());
    ComplexMatrix::from_fn(na * nb, |r, c| a[(r / nb, c / nb)] * b[(r % nb, c % nb)])
}

/// Embeds a single-qubit operator on `site` of an `n_qubits` register.
pub fn site_operator<T: Real>(op: &ComplexMatrix<T>, site: usize, n_qubits: usize) -> ComplexMatrix<T> {
    assert!(site < n_qubits, "site {site} out of range for {n_qubits} qubits");
    (0..n_qubits)
        .map(|k| if k == site { op.clone() } else { identity2() })
        .reduce(|acc, m| kron(&acc, &m))
        .expect("at least one qubit")
}

/// Spectral data of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct EigenDecomposition<T> {
    /// Ascending eigenvalues.
    pub values: Vec<T>,
    /// Column `k` is the eigenvector of `values[k]`.
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> EigenDecomposition<T> {
    pub fn vector(&self, k: usize) -> Vec<C<T>> {
        (0..self.vectors.dim()).map(|r| self.vectors[(r, k)]).collect()
    }

    /// `V Λ V†`.
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        let lambda: Vec<T> = self.values.clone();
        let v_lambda = ComplexMatrix::from_fn(self.vectors.dim(), |r, c| self.vectors[(r, c)] * lambda[c]);
        v_lambda.matmul(&self.vectors.dagger())
    }
}

const MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Each rotation first removes the phase of the pivot `a[p][q]` with a
/// diagonal unitary and then applies the real symmetric Jacobi rotation.
/// Iterates until the off-diagonal Frobenius norm falls below
/// `1e-14 · ‖A‖_F` (floored at a few ulps for `f32`).
pub fn hermitian_eigensystem<T: Real>(a: &ComplexMatrix<T>) -> Result<EigenDecomposition<T>> {
    let n = a.dim();
    let scale = a.max_abs().max(T::one());
    let defect = a.hermitian_defect();
    if defect > T::tolerance(1e-10) * scale {
        return Err(Error::NotHermitian {
            max_asymmetry: defect.as_f64(),
        });
    }

    let mut m = a.hermitian_part();
    for i in 0..n {
        m[(i, i)] = cr(m[(i, i)].re);
    }
    let mut v = ComplexMatrix::<T>::identity(n);
    let threshold = T::tolerance(1e-14) * m.frobenius_norm();

    let off_norm = |m: &ComplexMatrix<T>| {
        let mut s = T::zero();
        for r in 0..n {
            for c in 0..n {
                if r != c {
                    s += m[(r, c)].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut converged = off_norm(&m) <= threshold;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let mag = apq.norm();
                if mag == T::zero() {
                    continue;
                }
                let phase = apq / mag; // e^{iφ}
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let theta = (aqq - app) / (T::lit(2.0) * mag);
                let t = if theta.is_infinite() {
                    T::zero()
                } else {
                    let t = T::one() / (theta.abs() + theta.hypot(T::one()));
                    if theta < T::zero() {
                        -t
                    } else {
                        t
                    }
                };
                let c = T::one() / t.hypot(T::one());
                let s = t * c;
                let e_minus = phase.conj(); // e^{-iφ}

                // A ← A J with J_pp = c, J_qp = −s e^{−iφ}, J_pq = s, J_qq = c e^{−iφ}
                for k in 0..n {
                    let akp = m[(k, p)];
                    let akq = m[(k, q)];
                    m[(k, p)] = akp * c - akq * e_minus * s;
                    m[(k, q)] = akp * s + akq * e_minus * c;
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * e_minus * s;
                    v[(k, q)] = vkp * s + vkq * e_minus * c;
                }
                // A ← J† A
                for k in 0..n {
                    let apk = m[(p, k)];
                    let aqk = m[(q, k)];
                    m[(p, k)] = apk * c - aqk * phase * s;
                    m[(q, k)] = apk * s + aqk * phase * c;
                }
                m[(p, q)] = cr(T::zero());
                m[(q, p)] = cr(T::zero());
                m[(p, p)] = cr(m[(p, p)].re);
                m[(q, q)] = cr(m[(q, q)].re);
            }
        }
        converged = off_norm(&m) <= threshold;
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps });
    }

    let mut order: Vec<usize> = (0..n).collect();
    // Stable sort keeps ties in index order.
    order.sort_by(|&i, &j| m[(i, i)].re.partial_cmp(&m[(j, j)].re).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(EigenDecomposition { values, vectors })
}

/// Reduced density matrix of qubit `keep` out of `n_qubits`.
pub fn partial_trace<T: Real>(rho: &ComplexMatrix<T>, keep: usize, n_qubits: usize) -> Result<ComplexMatrix<T>> {
    let expected = 1usize << n_qubits;
    if rho.dim() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: rho.dim(),
        });
    }
    if keep >= n_qubits {
        return Err(Error::DimensionMismatch {
            expected: n_qubits,
            found: keep,
        });
    }
    let shift = n_qubits - 1 - keep;
    let mask = 1usize << shift;
    let mut out = ComplexMatrix::zeros(2);
    for i in 0..expected {
        if i & mask != 0 {
            continue;
        }
        for a in 0..2 {
            for b in 0..2 {
                out[(a, b)] += rho[(i | (a << shift), i | (b << shift))];
            }
        }
    }
    Ok(out)
}
