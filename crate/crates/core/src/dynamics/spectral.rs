use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigensystem, ComplexMatrix, EigenDecomposition};
use crate::model::BatteryState;
use crate::scalar::{cis, cr, Real, C};

/// Exact propagator `e^{−iHt}` of a time-independent Hermitian `H`,
/// diagonalized once and reused for every time.
#[derive(Clone, Debug)]
pub struct SpectralPropagator<T> {
    eig: EigenDecomposition<T>,
}

impl<T: Real> SpectralPropagator<T> {
    pub fn new(h: &ComplexMatrix<T>) -> Result<Self> {
        Ok(Self {
            eig: hermitian_eigensystem(h)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.eig.vectors.dim()
    }

    pub fn eigensystem(&self) -> &EigenDecomposition<T> {
        &self.eig
    }

    /// `|ψ(t)⟩ = Σ_n c_n e^{−iE_n t} |E_n⟩`.
    pub fn propagate(&self, psi0: &[C<T>], t: T) -> Result<Vec<C<T>>> {
        let n = self.dim();
        if psi0.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: psi0.len(),
            });
        }
        let v = &self.eig.vectors;
        let mut out = vec![cr(T::zero()); n];
        for (k, &e) in self.eig.values.iter().enumerate() {
            let c = (0..n).fold(cr(T::zero()), |acc, r| acc + v[(r, k)].conj() * psi0[r]) * cis(-e * t);
            for (r, o) in out.iter_mut().enumerate() {
                *o += v[(r, k)] * c;
            }
        }
        Ok(out)
    }

    pub fn unitary(&self, t: T) -> ComplexMatrix<T> {
        let v = &self.eig.vectors;
        let phased = ComplexMatrix::from_fn(self.dim(), |r, c| v[(r, c)] * cis(-self.eig.values[c] * t));
        phased.matmul(&v.dagger())
    }

    /// Pure states stay pure; density matrices go to `UρU†`.
    pub fn propagate_state(&self, state: &BatteryState<T>, t: T) -> Result<BatteryState<T>> {
        match state {
            BatteryState::Pure { amplitudes, n_cells } => Ok(BatteryState::Pure {
                amplitudes: self.propagate(amplitudes, t)?,
                n_cells: *n_cells,
            }),
            BatteryState::Mixed { rho, n_cells } => {
                if rho.dim() != self.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim(),
                        found: rho.dim(),
                    });
                }
                let u = self.unitary(t);
                Ok(BatteryState::Mixed {
                    rho: u.matmul(rho).matmul(&u.dagger()),
                    n_cells: *n_cells,
                })
            }
        }
    }
}

pub fn spectral_propagate<T: Real>(h: &ComplexMatrix<T>, psi0: &BatteryState<T>, t: T) -> Result<BatteryState<T>> {
    SpectralPropagator::new(h)?.propagate_state(psi0, t)
}
