//! Battery Hamiltonians, parameters and canonical states.
//!
//! Units: ħ = 1. Energies and rates share one unit; normalized outputs are
//! expressed through [`BatteryParams::e_max`] and [`BatteryParams::p_max`].

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigensystem, kron, sigma_x, sigma_y, sigma_z, site_operator, ComplexMatrix};
use crate::scalar::{cr, Real, C};

/// Physical configuration of an N-cell XXZ battery.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BatteryParams<T> {
    pub n_cells: usize,
    /// Larmor frequency ω0 of the reference Hamiltonian.
    pub omega0: T,
    /// Charging-field amplitude Ω.
    pub omega_rabi: T,
    /// Exchange strength J.
    pub coupling_j: T,
    /// Anisotropy Δ.
    pub delta: T,
    /// Dephasing rate γ.
    pub gamma_deph: T,
    /// Number of samples on the time grid.
    pub t_steps: usize,
}

impl<T: Real> Default for BatteryParams<T> {
    fn default() -> Self {
        Self {
            n_cells: 2,
            omega0: T::one(),
            omega_rabi: T::one(),
            coupling_j: T::one(),
            delta: T::one(),
            gamma_deph: T::zero(),
            t_steps: 1001,
        }
    }
}

impl<T: Real> BatteryParams<T> {
    pub fn two_cell(coupling_j: T, delta: T) -> Self {
        Self {
            coupling_j,
            delta,
            ..Self::default()
        }
    }

    pub fn three_cell(coupling_j: T, delta: T) -> Self {
        Self {
            n_cells: 3,
            coupling_j,
            delta,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !matches!(self.n_cells, 2 | 3) {
            return Err(Error::UnsupportedCellCount(self.n_cells));
        }
        let check = |ok: bool, field: &'static str, message: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParams {
                    field,
                    message: message.to_string(),
                })
            }
        };
        check(self.omega0 > T::zero(), "omega0", "must be positive")?;
        check(self.omega_rabi > T::zero(), "omega_rabi", "must be positive")?;
        check(self.coupling_j >= T::zero(), "coupling_j", "must be non-negative")?;
        check(self.gamma_deph >= T::zero(), "gamma_deph", "must be non-negative")?;
        check(self.delta.is_finite(), "delta", "must be finite")?;
        check(self.t_steps >= 2, "t_steps", "must be at least 2")
    }

    pub fn dim(&self) -> usize {
        1 << self.n_cells
    }

    /// Full-charge time of parallel charging, π/2Ω.
    pub fn t_min(&self) -> T {
        T::FRAC_PI_2() / self.omega_rabi
    }

    /// Storable energy `2Nω0`.
    pub fn e_max(&self) -> T {
        T::lit(2.0 * self.n_cells as f64) * self.omega0
    }

    /// Peak instantaneous power of parallel charging, `E_max·Ω`.
    pub fn p_max(&self) -> T {
        self.e_max() * self.omega_rabi
    }

    /// `t_steps` uniformly spaced times on `[0, t_end]`.
    pub fn time_grid(&self, t_end: T) -> Vec<T> {
        uniform_grid(t_end, self.t_steps)
    }
}

pub fn uniform_grid<T: Real>(t_end: T, points: usize) -> Vec<T> {
    assert!(points >= 2, "grid needs at least two points");
    let last = T::lit((points - 1) as f64);
    (0..points).map(|k| t_end * T::lit(k as f64) / last).collect()
}

/// `strength · Σ_n op_n` over `n_qubits` sites.
pub fn uniform_field<T: Real>(op: &ComplexMatrix<T>, strength: T, n_qubits: usize) -> ComplexMatrix<T> {
    let dim = 1 << n_qubits;
    (0..n_qubits)
        .map(|k| site_operator(op, k, n_qubits))
        .fold(ComplexMatrix::zeros(dim), |acc, m| &acc + &m)
        .scale_real(strength)
}

/// Reference Hamiltonian `ω0 Σ σᶻ_n`.
pub fn build_h0<T: Real>(params: &BatteryParams<T>) -> ComplexMatrix<T> {
    uniform_field(&sigma_z(), params.omega0, params.n_cells)
}

/// Charging Hamiltonian `Ω Σ σˣ_n`.
pub fn build_h_charging<T: Real>(params: &BatteryParams<T>) -> ComplexMatrix<T> {
    uniform_field(&sigma_x(), params.omega_rabi, params.n_cells)
}

/// Open-chain XXZ coupling `J Σ_n (σˣσˣ + σʸσʸ + Δσᶻσᶻ)` on nearest neighbours.
pub fn build_h_interaction<T: Real>(params: &BatteryParams<T>) -> Result<ComplexMatrix<T>> {
    let n = params.n_cells;
    if !matches!(n, 2 | 3) {
        return Err(Error::UnsupportedCellCount(n));
    }
    let bond = {
        let xx = kron(&sigma_x::<T>(), &sigma_x());
        let yy = kron(&sigma_y::<T>(), &sigma_y());
        let zz = kron(&sigma_z::<T>(), &sigma_z());
        &(&xx + &yy) + &zz.scale_real(params.delta)
    };
    let dim = 1 << n;
    let mut h = ComplexMatrix::zeros(dim);
    for left in 0..n - 1 {
        let before = ComplexMatrix::<T>::identity(1 << left);
        let after = ComplexMatrix::<T>::identity(1 << (n - left - 2));
        let term = kron(&kron(&before, &bond), &after);
        h = &h + &term;
    }
    Ok(h.scale_real(params.coupling_j))
}

/// Driving Hamiltonian `H_ch + H_int`.
pub fn build_h_total<T: Real>(params: &BatteryParams<T>) -> Result<ComplexMatrix<T>> {
    Ok(&build_h_charging(params) + &build_h_interaction(params)?)
}

/// Pure amplitude vector or density matrix over the `2^N` product basis.
#[derive(Clone, Debug, PartialEq)]
pub enum BatteryState<T> {
    Pure { amplitudes: Vec<C<T>>, n_cells: usize },
    Mixed { rho: ComplexMatrix<T>, n_cells: usize },
}

fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::InvalidState(format!("dimension {dim} is not a power of two")));
    }
    Ok(dim.trailing_zeros() as usize)
}

impl<T: Real> BatteryState<T> {
    /// Validated pure state; norm must be 1 within 1e-10.
    pub fn pure(amplitudes: Vec<C<T>>) -> Result<Self> {
        let n_cells = qubits_for_dim(amplitudes.len())?;
        let norm: T = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm - T::one()).abs() > T::tolerance(1e-10) {
            return Err(Error::InvalidState(format!("norm² = {norm} differs from 1")));
        }
        Ok(Self::Pure { amplitudes, n_cells })
    }

    /// Validated density matrix: Hermitian, unit trace, min eigenvalue ≥ −1e-8.
    pub fn mixed(rho: ComplexMatrix<T>) -> Result<Self> {
        let n_cells = qubits_for_dim(rho.dim())?;
        check_density_matrix(&rho)?;
        Ok(Self::Mixed { rho, n_cells })
    }

    /// Basis state with the given index (bit 1 = `|↑⟩`, qubit 0 most significant).
    pub fn basis(n_cells: usize, index: usize) -> Self {
        let dim = 1 << n_cells;
        assert!(index < dim, "basis index out of range");
        let mut amplitudes = vec![cr(T::zero()); dim];
        amplitudes[index] = cr(T::one());
        Self::Pure { amplitudes, n_cells }
    }

    pub fn n_cells(&self) -> usize {
        match self {
            Self::Pure { n_cells, .. } | Self::Mixed { n_cells, .. } => *n_cells,
        }
    }

    pub fn dim(&self) -> usize {
        1 << self.n_cells()
    }

    pub fn is_pure(&self) -> bool {
        matches!(self, Self::Pure { .. })
    }

    pub fn amplitudes(&self) -> Option<&[C<T>]> {
        match self {
            Self::Pure { amplitudes, .. } => Some(amplitudes),
            Self::Mixed { .. } => None,
        }
    }

    pub fn density_matrix(&self) -> ComplexMatrix<T> {
        match self {
            Self::Pure { amplitudes, .. } => ComplexMatrix::outer(amplitudes),
            Self::Mixed { rho, .. } => rho.clone(),
        }
    }

    /// `tr(ρA)`, real part.
    pub fn expectation(&self, op: &ComplexMatrix<T>) -> T {
        match self {
            Self::Pure { amplitudes, .. } => op.expectation(amplitudes).re,
            Self::Mixed { rho, .. } => rho.matmul(op).trace().re,
        }
    }
}

pub(crate) fn check_density_matrix<T: Real>(rho: &ComplexMatrix<T>) -> Result<()> {
    let defect = rho.hermitian_defect();
    if defect > T::tolerance(1e-10) {
        return Err(Error::InvalidDensityMatrix(format!("not Hermitian (defect {defect:e})")));
    }
    let tr = rho.trace();
    if (tr.re - T::one()).abs() > T::tolerance(1e-10) || tr.im.abs() > T::tolerance(1e-10) {
        return Err(Error::InvalidDensityMatrix(format!("trace {} + {}i differs from 1", tr.re, tr.im)));
    }
    let eig = hermitian_eigensystem(rho)?;
    if eig.values[0] < -T::tolerance(1e-8) {
        return Err(Error::InvalidDensityMatrix(format!("negative eigenvalue {}", eig.values[0])));
    }
    Ok(())
}

/// `|↓…↓⟩`, the ground state of `H0`.
pub fn empty_state<T: Real>(n_cells: usize) -> BatteryState<T> {
    BatteryState::basis(n_cells, 0)
}

/// `|↑…↑⟩`, the top state of `H0`.
pub fn full_state<T: Real>(n_cells: usize) -> BatteryState<T> {
    BatteryState::basis(n_cells, (1 << n_cells) - 1)
}
