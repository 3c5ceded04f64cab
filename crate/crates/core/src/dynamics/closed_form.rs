//! Analytic dynamics of the two-cell battery under `H = H_ch + H_int`.
//!
//! `H` splits into the exchange-antisymmetric pair `|E1⟩ = (|↓↓⟩−|↑↑⟩)/√2`,
//! `|E2⟩ = (|↓↑⟩−|↑↓⟩)/√2` and a symmetric 2×2 block mixing
//! `|↓↓⟩+|↑↑⟩` with `|↓↑⟩+|↑↓⟩`, whose eigenvectors carry the mixing
//! coefficients γ1, γ2.

use crate::error::{Error, Result};
use crate::model::BatteryParams;
use crate::scalar::{cis, cr, Real, C};

/// Eigen-data of the two-cell driving Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoCellSpectrum<T> {
    /// `JΔ`
    pub e1: T,
    /// `−J(Δ+2)`
    pub e2: T,
    /// `J − β`
    pub e3: T,
    /// `J + β`
    pub e4: T,
    /// `J(Δ−1)`
    pub alpha: T,
    /// `√(J²(Δ−1)² + 4Ω²)`
    pub beta: T,
    pub gamma1: T,
    pub gamma2: T,
}

impl<T: Real> TwoCellSpectrum<T> {
    pub fn new(omega_rabi: T, coupling_j: T, delta: T) -> Self {
        let two = T::lit(2.0);
        let alpha = coupling_j * (delta - T::one());
        let beta = (alpha * alpha + T::lit(4.0) * omega_rabi * omega_rabi).sqrt();
        let norm = (two * (alpha + beta).powi(2) + T::lit(8.0) * omega_rabi * omega_rabi).sqrt();
        Self {
            e1: coupling_j * delta,
            e2: -coupling_j * (delta + two),
            e3: coupling_j - beta,
            e4: coupling_j + beta,
            alpha,
            beta,
            gamma1: two * omega_rabi / norm,
            gamma2: (alpha + beta) / norm,
        }
    }

    pub fn energies(&self) -> [T; 4] {
        [self.e1, self.e2, self.e3, self.e4]
    }

    /// Eigenvectors `|E1⟩..|E4⟩` as amplitudes over `(↓↓, ↓↑, ↑↓, ↑↑)`.
    pub fn eigenvectors(&self) -> [[C<T>; 4]; 4] {
        let s = cr(T::FRAC_1_SQRT_2());
        let z = cr(T::zero());
        let (g1, g2) = (cr(self.gamma1), cr(self.gamma2));
        [[s, z, z, -s], [z, s, -s, z], [g1, -g2, -g2, g1], [g2, g1, g1, g2]]
    }

    /// Evolves `init` for time `t`.
    pub fn evolve(&self, init: &StateCoefficients<T>, t: T) -> StateCoefficients<T> {
        if t == T::zero() {
            return *init;
        }
        let [p1, p2, p3, p4] = self.energies().map(|e| cis(-e * t));
        let (g1s, g2s) = (self.gamma1 * self.gamma1, self.gamma2 * self.gamma2);
        let g12 = self.gamma1 * self.gamma2;
        let half = T::lit(0.5);
        let StateCoefficients { mu, nu, eta, delta } = *init;

        let mu_t = -(delta - mu) * half * p1 + (delta + mu) * (p3 * g1s + p4 * g2s) + (nu + eta) * (p4 - p3) * g12;
        let nu_t = -(eta - nu) * half * p2 + (eta + nu) * (p3 * g2s + p4 * g1s) + (delta + mu) * (p4 - p3) * g12;
        StateCoefficients {
            mu: mu_t,
            nu: nu_t,
            eta: (eta - nu) * p2 + nu_t,
            delta: (delta - mu) * p1 + mu_t,
        }
    }

    /// Phase frequencies `(E3 − E1, E4 − E1) = (−(α+β), β−α)`.
    fn beat_frequencies(&self) -> (T, T) {
        (self.e3 - self.e1, self.e4 - self.e1)
    }
}

pub fn two_cell_spectrum<T: Real>(params: &BatteryParams<T>) -> Result<TwoCellSpectrum<T>> {
    if params.n_cells != 2 {
        return Err(Error::UnsupportedCellCount(params.n_cells));
    }
    Ok(TwoCellSpectrum::new(params.omega_rabi, params.coupling_j, params.delta))
}

/// Amplitudes of `|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateCoefficients<T> {
    pub mu: C<T>,
    pub nu: C<T>,
    pub eta: C<T>,
    pub delta: C<T>,
}

impl<T: Real> StateCoefficients<T> {
    pub fn empty() -> Self {
        let z = cr(T::zero());
        Self {
            mu: z,
            nu: z,
            eta: z,
            delta: cr(T::one()),
        }
    }

    /// From amplitudes in basis-index order `(↓↓, ↓↑, ↑↓, ↑↑)`.
    pub fn from_amplitudes(amps: &[C<T>]) -> Result<Self> {
        if amps.len() != 4 {
            return Err(Error::WrongDimension {
                expected: 4,
                found: amps.len(),
            });
        }
        Ok(Self {
            mu: amps[3],
            nu: amps[2],
            eta: amps[1],
            delta: amps[0],
        })
    }

    pub fn to_amplitudes(&self) -> Vec<C<T>> {
        vec![self.delta, self.eta, self.nu, self.mu]
    }

    pub fn norm_sqr(&self) -> T {
        self.mu.norm_sqr() + self.nu.norm_sqr() + self.eta.norm_sqr() + self.delta.norm_sqr()
    }
}

pub fn evolve_closed_form<T: Real>(
    init: &StateCoefficients<T>,
    t: T,
    params: &BatteryParams<T>,
) -> Result<StateCoefficients<T>> {
    Ok(two_cell_spectrum(params)?.evolve(init, t))
}

/// Bloch angles of a two-qubit product state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductStateAngles<T> {
    pub theta1: T,
    pub theta2: T,
    pub phi1: T,
    pub phi2: T,
}

impl<T: Real> ProductStateAngles<T> {
    pub fn new(theta1: T, theta2: T, phi1: T, phi2: T) -> Result<Self> {
        let pi = T::PI();
        let tau = T::TAU();
        let in_range = |x: T, hi: T, closed: bool| x >= T::zero() && (x < hi || (closed && x == hi));
        if !in_range(theta1, pi, true) || !in_range(theta2, pi, true) {
            return Err(Error::InvalidState("theta must lie in [0, π]".into()));
        }
        if !in_range(phi1, tau, false) || !in_range(phi2, tau, false) {
            return Err(Error::InvalidState("phi must lie in [0, 2π)".into()));
        }
        Ok(Self {
            theta1,
            theta2,
            phi1,
            phi2,
        })
    }

    pub fn coefficients(&self) -> StateCoefficients<T> {
        let (s1, c1) = self.theta1.sin_cos();
        let (s2, c2) = self.theta2.sin_cos();
        StateCoefficients {
            mu: cis(self.phi1 + self.phi2) * (s1 * s2),
            nu: cis(self.phi1) * (s1 * c2),
            eta: cis(self.phi2) * (c1 * s2),
            delta: cr(c1 * c2),
        }
    }
}

/// Initial-state structure factors entering the closed-form energy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaFactors<T> {
    pub g1: T,
    pub g2: T,
    pub g3: T,
    /// Includes the `γ1γ2` mixing prefactor.
    pub g4: T,
}

impl<T: Real> GammaFactors<T> {
    pub fn new(angles: &ProductStateAngles<T>, spectrum: &TwoCellSpectrum<T>) -> Self {
        let two = T::lit(2.0);
        let ProductStateAngles {
            theta1,
            theta2,
            phi1,
            phi2,
        } = *angles;
        let (s1, c1) = theta1.sin_cos();
        let (s2, c2) = theta2.sin_cos();
        let (sd1, sd2) = ((two * theta1).sin(), (two * theta2).sin());
        let (cd1, cd2) = ((two * theta1).cos(), (two * theta2).cos());
        Self {
            g1: two * (c1 * c1 * c2 * c2 - s1 * s1 * s2 * s2),
            g2: sd1 * sd2 * (phi1 + phi2).sin(),
            g3: sd1 * phi1.sin() + sd2 * phi2.sin(),
            g4: spectrum.gamma1 * spectrum.gamma2 * (sd1 * cd2 * phi1.cos() + sd2 * cd1 * phi2.cos()),
        }
    }
}

/// `tr(ρ(t) H0)` for a product initial state.
///
/// The Γ3 term carries a `γ1γ2` factor and every term sits inside the
/// `−2ω0` prefactor; this is what the amplitude solution above implies.
pub fn energy_closed_form<T: Real>(angles: &ProductStateAngles<T>, t: T, params: &BatteryParams<T>) -> Result<T> {
    let sp = two_cell_spectrum(params)?;
    let g = GammaFactors::new(angles, &sp);
    let (w3, w4) = sp.beat_frequencies();
    let (a3, a4) = (w3 * t, w4 * t);
    let (g1s, g2s) = (sp.gamma1 * sp.gamma1, sp.gamma2 * sp.gamma2);
    let bracket = g.g1 * (g1s * a3.cos() + g2s * a4.cos())
        + g.g2 * (g1s * a3.sin() + g2s * a4.sin())
        + sp.gamma1 * sp.gamma2 * g.g3 * (a4.sin() - a3.sin())
        + g.g4 * (a4.cos() - a3.cos());
    Ok(-T::lit(2.0) * params.omega0 * bracket)
}

/// Ergotropy of the evolved empty state, `U(t) − E_emp`.
pub fn ergotropy_closed_form_empty<T: Real>(t: T, params: &BatteryParams<T>) -> Result<T> {
    let sp = two_cell_spectrum(params)?;
    let (w3, w4) = sp.beat_frequencies();
    let inner = sp.gamma1 * sp.gamma1 * (w3 * t).cos() + sp.gamma2 * sp.gamma2 * (w4 * t).cos() - T::lit(0.5);
    Ok(-T::lit(4.0) * params.omega0 * inner)
}

/// Time derivative of [`ergotropy_closed_form_empty`].
pub fn power_closed_form_empty<T: Real>(t: T, params: &BatteryParams<T>) -> Result<T> {
    let sp = two_cell_spectrum(params)?;
    let (w3, w4) = sp.beat_frequencies();
    let sum = sp.gamma1 * sp.gamma1 * w3 * (w3 * t).sin() + sp.gamma2 * sp.gamma2 * w4 * (w4 * t).sin();
    Ok(T::lit(4.0) * params.omega0 * sum)
}
