//! Figures of merit: ergotropy, power, entanglement, coherence, purity and
//! time averages.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigensystem, partial_trace, ComplexMatrix};
use crate::model::{check_density_matrix, BatteryState};
use crate::scalar::{Real, C};

fn check_dim<T: Real>(state: &BatteryState<T>, op: &ComplexMatrix<T>) -> Result<()> {
    if state.dim() != op.dim() {
        return Err(Error::DimensionMismatch {
            expected: op.dim(),
            found: state.dim(),
        });
    }
    Ok(())
}

/// Work extractable from a pure state: `⟨ψ|H0|ψ⟩ − E_ground`.
pub fn ergotropy_pure<T: Real>(psi: &BatteryState<T>, h0: &ComplexMatrix<T>) -> Result<T> {
    let amps = psi.amplitudes().ok_or(Error::NotPure)?;
    check_dim(psi, h0)?;
    let ground = hermitian_eigensystem(h0)?.values[0];
    Ok(h0.expectation(amps).re - ground)
}

fn as_density<T: Real>(state: &BatteryState<T>) -> Result<ComplexMatrix<T>> {
    let rho = state.density_matrix();
    match check_density_matrix(&rho) {
        Ok(()) => Ok(rho),
        Err(Error::NotHermitian { max_asymmetry }) => Err(Error::InvalidDensityMatrix(format!(
            "not Hermitian (defect {max_asymmetry:e})"
        ))),
        Err(e) => Err(e),
    }
}

/// Ergotropy of an arbitrary state,
/// `Σ_{n,i} x_n ε_i (|⟨x_n|ε_i⟩|² − δ_ni)` with populations `x_n` descending
/// and reference energies `ε_i` ascending.
pub fn ergotropy_general<T: Real>(rho: &BatteryState<T>, h0: &ComplexMatrix<T>) -> Result<T> {
    check_dim(rho, h0)?;
    let rho = as_density(rho)?;
    let pops = hermitian_eigensystem(&rho)?;
    let levels = hermitian_eigensystem(h0)?;
    let n = rho.dim();
    let mut total = T::zero();
    for (rank, k) in (0..n).rev().enumerate() {
        let x = pops.values[k];
        let xv = pops.vector(k);
        for i in 0..n {
            let eps = levels.values[i];
            let ev = levels.vector(i);
            let overlap: C<T> = xv.iter().zip(&ev).map(|(a, b)| a.conj() * b).sum();
            let kron_delta = if rank == i { T::one() } else { T::zero() };
            total += x * eps * (overlap.norm_sqr() - kron_delta);
        }
    }
    Ok(total)
}

/// Energy of the passive state: largest population on the lowest level, and so on.
pub fn passive_energy<T: Real>(rho: &BatteryState<T>, h0: &ComplexMatrix<T>) -> Result<T> {
    check_dim(rho, h0)?;
    let pops = hermitian_eigensystem(&as_density(rho)?)?;
    let levels = hermitian_eigensystem(h0)?;
    Ok(pops.values.iter().rev().zip(&levels.values).map(|(&x, &e)| x * e).sum())
}

/// `σ_ρ = Σ_i p_i |ε_i⟩⟨ε_i|` with `p_i` the spectrum of ρ sorted descending.
pub fn passive_state<T: Real>(rho: &BatteryState<T>, h0: &ComplexMatrix<T>) -> Result<BatteryState<T>> {
    check_dim(rho, h0)?;
    let pops = hermitian_eigensystem(&as_density(rho)?)?;
    let levels = hermitian_eigensystem(h0)?;
    let n = h0.dim();
    let mut sigma = ComplexMatrix::zeros(n);
    for (i, &p) in pops.values.iter().rev().enumerate() {
        let proj = ComplexMatrix::outer(&levels.vector(i)).scale_real(p);
        sigma = &sigma + &proj;
    }
    Ok(BatteryState::Mixed {
        rho: sigma,
        n_cells: rho.n_cells(),
    })
}

/// Pure-state two-qubit concurrence `2|α↑↑α↓↓ − α↓↑α↑↓|`.
pub fn concurrence_pure_two_qubit<T: Real>(psi: &BatteryState<T>) -> Result<T> {
    let a = psi.amplitudes().ok_or(Error::NotPure)?;
    if a.len() != 4 {
        return Err(Error::WrongDimension {
            expected: 4,
            found: a.len(),
        });
    }
    Ok(T::lit(2.0) * (a[3] * a[0] - a[1] * a[2]).norm())
}

/// l1-norm of coherence in the product basis, divided by `2^N − 1`.
pub fn l1_coherence_normalized<T: Real>(rho: &BatteryState<T>) -> Result<T> {
    let m = match rho {
        BatteryState::Pure { .. } => rho.density_matrix(),
        BatteryState::Mixed { .. } => as_density(rho)?,
    };
    let n = m.dim();
    let mut sum = T::zero();
    for r in 0..n {
        for c in 0..n {
            if r != c {
                sum += m[(r, c)].norm();
            }
        }
    }
    Ok(sum / T::lit((n - 1) as f64))
}

/// Mean single-qubit purity `Σ_n tr(ρ_n²) / N`.
pub fn average_purity<T: Real>(rho: &BatteryState<T>) -> T {
    let n = rho.n_cells();
    let m = rho.density_matrix();
    let total: T = (0..n)
        .map(|k| {
            let r = partial_trace(&m, k, n).expect("state dimension is 2^n");
            r.matmul(&r).trace().re
        })
        .sum();
    total / T::lit(n as f64)
}

/// Energy-current operator `(1/i)[H0, H]`.
pub fn power_operator<T: Real>(h0: &ComplexMatrix<T>, h: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    if h0.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h0.dim(),
            found: h.dim(),
        });
    }
    Ok(h0.commutator(h).scale(C::new(T::zero(), -T::one())))
}

/// `tr(P̂ ρ)`.
pub fn instantaneous_power<T: Real>(rho: &BatteryState<T>, p_op: &ComplexMatrix<T>) -> Result<T> {
    check_dim(rho, p_op)?;
    Ok(rho.expectation(p_op))
}

/// Three-point derivative: central inside, second-order one-sided at the ends.
pub fn numerical_derivative<T: Real>(times: &[T], values: &[T]) -> Result<Vec<T>> {
    if times.len() != values.len() {
        return Err(Error::LengthMismatch(times.len(), values.len()));
    }
    let n = times.len();
    if n < 3 {
        return Err(Error::TooFewSamples { needed: 3, found: n });
    }
    // Derivative at x0 of the quadratic through (x0,y0), (x1,y1), (x2,y2).
    let lagrange = |x: [T; 3], y: [T; 3], at: usize| {
        let mut d = T::zero();
        for j in 0..3 {
            let mut denom = T::one();
            for m in 0..3 {
                if m != j {
                    denom *= x[j] - x[m];
                }
            }
            let mut numer = T::zero();
            for m in 0..3 {
                if m == j {
                    continue;
                }
                let mut prod = T::one();
                for l in 0..3 {
                    if l != j && l != m {
                        prod *= x[at] - x[l];
                    }
                }
                numer += prod;
            }
            d += y[j] * numer / denom;
        }
        d
    };
    let mut out = Vec::with_capacity(n);
    out.push(lagrange([times[0], times[1], times[2]], [values[0], values[1], values[2]], 0));
    for i in 1..n - 1 {
        out.push((values[i + 1] - values[i - 1]) / (times[i + 1] - times[i - 1]));
    }
    out.push(lagrange(
        [times[n - 3], times[n - 2], times[n - 1]],
        [values[n - 3], values[n - 2], values[n - 1]],
        2,
    ));
    Ok(out)
}

pub fn numerical_power_from_ergotropy<T: Real>(trace: &ChargeTrace<T>) -> Result<Vec<T>> {
    numerical_derivative(&trace.times, &trace.ergotropy)
}

/// `(1/T) ∫₀^T X(t) dt` by composite Simpson on a uniform grid with an odd sample count.
pub fn time_average<T: Real>(times: &[T], values: &[T]) -> Result<T> {
    if times.len() != values.len() {
        return Err(Error::LengthMismatch(times.len(), values.len()));
    }
    let n = times.len();
    if n < 3 {
        return Err(Error::TooFewSamples { needed: 3, found: n });
    }
    if n.is_multiple_of(2) {
        return Err(Error::EvenSampleCount(n));
    }
    let span = times[n - 1] - times[0];
    let h = span / T::lit((n - 1) as f64);
    let tol = T::tolerance(1e-9) * span.abs().max(T::one());
    if times.windows(2).any(|w| (w[1] - w[0] - h).abs() > tol) {
        return Err(Error::NonUniformGrid);
    }
    let mut acc = values[0] + values[n - 1];
    for (i, &v) in values.iter().enumerate().take(n - 1).skip(1) {
        acc += v * if i % 2 == 1 { T::lit(4.0) } else { T::lit(2.0) };
    }
    Ok(acc * h / T::lit(3.0) / span)
}

/// What the `correlation` column of a [`ChargeTrace`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorrelationKind {
    /// Pure-state two-qubit concurrence.
    Concurrence,
    /// Mean single-cell purity.
    AveragePurity,
}

/// Time series of normalized charging observables.
///
/// Times are in units of 1/Ω, ergotropy in units of `E_max`, power in units
/// of `E_max·Ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChargeTrace<T> {
    pub n_cells: usize,
    pub times: Vec<T>,
    pub ergotropy: Vec<T>,
    pub power: Vec<T>,
    pub correlation: Vec<T>,
    pub correlation_kind: CorrelationKind,
    pub coherence: Vec<T>,
    /// Power from the interaction-only energy current, when computed.
    pub power_interaction: Option<Vec<T>>,
}

/// Window averages over `[0, t_min]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AveragedSummary<T> {
    pub e_fin: T,
    pub p_avg: T,
    pub q_avg: T,
    pub c_avg: T,
}

impl<T: Real> ChargeTrace<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Averages over the full stored window; `e_fin` is the last ergotropy sample.
    pub fn summary(&self) -> Result<AveragedSummary<T>> {
        let e_fin = *self.ergotropy.last().ok_or(Error::TooFewSamples { needed: 3, found: 0 })?;
        Ok(AveragedSummary {
            e_fin,
            p_avg: time_average(&self.times, &self.power)?,
            q_avg: time_average(&self.times, &self.correlation)?,
            c_avg: time_average(&self.times, &self.coherence)?,
        })
    }
}
