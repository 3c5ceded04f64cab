//! Fixed-step RK4 integration of the dephasing master equation
//! `dρ/dt = −i[H, ρ] + γ Σ_n (σᶻ_n ρ σᶻ_n − ρ)`.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigensystem, ComplexMatrix};
use crate::model::{BatteryParams, BatteryState};
use crate::scalar::{Real, C};

/// Upper bound on `(‖H‖ + 2Nγ)·dt`.
pub const STABILITY_LIMIT: f64 = 0.05;

/// Right-hand side of the dephasing master equation.
///
/// σᶻ jumps are diagonal, so the dissipator acts elementwise:
/// `(σᶻ_n ρ σᶻ_n)_ij = s_n(i) s_n(j) ρ_ij`.
#[derive(Clone, Debug)]
pub struct DephasingGenerator<T> {
    h: ComplexMatrix<T>,
    dissipator: Vec<T>,
    spectral_radius: T,
    gamma: T,
    n_qubits: usize,
}

impl<T: Real> DephasingGenerator<T> {
    pub fn new(h: &ComplexMatrix<T>, gamma: T) -> Result<Self> {
        let dim = h.dim();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::DimensionMismatch {
                expected: dim.next_power_of_two().max(2),
                found: dim,
            });
        }
        if gamma < T::zero() {
            return Err(Error::InvalidParams {
                field: "gamma_deph",
                message: "must be non-negative".into(),
            });
        }
        let eig = hermitian_eigensystem(h)?;
        let spectral_radius = eig.values[0].abs().max(eig.values[dim - 1].abs());
        let n_qubits = dim.trailing_zeros() as usize;
        let sign = |idx: usize, q: usize| {
            if (idx >> (n_qubits - 1 - q)) & 1 == 1 {
                T::one()
            } else {
                -T::one()
            }
        };
        let mut dissipator = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let s: T = (0..n_qubits).map(|q| sign(i, q) * sign(j, q) - T::one()).sum();
                dissipator.push(gamma * s);
            }
        }
        Ok(Self {
            h: h.clone(),
            dissipator,
            spectral_radius,
            gamma,
            n_qubits,
        })
    }

    pub fn apply(&self, rho: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        let minus_i = C::new(T::zero(), -T::one());
        let unitary = self.h.commutator(rho).scale(minus_i);
        let dim = rho.dim();
        ComplexMatrix::from_fn(dim, |r, c| unitary[(r, c)] + rho[(r, c)] * self.dissipator[r * dim + c])
    }

    /// `(‖H‖ + 2Nγ)·dt`.
    pub fn stiffness(&self, dt: T) -> T {
        (self.spectral_radius + T::lit(2.0 * self.n_qubits as f64) * self.gamma) * dt
    }

    pub fn rk4_step(&self, rho: &ComplexMatrix<T>, dt: T) -> ComplexMatrix<T> {
        let half = dt * T::lit(0.5);
        let k1 = self.apply(rho);
        let k2 = self.apply(&(rho + &k1.scale_real(half)));
        let k3 = self.apply(&(rho + &k2.scale_real(half)));
        let k4 = self.apply(&(rho + &k3.scale_real(dt)));
        let two = T::lit(2.0);
        let incr = &(&(&k1 + &k2.scale_real(two)) + &k3.scale_real(two)) + &k4;
        (rho + &incr.scale_real(dt / T::lit(6.0))).hermitian_part()
    }
}

/// Density matrices at uniformly spaced times.
#[derive(Clone, Debug)]
pub struct LindbladTrajectory<T> {
    pub times: Vec<T>,
    pub states: Vec<ComplexMatrix<T>>,
}

impl<T: Real> LindbladTrajectory<T> {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> &ComplexMatrix<T> {
        self.states.last().expect("trajectory holds the initial state")
    }

    pub fn battery_states(&self) -> Vec<BatteryState<T>> {
        let n_cells = self.states[0].dim().trailing_zeros() as usize;
        self.states
            .iter()
            .map(|rho| BatteryState::Mixed {
                rho: rho.clone(),
                n_cells,
            })
            .collect()
    }
}

fn prepare<T: Real>(h: &ComplexMatrix<T>, rho0: &BatteryState<T>, params: &BatteryParams<T>) -> Result<(DephasingGenerator<T>, ComplexMatrix<T>)> {
    if rho0.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: rho0.dim(),
        });
    }
    Ok((DephasingGenerator::new(h, params.gamma_deph)?, rho0.density_matrix()))
}

fn check_step<T: Real>(gen: &DephasingGenerator<T>, dt: T) -> Result<()> {
    let product = gen.stiffness(dt);
    if product > T::lit(STABILITY_LIMIT) {
        return Err(Error::StepTooLarge {
            product: product.as_f64(),
            limit: STABILITY_LIMIT,
        });
    }
    Ok(())
}

/// Integrates `n_steps` RK4 steps on `[0, t_end]`, storing every step.
pub fn lindblad_integrate<T: Real>(
    h: &ComplexMatrix<T>,
    rho0: &BatteryState<T>,
    params: &BatteryParams<T>,
    t_end: T,
    n_steps: usize,
) -> Result<LindbladTrajectory<T>> {
    lindblad_run(h, rho0, params, t_end, n_steps, 1)
}

/// Smallest number of RK4 substeps per output interval meeting the stability bound.
pub fn rk4_steps_for<T: Real>(h: &ComplexMatrix<T>, gamma: T, interval: T) -> Result<usize> {
    let gen = DephasingGenerator::new(h, gamma)?;
    let needed = (gen.stiffness(interval) / T::lit(STABILITY_LIMIT)).ceil();
    Ok(needed.to_usize().unwrap_or(1).max(1))
}

/// Integrates on `[0, t_end]`, storing `samples` uniformly spaced states and
/// subdividing each interval as needed to respect [`STABILITY_LIMIT`].
pub fn lindblad_sampled<T: Real>(
    h: &ComplexMatrix<T>,
    rho0: &BatteryState<T>,
    params: &BatteryParams<T>,
    t_end: T,
    samples: usize,
) -> Result<LindbladTrajectory<T>> {
    if samples < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            found: samples,
        });
    }
    let intervals = samples - 1;
    let sub = rk4_steps_for(h, params.gamma_deph, t_end / T::lit(intervals as f64))?;
    lindblad_run(h, rho0, params, t_end, intervals * sub, sub)
}

fn lindblad_run<T: Real>(
    h: &ComplexMatrix<T>,
    rho0: &BatteryState<T>,
    params: &BatteryParams<T>,
    t_end: T,
    n_steps: usize,
    stride: usize,
) -> Result<LindbladTrajectory<T>> {
    if n_steps == 0 {
        return Err(Error::TooFewSamples { needed: 1, found: 0 });
    }
    let (gen, mut rho) = prepare(h, rho0, params)?;
    let dt = t_end / T::lit(n_steps as f64);
    check_step(&gen, dt)?;

    let stored = n_steps / stride + 1;
    let mut times = Vec::with_capacity(stored);
    let mut states = Vec::with_capacity(stored);
    times.push(T::zero());
    states.push(rho.clone());
    for step in 1..=n_steps {
        rho = gen.rk4_step(&rho, dt);
        if step % stride == 0 {
            times.push(t_end * T::lit(step as f64) / T::lit(n_steps as f64));
            states.push(rho.clone());
        }
    }
    Ok(LindbladTrajectory { times, states })
}
