//! Experiment families and their CSV output.
//!
//! All outputs are normalized: times in 1/Ω, ergotropy in `E_max`, power in
//! `E_max·Ω`. Every trace starts from the empty state and spans `[0, t_min]`.

mod config;
mod csv;

pub use config::{log_spaced, ScenarioConfig, ScenarioKind, DEFAULT_SWEEP_J_POINTS, DEFAULT_TIME_POINTS, MIN_TIME_POINTS};
pub use csv::{emit_csv, format_sig12, write_csv};

use rayon::prelude::*;

use crate::dynamics::{lindblad_sampled, power_closed_form_empty, two_cell_spectrum, SpectralPropagator, StateCoefficients};
use crate::error::Result;
use crate::metrics::{
    average_purity, concurrence_pure_two_qubit, ergotropy_general, ergotropy_pure, instantaneous_power,
    l1_coherence_normalized, numerical_derivative, power_operator, AveragedSummary, ChargeTrace, CorrelationKind,
};
use crate::model::{build_h0, build_h_interaction, build_h_total, empty_state, BatteryParams, BatteryState};

/// Window averages on a (Δ, J/Ω) grid; arrays are indexed `[delta][j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepGrid {
    pub delta_axis: Vec<f64>,
    pub j_axis: Vec<f64>,
    pub e_fin: Vec<Vec<f64>>,
    pub p_avg: Vec<Vec<f64>>,
    pub q_avg: Vec<Vec<f64>>,
    pub c_avg: Vec<Vec<f64>>,
}

impl SweepGrid {
    pub fn summary(&self, i_delta: usize, i_j: usize) -> AveragedSummary<f64> {
        AveragedSummary {
            e_fin: self.e_fin[i_delta][i_j],
            p_avg: self.p_avg[i_delta][i_j],
            q_avg: self.q_avg[i_delta][i_j],
            c_avg: self.c_avg[i_delta][i_j],
        }
    }
}

/// Which swept parameter labels a family of traces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceKey {
    Delta,
    Gamma,
}

impl TraceKey {
    pub fn column(self) -> &'static str {
        match self {
            TraceKey::Delta => "delta",
            TraceKey::Gamma => "gamma",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScenarioResult {
    Trace(ChargeTrace<f64>),
    Traces { key: TraceKey, runs: Vec<(f64, ChargeTrace<f64>)> },
    DeltaScan(Vec<(f64, AveragedSummary<f64>)>),
    Grid(SweepGrid),
}

fn normalized_times(params: &BatteryParams<f64>) -> (Vec<f64>, Vec<f64>) {
    let times = params.time_grid(params.t_min());
    let scaled = times.iter().map(|t| t * params.omega_rabi).collect();
    (times, scaled)
}

/// Unitary two-cell charging from `|↓↓⟩` via the closed-form solution.
pub fn two_cell_trace(params: &BatteryParams<f64>) -> Result<ChargeTrace<f64>> {
    params.validate()?;
    let spectrum = two_cell_spectrum(params)?;
    let h0 = build_h0(params);
    let (times, scaled) = normalized_times(params);
    let (e_max, p_max) = (params.e_max(), params.p_max());
    let init = StateCoefficients::empty();

    let n = times.len();
    let mut trace = ChargeTrace {
        n_cells: 2,
        times: scaled,
        ergotropy: Vec::with_capacity(n),
        power: Vec::with_capacity(n),
        correlation: Vec::with_capacity(n),
        correlation_kind: CorrelationKind::Concurrence,
        coherence: Vec::with_capacity(n),
        power_interaction: None,
    };
    for &t in &times {
        let psi = BatteryState::Pure {
            amplitudes: spectrum.evolve(&init, t).to_amplitudes(),
            n_cells: 2,
        };
        trace.ergotropy.push(ergotropy_pure(&psi, &h0)? / e_max);
        trace.power.push(power_closed_form_empty(t, params)? / p_max);
        trace.correlation.push(concurrence_pure_two_qubit(&psi)?);
        trace.coherence.push(l1_coherence_normalized(&psi)?);
    }
    Ok(trace)
}

/// Unitary three-cell charging from `|↓↓↓⟩` by spectral propagation.
///
/// `power` is `tr(P̂ρ)` with `P̂ = (1/i)[H0, H_ch + H′_int]`, i.e. `d⟨H0⟩/dt`;
/// `power_interaction` uses `P̂ = (1/i)[H0, H′_int]` alone.
pub fn three_cell_trace(params: &BatteryParams<f64>) -> Result<ChargeTrace<f64>> {
    params.validate()?;
    let h0 = build_h0(params);
    let h = build_h_total(params)?;
    let p_full = power_operator(&h0, &h)?;
    let p_int = power_operator(&h0, &build_h_interaction(params)?)?;
    let propagator = SpectralPropagator::new(&h)?;
    let (times, scaled) = normalized_times(params);
    let (e_max, p_max) = (params.e_max(), params.p_max());
    let psi0 = empty_state(params.n_cells);

    let n = times.len();
    let mut power_interaction = Vec::with_capacity(n);
    let mut trace = ChargeTrace {
        n_cells: params.n_cells,
        times: scaled,
        ergotropy: Vec::with_capacity(n),
        power: Vec::with_capacity(n),
        correlation: Vec::with_capacity(n),
        correlation_kind: CorrelationKind::AveragePurity,
        coherence: Vec::with_capacity(n),
        power_interaction: None,
    };
    for &t in &times {
        let psi = propagator.propagate_state(&psi0, t)?;
        trace.ergotropy.push(ergotropy_pure(&psi, &h0)? / e_max);
        trace.power.push(instantaneous_power(&psi, &p_full)? / p_max);
        power_interaction.push(instantaneous_power(&psi, &p_int)? / p_max);
        trace.correlation.push(average_purity(&psi));
        trace.coherence.push(l1_coherence_normalized(&psi)?);
    }
    trace.power_interaction = Some(power_interaction);
    Ok(trace)
}

/// Two-cell charging under dephasing at rate `params.gamma_deph`.
pub fn dephasing_trace(params: &BatteryParams<f64>) -> Result<ChargeTrace<f64>> {
    params.validate()?;
    let h0 = build_h0(params);
    let h = build_h_total(params)?;
    let (_, scaled) = normalized_times(params);
    let traj = lindblad_sampled(&h, &empty_state(params.n_cells), params, params.t_min(), params.t_steps)?;
    let e_max = params.e_max();

    let states = traj.battery_states();
    let mut ergotropy = Vec::with_capacity(states.len());
    let mut correlation = Vec::with_capacity(states.len());
    let mut coherence = Vec::with_capacity(states.len());
    for rho in &states {
        ergotropy.push(ergotropy_general(rho, &h0)? / e_max);
        correlation.push(average_purity(rho));
        coherence.push(l1_coherence_normalized(rho)?);
    }
    let power = numerical_derivative(&scaled, &ergotropy)?;
    Ok(ChargeTrace {
        n_cells: params.n_cells,
        times: scaled,
        ergotropy,
        power,
        correlation,
        correlation_kind: CorrelationKind::AveragePurity,
        coherence,
        power_interaction: None,
    })
}

fn with_point(base: &BatteryParams<f64>, delta: f64, j_over_omega: f64, gamma: f64) -> BatteryParams<f64> {
    BatteryParams {
        delta,
        coupling_j: j_over_omega * base.omega_rabi,
        gamma_deph: gamma * base.omega_rabi,
        ..*base
    }
}

fn traces_over<F>(values: &[f64], key: TraceKey, run: F) -> Result<ScenarioResult>
where
    F: Fn(f64) -> Result<ChargeTrace<f64>> + Sync,
{
    let mut runs: Vec<(f64, ChargeTrace<f64>)> = values
        .par_iter()
        .map(|&v| run(v).map(|trace| (v, trace)))
        .collect::<Result<_>>()?;
    if runs.len() == 1 {
        return Ok(ScenarioResult::Trace(runs.pop().expect("one run").1));
    }
    Ok(ScenarioResult::Traces { key, runs })
}

/// Window averages at one parameter point.
pub fn two_cell_summary(params: &BatteryParams<f64>) -> Result<AveragedSummary<f64>> {
    two_cell_trace(params)?.summary()
}

pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioResult> {
    config.validate()?;
    let base = config.params;
    let j0 = config.j_over_omega_list[0];
    match config.scenario {
        ScenarioKind::Parallel => Ok(ScenarioResult::Trace(two_cell_trace(&with_point(&base, 1.0, 0.0, 0.0))?)),
        ScenarioKind::Collective2 => traces_over(&config.delta_list, TraceKey::Delta, |d| {
            two_cell_trace(&with_point(&base, d, j0, 0.0))
        }),
        ScenarioKind::Collective3 => traces_over(&config.delta_list, TraceKey::Delta, |d| {
            three_cell_trace(&with_point(&base, d, j0, 0.0))
        }),
        ScenarioKind::Dephasing => {
            let d0 = config.delta_list[0];
            traces_over(&config.gamma_list, TraceKey::Gamma, |g| {
                dephasing_trace(&with_point(&base, d0, j0, g))
            })
        }
        ScenarioKind::DeltaScan => {
            let rows = config
                .delta_list
                .par_iter()
                .map(|&d| two_cell_summary(&with_point(&base, d, j0, 0.0)).map(|s| (d, s)))
                .collect::<Result<Vec<_>>>()?;
            Ok(ScenarioResult::DeltaScan(rows))
        }
        ScenarioKind::Sweep2d => {
            let points: Vec<(f64, f64)> = config
                .delta_list
                .iter()
                .flat_map(|&d| config.j_over_omega_list.iter().map(move |&j| (d, j)))
                .collect();
            let summaries = points
                .par_iter()
                .map(|&(d, j)| two_cell_summary(&with_point(&base, d, j, 0.0)))
                .collect::<Result<Vec<_>>>()?;
            let cols = config.j_over_omega_list.len();
            let reshape = |f: fn(&AveragedSummary<f64>) -> f64| -> Vec<Vec<f64>> {
                summaries.chunks(cols).map(|row| row.iter().map(f).collect()).collect()
            };
            Ok(ScenarioResult::Grid(SweepGrid {
                delta_axis: config.delta_list.clone(),
                j_axis: config.j_over_omega_list.clone(),
                e_fin: reshape(|s| s.e_fin),
                p_avg: reshape(|s| s.p_avg),
                q_avg: reshape(|s| s.q_avg),
                c_avg: reshape(|s| s.c_avg),
            }))
        }
    }
}
