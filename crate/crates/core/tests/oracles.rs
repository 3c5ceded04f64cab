mod common;

use std::f64::consts::PI;

use common::{random_density, random_pure, random_unitary};
use num_complex::Complex64;
use proptest::prelude::*;
use qubattery::dynamics::{
    energy_closed_form, ergotropy_closed_form_empty, lindblad_integrate, lindblad_sampled, power_closed_form_empty,
    two_cell_spectrum, ProductStateAngles, SpectralPropagator,
};
use qubattery::linalg::{hermitian_eigensystem, kron, partial_trace, site_operator, sigma_z, ComplexMatrix};
use qubattery::metrics::{
    average_purity, concurrence_pure_two_qubit, ergotropy_general, ergotropy_pure, numerical_derivative,
    passive_energy, passive_state, power_operator,
};
use qubattery::model::{build_h0, build_h_total, empty_state, BatteryParams, BatteryState};
use qubattery::scenario::{three_cell_trace, two_cell_trace};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn simpson(times: &[f64], values: &[f64]) -> f64 {
    let h = times[1] - times[0];
    let n = values.len() - 1;
    let inner: f64 = (1..n).map(|k| if k % 2 == 1 { 4.0 } else { 2.0 } * values[k]).sum();
    h / 3.0 * (values[0] + values[n] + inner)
}

#[test]
fn partial_trace_matches_index_sum() {
    let mut rng = StdRng::seed_from_u64(11);
    let (rho, _) = random_density(&mut rng, 3);
    for keep in 0..3 {
        let reduced = partial_trace(&rho, keep, 3).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                let mut acc = c(0.0, 0.0);
                for i in 0..8usize {
                    for j in 0..8usize {
                        let bit_i = (i >> (2 - keep)) & 1;
                        let bit_j = (j >> (2 - keep)) & 1;
                        let rest_i = i & !(1 << (2 - keep));
                        let rest_j = j & !(1 << (2 - keep));
                        if bit_i == a && bit_j == b && rest_i == rest_j {
                            acc += rho[(i, j)];
                        }
                    }
                }
                assert!((reduced[(a, b)] - acc).norm() < 1e-12, "keep {keep} ({a},{b})");
            }
        }
    }
}

fn arb_matrix(dim: usize) -> impl Strategy<Value = ComplexMatrix<f64>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim * dim)
        .prop_map(|v| ComplexMatrix::from_row_major(v.into_iter().map(|(r, i)| c(r, i)).collect()))
}

proptest! {
    #[test]
    fn kron_trace_factorizes(a in arb_matrix(2), b in arb_matrix(4)) {
        let lhs = kron(&a, &b).trace();
        let rhs = a.trace() * b.trace();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn two_by_two_eigenvalues_match_quadratic(a in -5.0..5.0f64, d in -5.0..5.0f64, re in -5.0..5.0f64, im in -5.0..5.0f64) {
        let m = ComplexMatrix::from_row_major(vec![c(a, 0.0), c(re, im), c(re, -im), c(d, 0.0)]);
        let eig = hermitian_eigensystem(&m).unwrap();
        let mean = 0.5 * (a + d);
        let radius = (0.25 * (a - d).powi(2) + re * re + im * im).sqrt();
        prop_assert!((eig.values[0] - (mean - radius)).abs() < 1e-10);
        prop_assert!((eig.values[1] - (mean + radius)).abs() < 1e-10);
    }

    #[test]
    fn energy_closed_form_matches_propagation(
        theta1 in 0.0..=PI, theta2 in 0.0..=PI,
        phi1 in 0.0..(2.0 * PI), phi2 in 0.0..(2.0 * PI),
        delta in -1.0..=1.0f64, log_j in -1.0..=1.0f64, frac in 0.0..=1.0f64,
    ) {
        let params = BatteryParams::two_cell(10f64.powf(log_j), delta);
        let t = frac * params.t_min();
        let angles = ProductStateAngles::new(theta1, theta2, phi1, phi2).unwrap();
        let psi0 = BatteryState::pure(angles.coefficients().to_amplitudes()).unwrap();
        let h0 = build_h0(&params);
        let evolved = SpectralPropagator::new(&build_h_total(&params).unwrap())
            .unwrap()
            .propagate_state(&psi0, t)
            .unwrap();
        let closed = energy_closed_form(&angles, t, &params).unwrap();
        prop_assert!((closed - evolved.expectation(&h0)).abs() < 1e-9);
    }
}

#[test]
fn closed_form_power_is_derivative_of_ergotropy() {
    for (j, delta) in [(0.1, -1.0), (1.0, 0.0), (1.0, -0.5), (10.0, 0.5)] {
        let params = BatteryParams::two_cell(j, delta);
        let h = 1e-5;
        for k in 1..20 {
            let t = k as f64 * params.t_min() / 20.0;
            let fd = (ergotropy_closed_form_empty(t + h, &params).unwrap()
                - ergotropy_closed_form_empty(t - h, &params).unwrap())
                / (2.0 * h);
            let p = power_closed_form_empty(t, &params).unwrap();
            assert!((fd - p).abs() < 1e-6, "J={j} delta={delta} t={t}: {fd} vs {p}");
        }
    }
}

#[test]
fn closed_form_ergotropy_matches_pure_ergotropy() {
    let params = BatteryParams::two_cell(1.0, -0.5);
    let h0 = build_h0(&params);
    let prop = SpectralPropagator::new(&build_h_total(&params).unwrap()).unwrap();
    for k in 0..=20 {
        let t = k as f64 * params.t_min() / 20.0;
        let state = prop.propagate_state(&empty_state(2), t).unwrap();
        let numeric = ergotropy_pure(&state, &h0).unwrap();
        let closed = ergotropy_closed_form_empty(t, &params).unwrap();
        assert!((numeric - closed).abs() < 1e-10, "t={t}: {numeric} vs {closed}");
    }
}

#[test]
fn isotropic_and_decoupled_limits_are_parallel() {
    let parallel = two_cell_trace(&BatteryParams::two_cell(0.0, 1.0)).unwrap();
    for params in [BatteryParams::two_cell(1.0, 1.0 - 1e-13), BatteryParams::two_cell(0.0, -0.7)] {
        let trace = two_cell_trace(&params).unwrap();
        for (a, b) in trace.ergotropy.iter().zip(&parallel.ergotropy) {
            assert!((a - b).abs() < 1e-10);
        }
        for (a, b) in trace.power.iter().zip(&parallel.power) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}

#[test]
fn dephasing_without_hamiltonian_decays_coherences() {
    let gamma = 0.3;
    let params = BatteryParams {
        gamma_deph: gamma,
        ..BatteryParams::two_cell(0.0, 1.0)
    };
    let mut rng = StdRng::seed_from_u64(21);
    let (rho0, _) = random_density(&mut rng, 2);
    let state = BatteryState::mixed(rho0.clone()).unwrap();
    let h = ComplexMatrix::zeros(4);
    let t_end = 1.0;
    let traj = lindblad_integrate(&h, &state, &params, t_end, 400).unwrap();
    let last = traj.last();
    for i in 0..4usize {
        for j in 0..4usize {
            let hamming = (i ^ j).count_ones() as f64;
            let expected = rho0[(i, j)] * (-2.0 * gamma * hamming * t_end).exp();
            assert!((last[(i, j)] - expected).norm() < 1e-9, "({i},{j})");
        }
    }
}

#[test]
fn noiseless_lindblad_matches_spectral_for_three_cells() {
    let params = BatteryParams::three_cell(1.0, 0.3);
    let h = build_h_total(&params).unwrap();
    let mut rng = StdRng::seed_from_u64(31);
    let psi0 = random_pure(&mut rng, 3);
    let t_end = params.t_min();
    let traj = lindblad_sampled(&h, &psi0, &params, t_end, 201).unwrap();
    let prop = SpectralPropagator::new(&h).unwrap();
    for (t, rho) in traj.times.iter().zip(&traj.states) {
        let exact = prop.propagate_state(&psi0, *t).unwrap().density_matrix();
        assert!(rho.max_abs_diff(&exact) < 1e-6);
    }
}

#[test]
fn dephasing_keeps_states_physical() {
    let mut rng = StdRng::seed_from_u64(41);
    for (n, gamma) in [(2, 0.1), (2, 0.5), (3, 0.5)] {
        let params = BatteryParams {
            n_cells: n,
            gamma_deph: gamma,
            ..BatteryParams::two_cell(1.0, -0.4)
        };
        let h = build_h_total(&params).unwrap();
        let (rho0, _) = random_density(&mut rng, n);
        let traj = lindblad_sampled(&h, &BatteryState::mixed(rho0).unwrap(), &params, params.t_min(), 101).unwrap();
        for rho in &traj.states {
            assert!((rho.trace().re - 1.0).abs() < 1e-9);
            assert!(rho.hermitian_defect() < 1e-12);
            assert!(hermitian_eigensystem(rho).unwrap().values[0] >= -1e-7);
        }
    }
}

#[test]
fn passive_state_is_a_fixed_point_and_ergotropy_is_non_negative() {
    let mut rng = StdRng::seed_from_u64(51);
    for k in 0..1000 {
        let n = 2 + k % 2;
        let h0 = build_h0(&BatteryParams {
            n_cells: n,
            ..BatteryParams::default()
        });
        let (rho, _) = random_density(&mut rng, n);
        let state = BatteryState::mixed(rho).unwrap();
        let w = ergotropy_general(&state, &h0).unwrap();
        assert!(w >= -1e-12, "negative ergotropy {w}");
        let passive = passive_state(&state, &h0).unwrap();
        assert!(ergotropy_general(&passive, &h0).unwrap().abs() < 1e-10);
        assert!((passive.expectation(&h0) - passive_energy(&state, &h0).unwrap()).abs() < 1e-10);
    }
}

#[test]
fn local_phases_leave_correlations_unchanged() {
    let mut rng = StdRng::seed_from_u64(61);
    for _ in 0..50 {
        let psi = random_pure(&mut rng, 2);
        let (a, b) = (rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.0..2.0 * PI));
        let phase = |theta: f64| ComplexMatrix::from_row_major(vec![
            Complex64::from_polar(1.0, -theta / 2.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            Complex64::from_polar(1.0, theta / 2.0),
        ]);
        let u = kron(&phase(a), &phase(b));
        let rotated = BatteryState::pure(u.mul_vec(psi.amplitudes().unwrap())).unwrap();
        let dc = concurrence_pure_two_qubit(&psi).unwrap() - concurrence_pure_two_qubit(&rotated).unwrap();
        let dq = average_purity(&psi) - average_purity(&rotated);
        assert!(dc.abs() < 1e-12 && dq.abs() < 1e-12);
    }
}

#[test]
fn product_states_have_unit_purity_and_bell_states_half() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let bell = BatteryState::pure(vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)]).unwrap();
    assert!((concurrence_pure_two_qubit(&bell).unwrap() - 1.0).abs() < 1e-12);
    assert!((average_purity(&bell) - 0.5).abs() < 1e-12);
    assert!((average_purity(&empty_state::<f64>(3)) - 1.0).abs() < 1e-15);
}

#[test]
fn full_commutator_power_integrates_to_energy_change() {
    for (n, j, delta) in [(2, 1.0, -0.5), (3, 1.0, 0.2), (3, 0.5, -1.0)] {
        let params = BatteryParams {
            n_cells: n,
            ..BatteryParams::two_cell(j, delta)
        };
        let h0 = build_h0(&params);
        let h = build_h_total(&params).unwrap();
        let p_op = power_operator(&h0, &h).unwrap();
        let prop = SpectralPropagator::new(&h).unwrap();
        let times = params.time_grid(params.t_min());
        let states: Vec<_> = times
            .iter()
            .map(|&t| prop.propagate_state(&empty_state(n), t).unwrap())
            .collect();
        let energy: Vec<f64> = states.iter().map(|s| s.expectation(&h0)).collect();
        let power: Vec<f64> = states.iter().map(|s| s.expectation(&p_op)).collect();

        let integral = simpson(&times, &power);
        let delta_e = energy.last().unwrap() - energy[0];
        assert!((integral - delta_e).abs() < 1e-6, "N={n}: {integral} vs {delta_e}");

        let step = 1e-5;
        let energy_at = |t: f64| prop.propagate_state(&empty_state(n), t).unwrap().expectation(&h0);
        for k in (0..times.len()).step_by(50) {
            let fd = (energy_at(times[k] + step) - energy_at(times[k] - step)) / (2.0 * step);
            assert!((fd - power[k]).abs() < 1e-6, "N={n} t={}: {fd} vs {}", times[k], power[k]);
        }

        let grid_derivative = numerical_derivative(&times, &energy).unwrap();
        let worst = grid_derivative.iter().zip(&power).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(worst < 1e-4, "N={n}: grid derivative mismatch {worst}");
    }
}

#[test]
fn interaction_commutes_with_bare_hamiltonian() {
    let trace = three_cell_trace(&BatteryParams::three_cell(1.0, -0.3)).unwrap();
    let literal = trace.power_interaction.expect("three-cell traces carry the interaction column");
    assert!(literal.iter().all(|p| p.abs() < 1e-12));
    assert!(trace.power.iter().any(|p| p.abs() > 0.1));
}

#[test]
fn pure_and_general_ergotropy_agree_after_random_unitaries() {
    let mut rng = StdRng::seed_from_u64(71);
    let h0 = build_h0(&BatteryParams::<f64>::three_cell(1.0, 1.0));
    for _ in 0..20 {
        let u = random_unitary(&mut rng, 8);
        let psi = BatteryState::pure(u.mul_vec(empty_state::<f64>(3).amplitudes().unwrap())).unwrap();
        let general = ergotropy_general(&psi, &h0).unwrap();
        let pure = ergotropy_pure(&psi, &h0).unwrap();
        assert!((general - pure).abs() < 1e-10);
    }
    let z0 = site_operator(&sigma_z::<f64>(), 0, 3);
    assert_eq!(z0[(0, 0)], c(-1.0, 0.0));
    assert_eq!(z0[(7, 7)], c(1.0, 0.0));
}

#[test]
fn spectrum_energies_are_sorted_consistently_with_eigensolver() {
    for (j, delta) in [(0.1f64, -1.0f64), (1.0, 0.3), (10.0, 1.0)] {
        let params = BatteryParams::two_cell(j, delta);
        let mut closed = two_cell_spectrum(&params).unwrap().energies().to_vec();
        closed.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let numeric = hermitian_eigensystem(&build_h_total(&params).unwrap()).unwrap().values;
        for (a, b) in closed.iter().zip(&numeric) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}
