#![allow(dead_code)]

use num_complex::Complex64;
use qubattery::linalg::ComplexMatrix;
use qubattery::model::BatteryState;
use rand::rngs::StdRng;
use rand::Rng;

pub fn random_amplitudes(rng: &mut StdRng, dim: usize) -> Vec<Complex64> {
    let v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

pub fn random_pure(rng: &mut StdRng, n_cells: usize) -> BatteryState<f64> {
    BatteryState::pure(random_amplitudes(rng, 1 << n_cells)).unwrap()
}

/// Random unitary by Gram-Schmidt on random complex columns.
pub fn random_unitary(rng: &mut StdRng, dim: usize) -> ComplexMatrix<f64> {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v = random_amplitudes(rng, dim);
        for c in &cols {
            let proj: Complex64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, ci) in v.iter_mut().zip(c) {
                *vi -= proj * ci;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    ComplexMatrix::from_fn(dim, |r, c| cols[c][r])
}

/// Random populations summing to one.
pub fn random_populations(rng: &mut StdRng, dim: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.0..1.0)).collect();
    let s: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / s).collect()
}

/// `U diag(p) U†`, with its spectrum `p` known without diagonalizing.
pub fn random_density(rng: &mut StdRng, n_cells: usize) -> (ComplexMatrix<f64>, Vec<f64>) {
    let dim = 1 << n_cells;
    let p = random_populations(rng, dim);
    let u = random_unitary(rng, dim);
    let d = ComplexMatrix::from_diagonal(&p);
    (u.matmul(&d).matmul(&u.dagger()).hermitian_part(), p)
}

/// Heap's algorithm; calls `f` on every permutation of `0..n`.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Minimum of `Σ_n p_n ε_{π(n)}` over all assignments π.
pub fn brute_force_passive_energy(populations: &[f64], levels: &[f64]) -> f64 {
    let mut best = f64::INFINITY;
    for_each_permutation(levels.len(), |perm| {
        let e: f64 = populations.iter().zip(perm).map(|(p, &k)| p * levels[k]).sum();
        best = best.min(e);
    });
    best
}
