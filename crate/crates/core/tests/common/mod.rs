//! State-vector simulation in the Schrödinger picture, written without the
//! library's operator types so it can serve as an independent reference.

#![allow(dead_code)]

use num_complex::Complex64;

pub type Ket = [Complex64; 2];

pub fn ket(theta: f64, phi: f64) -> Ket {
    [
        Complex64::new(theta.cos(), 0.0),
        Complex64::from_polar(theta.sin(), -phi),
    ]
}

/// Apply `cos g − i sin g σ_x`.
pub fn evolve(psi: Ket, g: f64) -> Ket {
    let c = g.cos();
    let s = Complex64::new(0.0, -g.sin());
    [psi[0] * c + psi[1] * s, psi[0] * s + psi[1] * c]
}

pub fn norm_sqr(psi: &Ket) -> f64 {
    psi[0].norm_sqr() + psi[1].norm_sqr()
}

/// Unnormalised branch amplitudes for every outcome string of a run on `n`
/// times that measures `σ_z` at the 1-based `slots`. Index bit `k − 1 − j`
/// set means outcome −1 at the `j`-th measured slot.
pub fn branches(theta: f64, phi: f64, couplings: &[f64], slots: &[usize]) -> Vec<f64> {
    let n = couplings.len() + 1;
    let mut states: Vec<Ket> = vec![ket(theta, phi)];
    for t in 1..=n {
        if t > 1 {
            let g = couplings[t - 2];
            states = states.into_iter().map(|psi| evolve(psi, g)).collect();
        }
        if slots.contains(&t) {
            let zero = Complex64::new(0.0, 0.0);
            states = states
                .into_iter()
                .flat_map(|psi| [[psi[0], zero], [zero, psi[1]]])
                .collect();
        }
    }
    states.iter().map(norm_sqr).collect()
}

pub fn correlator(theta: f64, phi: f64, couplings: &[f64], slots: &[usize]) -> f64 {
    let k = slots.len();
    branches(theta, phi, couplings, slots)
        .iter()
        .enumerate()
        .map(|(idx, p)| {
            let minus = (0..k).filter(|j| idx >> (k - 1 - j) & 1 == 1).count();
            if minus % 2 == 0 {
                *p
            } else {
                -p
            }
        })
        .sum()
}
