//! Dense 2×2 complex operator algebra for a single qubit.
//!
//! Everything the rest of the crate needs lives here: Pauli matrices,
//! pure-state densities, the `σ_x`-generated evolution, Heisenberg-picture
//! observables for a measurement schedule, and spectral projectors.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{LgError, Result};

/// Tolerance for exact algebraic identities (unitarity, idempotence, traces).
pub const ALGEBRA_TOL: f64 = 1e-12;
/// Tolerance for quantities that pass through an eigen-decomposition.
pub const EIGEN_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A 2×2 complex matrix, stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Operator([[Complex64; 2]; 2]);

impl Operator {
    pub const fn new(entries: [[Complex64; 2]; 2]) -> Self {
        Operator(entries)
    }

    pub fn from_real(entries: [[f64; 2]; 2]) -> Self {
        Operator([
            [entries[0][0].into(), entries[0][1].into()],
            [entries[1][0].into(), entries[1][1].into()],
        ])
    }

    pub const fn zero() -> Self {
        Operator([[ZERO, ZERO], [ZERO, ZERO]])
    }

    pub const fn identity() -> Self {
        Operator([[ONE, ZERO], [ZERO, ONE]])
    }

    pub const fn pauli_x() -> Self {
        Operator([[ZERO, ONE], [ONE, ZERO]])
    }

    pub const fn pauli_y() -> Self {
        Operator([[ZERO, Complex64::new(0.0, -1.0)], [I, ZERO]])
    }

    pub const fn pauli_z() -> Self {
        Operator([[ONE, ZERO], [ZERO, Complex64::new(-1.0, 0.0)]])
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        self.0
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let m = &self.0;
        Operator([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    #[inline]
    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let m = &self.0;
        Operator([
            [m[0][0] * factor, m[0][1] * factor],
            [m[1][0] * factor, m[1][1] * factor],
        ])
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// `{A, B} = AB + BA`.
    pub fn anticommutator(&self, other: &Operator) -> Self {
        *self * *other + *other * *self
    }

    /// `ABA†`, the Lüders sandwich when `A` is a projector.
    pub fn sandwich(&self, inner: &Operator) -> Self {
        *self * *inner * self.dagger()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        let d = *self - *other;
        d.0.iter()
            .flat_map(|row| row.iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Operator, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.approx_eq(&self.dagger(), tol)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (self.dagger() * *self).approx_eq(&Operator::identity(), tol)
    }

    /// Hermitian with `M² = I`, i.e. a dichotomic ±1 observable.
    pub fn is_involution(&self, tol: f64) -> bool {
        self.is_hermitian(tol) && (*self * *self).approx_eq(&Operator::identity(), tol)
    }

    /// Eigenvalues of a Hermitian matrix in ascending order.
    pub fn hermitian_eigenvalues(&self) -> (f64, f64) {
        let a = self.0[0][0].re;
        let d = self.0[1][1].re;
        let b = self.0[0][1];
        let mean = 0.5 * (a + d);
        let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        (mean - radius, mean + radius)
    }

    /// Hermitian, positive semidefinite, unit trace.
    pub fn is_density(&self, tol: f64) -> bool {
        if !self.is_hermitian(tol) || (self.trace() - ONE).norm() > tol {
            return false;
        }
        self.hermitian_eigenvalues().0 >= -tol
    }

    /// `Tr(ρ²)`; 1 for pure states.
    pub fn purity(&self) -> f64 {
        (*self * *self).trace().re
    }

    /// Real part of `Tr(self · other)`.
    #[inline]
    pub fn trace_product(&self, other: &Operator) -> f64 {
        let a = &self.0;
        let b = &other.0;
        (a[0][0] * b[0][0] + a[0][1] * b[1][0] + a[1][0] * b[0][1] + a[1][1] * b[1][1]).re
    }
}

impl Mul for Operator {
    type Output = Operator;

    #[inline]
    fn mul(self, rhs: Operator) -> Operator {
        let a = &self.0;
        let b = &rhs.0;
        Operator([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl Add for Operator {
    type Output = Operator;

    #[inline]
    fn add(self, rhs: Operator) -> Operator {
        let a = &self.0;
        let b = &rhs.0;
        Operator([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Operator {
    type Output = Operator;

    #[inline]
    fn sub(self, rhs: Operator) -> Operator {
        self + (-rhs)
    }
}

impl Neg for Operator {
    type Output = Operator;

    fn neg(self) -> Operator {
        self.scale_real(-1.0)
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            m[0][0], m[0][1], m[1][0], m[1][1]
        )
    }
}

/// Outcome of a dichotomic measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];

    #[inline]
    pub fn value(self) -> f64 {
        match self {
            Outcome::Plus => 1.0,
            Outcome::Minus => -1.0,
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Outcome::Plus => 1,
            Outcome::Minus => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Outcome::Plus => Outcome::Minus,
            Outcome::Minus => Outcome::Plus,
        }
    }
}

impl TryFrom<i8> for Outcome {
    type Error = LgError;

    fn try_from(sign: i8) -> Result<Self> {
        match sign {
            1 => Ok(Outcome::Plus),
            -1 => Ok(Outcome::Minus),
            other => Err(LgError::domain(format!("outcome must be ±1, got {other}"))),
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Plus => "+",
            Outcome::Minus => "-",
        })
    }
}

/// `cos θ |0⟩ + e^{-iφ} sin θ |1⟩` with `θ ∈ [0, π]`, `φ ∈ [0, 2π]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureState {
    theta: f64,
    phi: f64,
}

impl PureState {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        use std::f64::consts::{PI, TAU};
        if !(0.0..=PI).contains(&theta) {
            return Err(LgError::domain(format!("theta = {theta} outside [0, π]")));
        }
        if !(0.0..=TAU).contains(&phi) {
            return Err(LgError::domain(format!("phi = {phi} outside [0, 2π]")));
        }
        Ok(PureState { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Ket amplitudes `(⟨0|ψ⟩, ⟨1|ψ⟩)`.
    pub fn amplitudes(&self) -> [Complex64; 2] {
        [
            Complex64::new(self.theta.cos(), 0.0),
            Complex64::from_polar(self.theta.sin(), -self.phi),
        ]
    }

    pub fn density(&self) -> Operator {
        density_from_pure(*self)
    }
}

/// `|ψ⟩⟨ψ|`.
pub fn density_from_pure(state: PureState) -> Operator {
    let [a, b] = state.amplitudes();
    Operator::new([[a * a.conj(), a * b.conj()], [b * a.conj(), b * b.conj()]])
}

/// `exp(-i g σ_x) = cos g · I − i sin g · σ_x`.
pub fn evolution(g: f64) -> Result<Operator> {
    if !g.is_finite() {
        return Err(LgError::domain(format!("coupling angle {g} is not finite")));
    }
    Ok(evolution_unchecked(g))
}

#[inline]
pub(crate) fn evolution_unchecked(g: f64) -> Operator {
    let c = Complex64::new(g.cos(), 0.0);
    let s = Complex64::new(0.0, -g.sin());
    Operator::new([[c, s], [s, c]])
}

/// Coupling angles `g_i = ω τ_i` for the `n − 1` intervals between `n`
/// measurement times.
#[derive(Clone, Debug, PartialEq)]
pub struct Schedule {
    couplings: Vec<f64>,
}

impl Schedule {
    pub fn new(couplings: Vec<f64>) -> Result<Self> {
        if couplings.is_empty() {
            return Err(LgError::domain(
                "a schedule needs at least two measurement times",
            ));
        }
        if let Some(g) = couplings.iter().find(|g| !g.is_finite()) {
            return Err(LgError::domain(format!("coupling angle {g} is not finite")));
        }
        Ok(Schedule { couplings })
    }

    /// `n` measurement times separated by the same coupling `g`.
    pub fn uniform(n: usize, g: f64) -> Result<Self> {
        if n < 2 {
            return Err(LgError::domain(format!("measurement count {n} < 2")));
        }
        Schedule::new(vec![g; n - 1])
    }

    /// Number of measurement times.
    pub fn n(&self) -> usize {
        self.couplings.len() + 1
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    /// Accumulated angle `G_i = Σ_{j<i} g_j` before the `i`-th measurement
    /// (1-based), so `G_1 = 0`.
    pub fn cumulative(&self, index: usize) -> Result<f64> {
        self.check_index(index)?;
        Ok(self.couplings[..index - 1].iter().sum())
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index == 0 || index > self.n() {
            return Err(LgError::domain(format!(
                "time index {index} outside 1..={}",
                self.n()
            )));
        }
        Ok(())
    }

    /// Heisenberg-picture `σ_z` observables at every time, in order.
    pub fn observables(&self) -> Vec<Operator> {
        self.observables_from_unchecked(&Operator::pauli_z())
    }

    /// Heisenberg-picture observables for an arbitrary initial involution.
    pub fn observables_from(&self, base: &Operator) -> Result<Vec<Operator>> {
        check_involution(base)?;
        Ok(self.observables_from_unchecked(base))
    }

    fn observables_from_unchecked(&self, base: &Operator) -> Vec<Operator> {
        let mut out = Vec::with_capacity(self.n());
        let mut total = 0.0;
        out.push(*base);
        for g in &self.couplings {
            total += g;
            let u = evolution_unchecked(total);
            out.push(u.dagger() * *base * u);
        }
        out
    }
}

fn check_involution(obs: &Operator) -> Result<()> {
    if !obs.is_involution(ALGEBRA_TOL) {
        return Err(LgError::domain(
            "observable must be Hermitian with square equal to the identity",
        ));
    }
    Ok(())
}

/// `M_i = U(G_i)† σ_z U(G_i)` for the 1-based time index `i`.
pub fn heisenberg_observable(index: usize, sched: &Schedule) -> Result<Operator> {
    heisenberg_observable_from(&Operator::pauli_z(), index, sched)
}

/// As [`heisenberg_observable`], starting from `base` instead of `σ_z`.
pub fn heisenberg_observable_from(
    base: &Operator,
    index: usize,
    sched: &Schedule,
) -> Result<Operator> {
    check_involution(base)?;
    let u = evolution_unchecked(sched.cumulative(index)?);
    Ok(u.dagger() * *base * u)
}

/// Spectral projector `(I ± M)/2` of a dichotomic observable.
pub fn projector(obs: &Operator, outcome: Outcome) -> Result<Operator> {
    check_involution(obs)?;
    Ok(projector_unchecked(obs, outcome))
}

#[inline]
pub(crate) fn projector_unchecked(obs: &Operator, outcome: Outcome) -> Operator {
    (Operator::identity() + obs.scale_real(outcome.value())).scale_real(0.5)
}
