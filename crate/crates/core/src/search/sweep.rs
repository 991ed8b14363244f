use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{LgError, Result};
use crate::functional::{
    closed_form_quarter_period, eval_separate, variant_k3_limit, ClosedFormFamily,
    FunctionalFamily, FunctionalSpec,
};
use crate::qubit::{PureState, Schedule};

/// Parameter varied by [`sweep`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamAxis {
    /// The common coupling of every interval.
    G,
    Theta,
    Phi,
}

impl ParamAxis {
    pub fn name(self) -> &'static str {
        match self {
            ParamAxis::G => "g",
            ParamAxis::Theta => "theta",
            ParamAxis::Phi => "phi",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepPoint {
    pub x: f64,
    pub value: f64,
}

/// Equally spaced samples of `[lo, hi]`, both ends included.
pub fn linspace(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(LgError::domain(format!(
            "a sweep needs at least 2 points, got {points}"
        )));
    }
    if !lo.is_finite() || !hi.is_finite() {
        return Err(LgError::domain("sweep range must be finite"));
    }
    let step = (hi - lo) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            if i + 1 == points {
                hi
            } else {
                lo + i as f64 * step
            }
        })
        .collect())
}

/// Evaluate `spec` along one axis with the other two held at `fixed = (g, θ, φ)`.
///
/// θ and φ samples outside their principal ranges are reduced modulo π and 2π.
pub fn sweep(
    spec: &FunctionalSpec,
    axis: ParamAxis,
    range: (f64, f64),
    points: usize,
    fixed: (f64, f64, f64),
) -> Result<Vec<SweepPoint>> {
    let xs = linspace(range.0, range.1, points)?;
    let n = spec.n();
    xs.into_par_iter()
        .map(|x| {
            let (mut g, mut theta, mut phi) = fixed;
            match axis {
                ParamAxis::G => g = x,
                ParamAxis::Theta => theta = x,
                ParamAxis::Phi => phi = x,
            }
            let rho = PureState::new(theta.rem_euclid(PI), phi.rem_euclid(2.0 * PI))?.density();
            let value = eval_separate(spec, &rho, &Schedule::uniform(n, g)?)?;
            Ok(SweepPoint { x, value })
        })
        .collect()
}

/// Value of `family` at `g = π/(2n)` for each `n`.
pub fn sweep_n(
    family: FunctionalFamily,
    ns: &[usize],
    theta: f64,
    phi: f64,
) -> Result<Vec<(usize, f64)>> {
    let rho = PureState::new(theta, phi)?.density();
    ns.par_iter()
        .map(|&n| {
            let spec = family.build(n)?;
            let sched = Schedule::uniform(n, PI / (2.0 * n as f64))?;
            Ok((n, eval_separate(&spec, &rho, &sched)?))
        })
        .collect()
}

/// One row of an asymptotic table at `g = π/(2n)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticRow {
    pub n: usize,
    /// The printed expression, or `n cos(π/n)` for `K_n`.
    pub closed_form: f64,
    pub simulated: f64,
    /// Large-`n` value where one is known.
    pub limit: Option<f64>,
}

impl AsymptoticRow {
    pub fn difference(&self) -> f64 {
        self.closed_form - self.simulated
    }
}

pub fn asymptotic_table(
    family: FunctionalFamily,
    ns: &[usize],
    theta: f64,
    phi: f64,
) -> Result<Vec<AsymptoticRow>> {
    let simulated = sweep_n(family, ns, theta, phi)?;
    simulated
        .into_iter()
        .map(|(n, sim)| {
            let (closed_form, limit) = match family {
                FunctionalFamily::StandardK => (n as f64 * (PI / n as f64).cos(), Some(n as f64)),
                FunctionalFamily::VariantK3 => (
                    closed_form_quarter_period(
                        ClosedFormFamily::for_parity(false, n),
                        n,
                        theta,
                        phi,
                    )?,
                    Some(variant_k3_limit(theta)),
                ),
                FunctionalFamily::VariantL3 => (
                    closed_form_quarter_period(
                        ClosedFormFamily::for_parity(true, n),
                        n,
                        theta,
                        phi,
                    )?,
                    Some(3.0),
                ),
            };
            Ok(AsymptoticRow {
                n,
                closed_form,
                simulated: sim,
                limit,
            })
        })
        .collect()
}
