//! Published closed-form expressions, evaluated exactly as printed.
//!
//! These are kept for comparison only. Several of the state-dependent
//! expressions disagree with the sequential-measurement simulation (stray
//! `sin θ` for `sin 2θ`, a missing `cos 2θ`, and the opposite sign on every
//! `sin φ` term); the simulation is authoritative and
//! [`closed_form_discrepancies`] records the gaps.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{LgError, Result};
use crate::qubit::{PureState, Schedule};

use super::eval::eval_separate;
use super::spec::FunctionalSpec;

/// Gaps above this are reported as discrepancies.
pub const DISCREPANCY_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedFormFamily {
    /// `2 cos 2g − cos 4g`
    K3Std,
    /// three-time variant with `(i, j, k) = (1, 2, 3)`
    K3Var3,
    /// `K³_4`
    K3Var4,
    /// `L³_4`
    L3Var4,
    K3nEven,
    K3nOdd,
    L3nEven,
    L3nOdd,
}

impl ClosedFormFamily {
    pub const ALL: [ClosedFormFamily; 8] = [
        ClosedFormFamily::K3Std,
        ClosedFormFamily::K3Var3,
        ClosedFormFamily::K3Var4,
        ClosedFormFamily::L3Var4,
        ClosedFormFamily::K3nEven,
        ClosedFormFamily::K3nOdd,
        ClosedFormFamily::L3nEven,
        ClosedFormFamily::L3nOdd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClosedFormFamily::K3Std => "K3_std",
            ClosedFormFamily::K3Var3 => "K3_var3",
            ClosedFormFamily::K3Var4 => "K3_4var",
            ClosedFormFamily::L3Var4 => "L3_4var",
            ClosedFormFamily::K3nEven => "K3_n_even",
            ClosedFormFamily::K3nOdd => "K3_n_odd",
            ClosedFormFamily::L3nEven => "L3_n_even",
            ClosedFormFamily::L3nOdd => "L3_n_odd",
        }
    }

    /// Whether the printed expression has no `θ`/`φ` dependence.
    pub fn state_independent(self) -> bool {
        matches!(self, ClosedFormFamily::K3Std | ClosedFormFamily::L3nOdd)
    }

    /// Check that `n` is admissible for this family.
    pub fn check_n(self, n: usize) -> Result<()> {
        let ok = match self {
            ClosedFormFamily::K3Std | ClosedFormFamily::K3Var3 => n == 3,
            ClosedFormFamily::K3Var4 | ClosedFormFamily::L3Var4 => n == 4,
            ClosedFormFamily::K3nEven | ClosedFormFamily::L3nEven => n >= 4 && n % 2 == 0,
            ClosedFormFamily::K3nOdd | ClosedFormFamily::L3nOdd => n >= 3 && n % 2 == 1,
        };
        if ok {
            Ok(())
        } else {
            Err(LgError::contract(format!(
                "{} is not defined for n = {n}",
                self.name()
            )))
        }
    }

    /// The functional the expression claims to evaluate.
    pub fn functional(self, n: usize) -> Result<FunctionalSpec> {
        self.check_n(n)?;
        match self {
            ClosedFormFamily::K3Std => FunctionalSpec::standard_k(3),
            ClosedFormFamily::K3Var3 | ClosedFormFamily::K3Var4 => FunctionalSpec::variant_k3(n),
            ClosedFormFamily::K3nEven | ClosedFormFamily::K3nOdd => FunctionalSpec::variant_k3(n),
            ClosedFormFamily::L3Var4 | ClosedFormFamily::L3nEven | ClosedFormFamily::L3nOdd => {
                FunctionalSpec::variant_l3(n)
            }
        }
    }

    /// The `K³_n` / `L³_n` family of the right parity for `n`.
    pub fn for_parity(variant_l3: bool, n: usize) -> Self {
        match (variant_l3, n % 2 == 0) {
            (false, true) => ClosedFormFamily::K3nEven,
            (false, false) => ClosedFormFamily::K3nOdd,
            (true, true) => ClosedFormFamily::L3nEven,
            (true, false) => ClosedFormFamily::L3nOdd,
        }
    }
}

impl fmt::Display for ClosedFormFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Evaluate the printed expression for `family` at equal coupling `g`.
pub fn closed_form(
    family: ClosedFormFamily,
    n: usize,
    g: f64,
    theta: f64,
    phi: f64,
) -> Result<f64> {
    family.check_n(n)?;
    let c2g = (2.0 * g).cos();
    let cos2t = (2.0 * theta).cos();
    let sin2t = (2.0 * theta).sin();
    let sinp = phi.sin();
    let cosg2 = g.cos().powi(2);
    let last = 2.0 * (n as f64 - 1.0) * g;
    let v = match family {
        ClosedFormFamily::K3Std => 2.0 * c2g - (4.0 * g).cos(),
        ClosedFormFamily::K3Var3 => {
            c2g * (4.0 * cosg2 * cos2t) + (4.0 * g).sin() * sin2t * sinp - 2.0 * cosg2 * cos2t
        }
        ClosedFormFamily::K3Var4 => {
            0.5 * (1.0 + (4.0 * g).cos() + 8.0 * c2g * (2.0 * g).sin().powi(2) * cos2t
                - 2.0 * (6.0 * g).sin() * theta.sin() * sinp)
        }
        ClosedFormFamily::L3Var4 => {
            2.0 * cosg2 * c2g * cos2t - (6.0 * g).cos() + 0.5 * (4.0 * g).sin() * sin2t * sinp
        }
        ClosedFormFamily::K3nEven => {
            let h = (n / 2) as i32;
            c2g.powi(h) + c2g.powi(h - 1) - (last.cos() * cos2t + last.sin() * sin2t * sinp)
        }
        ClosedFormFamily::K3nOdd => {
            let h = ((n - 1) / 2) as i32;
            c2g.powi(h) * cos2t + c2g.powi(h) - (last.cos() * cos2t + last.sin() * sin2t * sinp)
        }
        ClosedFormFamily::L3nEven => {
            let h = (n / 2) as i32 - 1;
            c2g.powi(h) * cos2t + c2g.powi(h) * (c2g * cos2t + (2.0 * g).sin()) - last.cos()
        }
        ClosedFormFamily::L3nOdd => {
            let h = ((n - 1) / 2) as i32;
            c2g.powi(h) + c2g.powi(h) - last.cos()
        }
    };
    Ok(v)
}

/// The printed `n`-slot expressions after substituting `g = π/(2n)`.
pub fn closed_form_quarter_period(
    family: ClosedFormFamily,
    n: usize,
    theta: f64,
    phi: f64,
) -> Result<f64> {
    family.check_n(n)?;
    let c = (PI / n as f64).cos();
    let s = (PI / n as f64).sin();
    let cos2t = (2.0 * theta).cos();
    let sin2t = (2.0 * theta).sin();
    let sinp = phi.sin();
    let v = match family {
        ClosedFormFamily::K3nEven => {
            let h = (n / 2) as i32;
            c.powi(h) + c.powi(h - 1) * cos2t + c * cos2t - s * sin2t * sinp
        }
        ClosedFormFamily::K3nOdd => {
            let h = ((n - 1) / 2) as i32;
            c.powi(h) * cos2t + c.powi(h) + c * cos2t - s * sin2t * sinp
        }
        ClosedFormFamily::L3nEven => {
            let h = (n / 2) as i32 - 1;
            c.powi(h) * cos2t + c + c.powi(h) * (c * cos2t + s * sin2t * sinp)
        }
        ClosedFormFamily::L3nOdd => {
            let h = ((n - 1) / 2) as i32;
            2.0 * c.powi(h) + c
        }
        other => {
            return Err(LgError::contract(format!(
                "{} has no quarter-period form",
                other.name()
            )))
        }
    };
    Ok(v)
}

/// Large-`n` value of `K³_n` at `g = π/(2n)`: `1 + 2 cos 2θ`.
pub fn variant_k3_limit(theta: f64) -> f64 {
    1.0 + 2.0 * (2.0 * theta).cos()
}

/// A printed expression set against the simulated functional at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormComparison {
    pub family: ClosedFormFamily,
    pub n: usize,
    pub g: f64,
    pub theta: f64,
    pub phi: f64,
    pub closed_form: f64,
    pub simulated: f64,
}

impl ClosedFormComparison {
    pub fn difference(&self) -> f64 {
        self.closed_form - self.simulated
    }

    pub fn is_discrepancy(&self) -> bool {
        self.difference().abs() > DISCREPANCY_TOL
    }
}

pub fn compare_closed_form(
    family: ClosedFormFamily,
    n: usize,
    g: f64,
    theta: f64,
    phi: f64,
) -> Result<ClosedFormComparison> {
    let closed = closed_form(family, n, g, theta, phi)?;
    let spec = family.functional(n)?;
    let rho = PureState::new(theta, phi)?.density();
    let simulated = eval_separate(&spec, &rho, &Schedule::uniform(n, g)?)?;
    Ok(ClosedFormComparison {
        family,
        n,
        g,
        theta,
        phi,
        closed_form: closed,
        simulated,
    })
}

/// Comparisons at each `(n, g, θ, φ)` point whose gap exceeds [`DISCREPANCY_TOL`].
pub fn closed_form_discrepancies(
    family: ClosedFormFamily,
    points: &[(usize, f64, f64, f64)],
) -> Result<Vec<ClosedFormComparison>> {
    let mut out = Vec::new();
    for &(n, g, theta, phi) in points {
        let cmp = compare_closed_form(family, n, g, theta, phi)?;
        if cmp.is_discrepancy() {
            out.push(cmp);
        }
    }
    Ok(out)
}
