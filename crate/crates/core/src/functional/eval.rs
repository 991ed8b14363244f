use crate::error::{LgError, Result};
use crate::qubit::{Operator, Schedule, ALGEBRA_TOL};
use crate::sequential::{
    enumerated_correlator, joint_distribution, nested_correlator, MeasurementSet,
};

use super::spec::FunctionalSpec;

/// Correlators over more slots than this are taken from the nested
/// anticommutator trace instead of explicit outcome enumeration.
pub const ENUMERATED_TERM_LIMIT: usize = 12;

fn check(spec: &FunctionalSpec, rho: &Operator, sched: &Schedule) -> Result<()> {
    if spec.n() != sched.n() {
        return Err(LgError::contract(format!(
            "functional over {} slots evaluated on a {}-slot schedule",
            spec.n(),
            sched.n()
        )));
    }
    if !rho.is_density(ALGEBRA_TOL) {
        return Err(LgError::contract(format!(
            "{rho} is not a density operator"
        )));
    }
    Ok(())
}

/// Value of the functional when every correlator comes from its own run,
/// in which only that term's slots are measured.
pub fn eval_separate(spec: &FunctionalSpec, rho: &Operator, sched: &Schedule) -> Result<f64> {
    check(spec, rho, sched)?;
    Ok(eval_separate_with(spec, rho, &sched.observables()))
}

/// [`eval_separate`] against precomputed Heisenberg observables; no validation.
pub(crate) fn eval_separate_with(
    spec: &FunctionalSpec,
    rho: &Operator,
    observables: &[Operator],
) -> f64 {
    spec.terms()
        .iter()
        .map(|term| {
            let obs: Vec<Operator> = term
                .slots
                .indices()
                .iter()
                .map(|&i| observables[i - 1])
                .collect();
            let corr = if obs.len() <= ENUMERATED_TERM_LIMIT {
                enumerated_correlator(rho, &obs)
            } else {
                nested_correlator(rho, &obs)
            };
            term.sign.value() * corr
        })
        .sum()
}

/// Value of the functional when all `n` slots are measured in a single run
/// and each correlator is read off the marginals of that joint distribution.
pub fn eval_all_measured(spec: &FunctionalSpec, rho: &Operator, sched: &Schedule) -> Result<f64> {
    check(spec, rho, sched)?;
    let dist = joint_distribution(rho, sched, &MeasurementSet::full(spec.n())?)?;
    spec.terms()
        .iter()
        .map(|t| Ok(t.sign.value() * dist.correlator(t.slots.indices())?))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubit::PureState;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_6};

    #[test]
    fn standard_k3_at_tsirelson_point() {
        let spec = FunctionalSpec::standard_k(3).unwrap();
        let sched = Schedule::uniform(3, FRAC_PI_6).unwrap();
        for theta in [0.0, 0.7, 2.2] {
            let rho = PureState::new(theta, 1.3).unwrap().density();
            let v = eval_separate(&spec, &rho, &sched).unwrap();
            assert!((v - 1.5).abs() < 1e-12, "{v}");
        }
    }

    #[test]
    fn variant_at_published_parameters() {
        // Under |ψ⟩ = cosθ|0⟩ + e^{-iφ} sinθ|1⟩ and U = exp(-igσ_x) this point
        // gives −0.355288, not the quoted 1.93; see the reproduce manifest.
        let spec = FunctionalSpec::variant_k3(3).unwrap();
        let sched = Schedule::uniform(3, 1.72).unwrap();
        let rho = PureState::new(2.04, FRAC_PI_2).unwrap().density();
        let v = eval_separate(&spec, &rho, &sched).unwrap();
        assert!((v - -0.355_287_652_929_883_5).abs() < 1e-9, "{v}");
    }

    #[test]
    fn no_evolution_gives_sign_sum() {
        let rho = PureState::new(0.0, 0.0).unwrap().density();
        for spec in [
            FunctionalSpec::standard_k(5).unwrap(),
            FunctionalSpec::variant_k3(4).unwrap(),
            FunctionalSpec::parse("-[1,2] -[2] +[1,3] -[3]").unwrap(),
        ] {
            let sched = Schedule::uniform(spec.n(), 0.0).unwrap();
            let sep = eval_separate(&spec, &rho, &sched).unwrap();
            let all = eval_all_measured(&spec, &rho, &sched).unwrap();
            assert!((sep - spec.sign_sum()).abs() < 1e-12);
            assert!((all - spec.sign_sum()).abs() < 1e-12);
        }
    }

    #[test]
    fn slot_count_mismatch() {
        let spec = FunctionalSpec::standard_k(3).unwrap();
        let sched = Schedule::uniform(4, 0.1).unwrap();
        let rho = PureState::new(0.0, 0.0).unwrap().density();
        assert!(matches!(
            eval_separate(&spec, &rho, &sched),
            Err(LgError::Contract(_))
        ));
        assert!(matches!(
            eval_all_measured(&spec, &rho, &sched),
            Err(LgError::Contract(_))
        ));
    }

    #[test]
    fn long_terms_switch_to_nested_route() {
        let n = ENUMERATED_TERM_LIMIT + 4;
        let spec = FunctionalSpec::variant_k3(n).unwrap();
        let g = std::f64::consts::PI / (2.0 * n as f64);
        let sched = Schedule::uniform(n, g).unwrap();
        let rho = PureState::new(0.0, FRAC_PI_2).unwrap().density();
        let c = (std::f64::consts::PI / n as f64).cos();
        // even n, θ = 0: c^{n/2} + c^{n/2-1} + c
        let expected = c.powi(n as i32 / 2) + c.powi(n as i32 / 2 - 1) + c;
        let v = eval_separate(&spec, &rho, &sched).unwrap();
        assert!((v - expected).abs() < 1e-12);
    }
}
