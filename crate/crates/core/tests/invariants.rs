use std::f64::consts::{FRAC_PI_2, PI};

use lgi_core::functional::{
    closed_form, compare_closed_form, eval_separate, macrorealist_bound, ClosedFormFamily,
    FunctionalFamily, FunctionalSpec,
};
use lgi_core::nsit::{
    alpha, beta, decomposition_check_standard, disturbance_d1, disturbance_d12, disturbance_d2,
    disturbance_d3, disturbance_general, gamma, gamma_by_strings, violation_condition_standard,
    violation_condition_variant, violation_condition_variant_general,
};
use lgi_core::qubit::{
    evolution, heisenberg_observable, projector, Operator, Outcome, PureState, Schedule,
    ALGEBRA_TOL,
};
use lgi_core::search::sweep_n;
use proptest::prelude::*;

fn rho(theta: f64, phi: f64) -> Operator {
    PureState::new(theta, phi).unwrap().density()
}

fn state() -> impl Strategy<Value = (f64, f64)> {
    (0.0..PI, 0.0..2.0 * PI)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn evolution_is_a_unitary_group(a in -10.0..10.0f64, b in -10.0..10.0f64) {
        let ua = evolution(a).unwrap();
        let ub = evolution(b).unwrap();
        prop_assert!(ua.is_unitary(ALGEBRA_TOL));
        prop_assert!((ua * ub).approx_eq(&evolution(a + b).unwrap(), 1e-12));
        prop_assert!((ua.dagger()).approx_eq(&evolution(-a).unwrap(), 1e-12));
    }

    #[test]
    fn observables_are_involutions(gs in prop::collection::vec(-PI..PI, 1..8), pick in 0usize..8) {
        let sched = Schedule::new(gs).unwrap();
        let i = pick % sched.n() + 1;
        let m = heisenberg_observable(i, &sched).unwrap();
        prop_assert!(m.is_hermitian(ALGEBRA_TOL));
        prop_assert!((m * m).approx_eq(&Operator::identity(), 1e-12));
        let p = projector(&m, Outcome::Plus).unwrap();
        let q = projector(&m, Outcome::Minus).unwrap();
        prop_assert!((p + q).approx_eq(&Operator::identity(), 1e-12));
        prop_assert!((p * p).approx_eq(&p, 1e-12));
        prop_assert!((p * q).approx_eq(&Operator::zero(), 1e-12));
    }

    #[test]
    fn relabeling_every_slot_matches_the_flipped_state(
        theta in 0.0..FRAC_PI_2, phi in 0.001..2.0 * PI, g in -PI..PI, n in 3usize..7,
    ) {
        // σ_x commutes with the evolution and anticommutes with σ_z, so
        // flipping every M_i is the same as starting from σ_x|ψ⟩
        let sched = Schedule::uniform(n, g).unwrap();
        for spec in [FunctionalSpec::standard_k(n).unwrap(), FunctionalSpec::variant_k3(n).unwrap(), FunctionalSpec::variant_l3(n).unwrap()] {
            let mut flipped = spec.clone();
            for i in 1..=n {
                flipped = flipped.relabeled(i).unwrap();
            }
            let a = eval_separate(&flipped, &rho(theta, phi), &sched).unwrap();
            let b = eval_separate(&spec, &rho(FRAC_PI_2 - theta, 2.0 * PI - phi), &sched).unwrap();
            prop_assert!((a - b).abs() < 1e-10);
            let ba = macrorealist_bound(&spec).unwrap();
            let bb = macrorealist_bound(&flipped).unwrap();
            prop_assert_eq!(ba.macrorealist_max, bb.macrorealist_max);
            prop_assert_eq!(ba.macrorealist_min, bb.macrorealist_min);
        }
    }

    #[test]
    fn relabeling_one_slot_keeps_bounds(n in 3usize..9, slot in 1usize..9) {
        let spec = FunctionalSpec::variant_l3(n).unwrap();
        let relabeled = spec.relabeled((slot - 1) % n + 1).unwrap();
        let a = macrorealist_bound(&spec).unwrap();
        let b = macrorealist_bound(&relabeled).unwrap();
        prop_assert_eq!(a.macrorealist_max, b.macrorealist_max);
        prop_assert_eq!(a.macrorealist_min, b.macrorealist_min);
    }

    #[test]
    fn last_measurement_never_disturbs((theta, phi) in state(), g1 in -PI..PI, g2 in -PI..PI) {
        let sched = Schedule::new(vec![g1, g2]).unwrap();
        let r = rho(theta, phi);
        prop_assert!(disturbance_d3(&r, &sched).unwrap().max_abs() < 1e-12);
        for map in [disturbance_d1(&r, &sched).unwrap(), disturbance_d2(&r, &sched).unwrap(), disturbance_d12(&r, &sched).unwrap()] {
            prop_assert!(map.sum().abs() < 1e-12);
        }
    }

    #[test]
    fn alpha_and_beta_are_all_measured_functionals((theta, phi) in state(), g1 in -PI..PI, g2 in -PI..PI) {
        let sched = Schedule::new(vec![g1, g2]).unwrap();
        let r = rho(theta, phi);
        let k3 = lgi_core::eval_all_measured(&FunctionalSpec::standard_k(3).unwrap(), &r, &sched).unwrap();
        let k3v = lgi_core::eval_all_measured(&FunctionalSpec::variant_k3(3).unwrap(), &r, &sched).unwrap();
        prop_assert!((1.0 - 4.0 * alpha(&r, &sched).unwrap() - k3).abs() < 1e-12);
        prop_assert!((1.0 - 4.0 * beta(&r, &sched).unwrap() - k3v).abs() < 1e-12);
        prop_assert!((gamma(&r, &sched).unwrap() - beta(&r, &sched).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn gamma_definitions_agree((theta, phi) in state(), gs in prop::collection::vec(-PI..PI, 2..8)) {
        let sched = Schedule::new(gs).unwrap();
        let r = rho(theta, phi);
        prop_assert!((gamma(&r, &sched).unwrap() - gamma_by_strings(&r, &sched).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn standard_decomposition_is_exact((theta, phi) in state(), g1 in -PI..PI, g2 in -PI..PI) {
        let sched = Schedule::new(vec![g1, g2]).unwrap();
        prop_assert!(decomposition_check_standard(&rho(theta, phi), &sched).unwrap() < 1e-12);
    }

    #[test]
    fn disturbance_conditions_are_biconditional((theta, phi) in state(), g1 in -PI..PI, g2 in -PI..PI) {
        let sched = Schedule::new(vec![g1, g2]).unwrap();
        let r = rho(theta, phi);
        for c in [violation_condition_standard(&r, &sched).unwrap(), violation_condition_variant(&r, &sched).unwrap()] {
            // skip configurations sitting on the boundary
            if (c.functional_value - 1.0).abs() > 1e-9 {
                prop_assert!(c.consistent(), "{:?}", c);
            }
        }
    }

    #[test]
    fn general_variant_condition_is_biconditional((theta, phi) in state(), gs in prop::collection::vec(-PI..PI, 2..7)) {
        let sched = Schedule::new(gs).unwrap();
        let r = rho(theta, phi);
        let c = violation_condition_variant_general(&r, &sched).unwrap();
        let d = disturbance_general(&r, &sched, sched.n()).unwrap();
        prop_assert!(d.sum().abs() < 1e-12);
        // K³_n − 1 = lhs − 4γ exactly
        prop_assert!((c.functional_value - 1.0 - (c.lhs - c.threshold)).abs() < 1e-10);
        if (c.functional_value - 1.0).abs() > 1e-9 {
            prop_assert!(c.consistent());
        }
    }

    #[test]
    fn state_independent_closed_forms_match((theta, phi) in state(), g in -PI..PI, h in 1usize..10) {
        let c = compare_closed_form(ClosedFormFamily::K3Std, 3, g, theta, phi).unwrap();
        prop_assert!(c.difference().abs() < 1e-10);
        let n = 2 * h + 1;
        let c = compare_closed_form(ClosedFormFamily::L3nOdd, n, g, theta, phi).unwrap();
        prop_assert!(c.difference().abs() < 1e-10, "{:?}", c);
    }

    #[test]
    fn standard_k_at_quarter_period((theta, phi) in state(), n in 3usize..40) {
        let v = sweep_n(FunctionalFamily::StandardK, &[n], theta, phi).unwrap()[0].1;
        prop_assert!((v - n as f64 * (PI / n as f64).cos()).abs() < 1e-10);
    }
}

#[test]
fn standard_k3_closed_form_peak() {
    let v = closed_form(ClosedFormFamily::K3Std, 3, PI / 6.0, 0.0, 0.0).unwrap();
    assert!((v - 1.5).abs() < 1e-12);
}

#[test]
fn quarter_period_sequences_rise_towards_three() {
    for family in [FunctionalFamily::VariantK3, FunctionalFamily::VariantL3] {
        for start in [7usize, 8] {
            let ns: Vec<usize> = (start..=201).step_by(2).collect();
            let vals = sweep_n(family, &ns, 0.0, 0.0).unwrap();
            for w in vals.windows(2) {
                assert!(w[1].1 > w[0].1, "{family:?}: {:?} then {:?}", w[0], w[1]);
                assert!(w[1].1 < 3.0);
            }
        }
    }
}
