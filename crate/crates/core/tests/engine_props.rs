use std::f64::consts::PI;

use landauer::engine::{evolve, fluctuation_operators, kraus_set, Dynamics, JointState};
use landauer::linalg::Subsystem;
use landauer::model::{
    free_hamiltonian, system_state, thermal_state, total_hamiltonian, EnvironmentParams,
    InteractionKind, InteractionModel, SystemStateParams,
};
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = InteractionKind> {
    prop_oneof![
        Just(InteractionKind::Xx),
        Just(InteractionKind::Ising),
        Just(InteractionKind::Generic),
    ]
}

fn model() -> impl Strategy<Value = InteractionModel> {
    (kind(), -2.0f64..2.0, -2.0f64..2.0, -2.0f64..2.0).prop_map(|(k, a, b, c)| match k {
        InteractionKind::Xx => InteractionModel::xx(a).unwrap(),
        InteractionKind::Ising => InteractionModel::ising(a).unwrap(),
        InteractionKind::Generic => InteractionModel::generic(a, b, c).unwrap(),
    })
}

fn params() -> impl Strategy<Value = SystemStateParams> {
    (0.0f64..=1.0, 0.0f64..=1.0).prop_map(|(a, w)| SystemStateParams::new(a, w).unwrap())
}

fn env() -> impl Strategy<Value = EnvironmentParams> {
    (0.01f64..15.0).prop_map(|b| EnvironmentParams::new(b).unwrap())
}

fn expectation(op: &landauer::ComplexMatrix, rho: &JointState) -> f64 {
    (op * rho.matrix()).trace().re
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn bounds_never_exceed_heat(m in model(), p in params(), e in env(), t in 0.0f64..40.0) {
        let r = Dynamics::new(&m).unwrap().record(&system_state(&p), &e, t).unwrap();
        prop_assert!(r.delta_s <= r.beta_q + 1e-9, "{r:?}");
        prop_assert!(r.thermo_b <= r.beta_q + 1e-9, "{r:?}");
    }

    #[test]
    fn total_energy_conserved(m in model(), p in params(), e in env(), t in 0.0f64..40.0) {
        let env0 = thermal_state(&e);
        let sys0 = system_state(&p);
        let h = total_hamiltonian(&m);
        let before = expectation(&h, &JointState::product(&sys0, &env0));
        let after = expectation(&h, &evolve(&m, &sys0, &env0, t).unwrap());
        prop_assert!((before - after).abs() <= 1e-10);
    }

    #[test]
    fn xx_conserves_free_energy(j in -2.0f64..2.0, p in params(), e in env(), t in 0.0f64..40.0) {
        let m = InteractionModel::xx(j).unwrap();
        let env0 = thermal_state(&e);
        let sys0 = system_state(&p);
        let h0 = free_hamiltonian();
        let before = expectation(&h0, &JointState::product(&sys0, &env0));
        let after = expectation(&h0, &evolve(&m, &sys0, &env0, t).unwrap());
        prop_assert!((before - after).abs() <= 1e-10);
    }

    #[test]
    fn evolved_state_is_a_state(m in model(), p in params(), e in env(), t in 0.0f64..40.0) {
        let rho = evolve(&m, &system_state(&p), &thermal_state(&e), t).unwrap();
        prop_assert!(rho.min_eigenvalue().unwrap() >= -1e-12);
        prop_assert!((rho.matrix().trace().re - 1.0).abs() <= 1e-12);
        prop_assert!(rho.matrix().is_hermitian(1e-12));
    }

    #[test]
    fn kraus_map_reproduces_reduced_dynamics(m in model(), p in params(), e in env(), t in 0.0f64..40.0) {
        let set = kraus_set(&m, e.beta(), t).unwrap();
        prop_assert!(set.completeness_deviation() <= 1e-12);
        let sys0 = system_state(&p);
        let via_kraus = set.apply(&sys0);
        let via_unitary = evolve(&m, &sys0, &thermal_state(&e), t).unwrap().reduced(Subsystem::System);
        prop_assert!(via_kraus.matrix().max_abs_diff(via_unitary.matrix()) <= 1e-12);
    }

    #[test]
    fn dual_form_of_thermodynamic_bound(m in model(), p in params(), e in env(), t in 0.0f64..40.0) {
        let sys0 = system_state(&p);
        let literal = -fluctuation_operators(&m, e.beta(), t).unwrap().dual_trace(&sys0).ln();
        let r = Dynamics::new(&m).unwrap().record(&sys0, &e, t).unwrap();
        prop_assert!((literal - r.thermo_b).abs() <= 1e-10 * (1.0 + r.thermo_b.abs()));
    }

    #[test]
    fn xx_heat_and_bound_are_periodic(j in 0.1f64..2.0, p in params(), e in env(), t in 0.0f64..10.0) {
        let m = InteractionModel::xx(j).unwrap();
        let d = Dynamics::new(&m).unwrap();
        let period = m.population_period().unwrap();
        let sys0 = system_state(&p);
        let a = d.record(&sys0, &e, t).unwrap();
        let b = d.record(&sys0, &e, t + period).unwrap();
        prop_assert!((a.beta_q - b.beta_q).abs() <= 1e-9);
        prop_assert!((a.thermo_b - b.thermo_b).abs() <= 1e-9);
    }

    #[test]
    fn xx_heat_peaks_at_swap(j in 0.1f64..2.0, p in params(), e in env(), t in 0.0f64..10.0) {
        let m = InteractionModel::xx(j).unwrap();
        let d = Dynamics::new(&m).unwrap();
        let sys0 = system_state(&p);
        let at = d.record(&sys0, &e, t).unwrap().beta_q;
        let peak = d.record(&sys0, &e, m.swap_time().unwrap()).unwrap().beta_q;
        // β⟨Q⟩(t) = sin²(2Jt) · β⟨Q⟩_max
        prop_assert!((at - peak * (2.0 * j * t).sin().powi(2)).abs() <= 1e-9);
    }
}

fn coherence_spread(m: &InteractionModel, a2: f64, beta: f64, t: f64) -> f64 {
    let d = Dynamics::new(m).unwrap();
    let e = EnvironmentParams::new(beta).unwrap();
    let records: Vec<_> = [0.0, 0.25, 0.5, 0.75, 1.0]
        .iter()
        .map(|&w| {
            d.record(
                &system_state(&SystemStateParams::new(a2, w).unwrap()),
                &e,
                t,
            )
            .unwrap()
        })
        .collect();
    records[1..]
        .iter()
        .map(|r| {
            (r.beta_q - records[0].beta_q)
                .abs()
                .max((r.thermo_b - records[0].thermo_b).abs())
        })
        .fold(0.0, f64::max)
}

#[test]
fn heat_and_bound_ignore_coherence_for_xx_and_ising() {
    for (a2, beta, j, t) in [
        (0.3, 1.0, 1.0, 0.7),
        (0.8, 0.2, 0.4, 13.0),
        (0.55, 6.0, 1.7, 2.2),
    ] {
        assert!(coherence_spread(&InteractionModel::xx(j).unwrap(), a2, beta, t) <= 1e-10);
        assert!(coherence_spread(&InteractionModel::ising(j).unwrap(), a2, beta, t) <= 1e-9);
    }
}

#[test]
fn generic_coherence_dependence_is_reported() {
    let mut worst: f64 = 0.0;
    for (jx, jy, jz, t) in [
        (0.3, 0.9, -0.4, 1.3),
        (1.5, -0.2, 0.7, 8.0),
        (0.1, 0.1, 2.0, 0.4),
    ] {
        let m = InteractionModel::generic(jx, jy, jz).unwrap();
        worst = worst.max(coherence_spread(&m, 0.4, 1.0, t));
    }
    eprintln!("generic model: max spread of β⟨Q⟩ and 𝓑 over w = {worst:.3e}");
    assert!(worst.is_finite());
}

#[test]
fn swap_values_at_unit_temperature() {
    let m = InteractionModel::xx(1.0).unwrap();
    let e = EnvironmentParams::new(1.0).unwrap();
    let r = Dynamics::new(&m)
        .unwrap()
        .record(
            &system_state(&SystemStateParams::new(0.0, 0.0).unwrap()),
            &e,
            PI / 4.0,
        )
        .unwrap();
    assert!((r.beta_q - 1.76159).abs() < 1e-5);
    assert!((r.thermo_b - 1.43379).abs() < 1e-5);
    assert!((r.delta_s + 0.36532).abs() < 1e-4);
}

#[test]
fn thermal_system_is_stationary_under_xx() {
    let e = EnvironmentParams::new(0.7).unwrap();
    let d = Dynamics::new(&InteractionModel::xx(0.9).unwrap()).unwrap();
    for t in [0.3, 1.0, 4.4] {
        let r = d.record(&thermal_state(&e), &e, t).unwrap();
        assert!(r.beta_q.abs() < 1e-12 && r.delta_s.abs() < 1e-12, "{r:?}");
        assert!(r.thermo_b <= 0.0);
    }
}
