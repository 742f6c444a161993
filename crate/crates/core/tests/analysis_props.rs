use landauer::analysis::{
    admissible_grid, b_max, beta_q_max, bound_gap, boundary_curve, clausius_threshold, ds_max,
    linspace, max_point, region_map_max_point, tightness_surface, CouplingEnsemble, RegionLabel,
};
use landauer::engine::Dynamics;
use landauer::model::{
    max_coherence, system_state, EnvironmentParams, InteractionKind, InteractionModel,
    SystemStateParams,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn closed_forms_match_time_domain(a2 in 0.0f64..=1.0, w in 0.0f64..=1.0, beta in 0.05f64..12.0, j in 0.2f64..3.0) {
        let m = InteractionModel::xx(j).unwrap();
        let p = SystemStateParams::new(a2, w).unwrap();
        let e = EnvironmentParams::new(beta).unwrap();
        let r = Dynamics::new(&m).unwrap().record(&system_state(&p), &e, m.swap_time().unwrap()).unwrap();
        let c = max_point(&p, beta).unwrap();
        prop_assert!((r.beta_q - c.beta_q_max).abs() <= 1e-9 * (1.0 + beta));
        prop_assert!((r.thermo_b - c.b_max).abs() <= 1e-9);
        prop_assert!((r.delta_s - c.ds_max).abs() <= 1e-9);
    }

    #[test]
    fn closed_forms_respect_bounds(a2 in 0.0f64..=1.0, w in 0.0f64..=1.0, beta in 0.01f64..50.0) {
        let c = max_point(&SystemStateParams::new(a2, w).unwrap(), beta).unwrap();
        prop_assert!(c.ds_max <= c.beta_q_max + 1e-12);
        prop_assert!(c.b_max <= c.beta_q_max + 1e-12);
        prop_assert!(c.ds_beta >= -1e-15 && c.ds_beta <= std::f64::consts::LN_2);
        prop_assert!(c.ds_v >= 0.0 && c.ds_v <= std::f64::consts::LN_2 + 1e-15);
    }

    #[test]
    fn b_max_sign_follows_population(v_z in -1.0f64..=1.0, beta in 0.01f64..50.0) {
        let b = b_max(v_z, beta).unwrap();
        prop_assert_eq!(b > 0.0, v_z > 0.0);
        prop_assert!(b.is_finite());
    }

    #[test]
    fn ds_max_decreases_with_purity(v1 in 0.0f64..=1.0, v2 in 0.0f64..=1.0, beta in 0.01f64..20.0) {
        let (lo, hi) = if v1 <= v2 { (v1, v2) } else { (v2, v1) };
        prop_assert!(ds_max(lo, beta).unwrap().ds_max >= ds_max(hi, beta).unwrap().ds_max);
    }

    #[test]
    fn xx_threshold_is_heat_sign_change(beta in 0.01f64..5.0) {
        let a = clausius_threshold(InteractionKind::Xx, beta, None).unwrap();
        let v_z = |a2: f64| 1.0 - 2.0 * a2;
        prop_assert!(beta_q_max(v_z(a - 1e-6), beta).unwrap() > 0.0);
        prop_assert!(beta_q_max(v_z(a + 1e-6), beta).unwrap() < 0.0);
    }

    #[test]
    fn ising_threshold_monotone(beta in 0.05f64..3.0, j in 0.05f64..5.0, db in 0.01f64..1.0, dj in 0.01f64..1.0) {
        let t = |b: f64, j: f64| clausius_threshold(InteractionKind::Ising, b, Some(j)).unwrap();
        prop_assert!(t(beta + db, j) >= t(beta, j));
        prop_assert!(t(beta, j + dj) >= t(beta, j));
        prop_assert!(t(beta, j) >= 0.5 && t(beta, j) <= 1.0);
    }

    #[test]
    fn labels_consistent_with_values(a2 in 0.0f64..=1.0, w in 0.0f64..=1.0, beta in 0.05f64..12.0) {
        let c = max_point(&SystemStateParams::new(a2, w).unwrap(), beta).unwrap();
        let label = RegionLabel::from_values(c.beta_q_max, c.ds_max, c.b_max);
        match label {
            RegionLabel::NegativeHeat => prop_assert!(c.beta_q_max < 0.0),
            RegionLabel::ThermoTighter => prop_assert!(c.b_max > c.ds_max),
            RegionLabel::EntropicTighter => prop_assert!(c.ds_max > c.b_max),
            RegionLabel::Tie => prop_assert!((c.b_max - c.ds_max).abs() <= 1e-9),
            RegionLabel::BothBoundsNegative => prop_assert!(c.b_max < 0.0 && c.ds_max < 0.0),
        }
    }
}

#[test]
fn boundary_satisfies_crossover_for_many_temperatures() {
    for beta in linspace(0.05, 12.0, 25) {
        let curve = boundary_curve(beta, &linspace(0.0, 1.0, 120)).unwrap();
        for p in &curve.points {
            assert!(p.delta >= 0.0 && p.delta <= max_coherence(p.alpha_sq));
            assert!(bound_gap(beta, p.alpha_sq, p.delta).unwrap().abs() < 1e-9);
        }
    }
}

#[test]
fn thermodynamic_bound_wins_for_pure_excited_side() {
    for beta in [0.1, 1.0, 10.0] {
        for a2 in linspace(0.0, 0.49, 50) {
            assert_eq!(
                landauer::analysis::classify_max_point(a2, 1.0, beta).unwrap(),
                RegionLabel::ThermoTighter,
                "β={beta} α²={a2}"
            );
        }
    }
}

#[test]
fn negative_heat_region_starts_at_xx_threshold() {
    let beta = 1.0;
    let points = admissible_grid(200);
    let labels = region_map_max_point(beta, &points).unwrap();
    let first = points
        .iter()
        .zip(&labels)
        .filter(|(_, l)| **l == RegionLabel::NegativeHeat)
        .map(|(p, _)| p.alpha_sq)
        .fold(f64::INFINITY, f64::min);
    let threshold = clausius_threshold(InteractionKind::Xx, beta, None).unwrap();
    assert!((threshold - 0.88080).abs() < 1e-5);
    assert!(first >= threshold && first - threshold <= 1.0 / 199.0);
}

#[test]
fn surface_tightens_as_temperature_rises() {
    let s = tightness_surface(&[0.0], &[1e-4, 1e-3, 1e-2, 0.1], 0.0).unwrap();
    let gaps: Vec<f64> = s.iter().map(|p| p.q_max - p.b_max_over_beta).collect();
    assert!(gaps.windows(2).all(|w| w[0] < w[1]), "{gaps:?}");
    assert!(gaps[0] < 1e-4);
    let s = tightness_surface(&linspace(0.51, 1.0, 10), &linspace(0.1, 10.0, 10), 0.0).unwrap();
    assert!(s.iter().all(|p| p.b_max_over_beta < 0.0));
}

#[test]
fn ensemble_average_independent_of_thread_count() {
    let p = SystemStateParams::new(0.9, 0.3).unwrap();
    let e = EnvironmentParams::new(1.0).unwrap();
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                CouplingEnsemble::new(InteractionKind::Generic, 1.5, 300, 500.0, 11)
                    .unwrap()
                    .average(&p, &e)
                    .unwrap()
            })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn averaged_ising_bound_negative_for_ground_heavy_state() {
    let p = SystemStateParams::from_coherence(0.9, 0.1).unwrap();
    let rec =
        landauer::averaged_bounds(InteractionKind::Ising, &p, 1.0, 1.0, 2000, 1000.0, 0).unwrap();
    assert!(rec.mean_b < 0.0, "{rec:?}");
    assert!(rec.mean_ds <= rec.mean_beta_q && rec.mean_b <= rec.mean_beta_q);
}
