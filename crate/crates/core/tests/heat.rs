use fiedler_lab::graph::{build_path, build_rose, random_tree};
use fiedler_lab::heat::{
    energy, heat_solve_rk4, heat_solve_spectral, heat_trajectory, rk4_step_bound,
    transient_extremes,
};
use fiedler_lab::rng::SplitMix64;
use fiedler_lab::spectral::algebraic_connectivity;
use fiedler_lab::{Error, RoseParams};

fn state(rng: &mut SplitMix64, n: usize) -> Vec<f64> {
    (0..n).map(|_| 0.5 + rng.next_f64()).collect()
}

#[test]
fn mass_is_conserved_and_energy_decreases() {
    let mut rng = SplitMix64::new(101);
    for _ in 0..10 {
        let n = 3 + rng.below(48) as usize;
        let g = random_tree(n, rng.next_u64()).unwrap();
        let u0 = state(&mut rng, n);
        let mass: f64 = u0.iter().sum();
        let times = [0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0];
        let traj = heat_trajectory(&g, &u0, &times).unwrap();
        let mut last = f64::INFINITY;
        for sample in &traj.samples {
            assert!((sample.mass() - mass).abs() < 1e-9);
            let e = energy(&g, &sample.u);
            assert!(e <= last + 1e-12, "energy rose from {last} to {e}");
            last = e;
        }
    }
}

#[test]
fn spectral_and_rk4_agree() {
    let mut rng = SplitMix64::new(202);
    for _ in 0..8 {
        let n = 4 + rng.below(47) as usize;
        let g = random_tree(n, rng.next_u64()).unwrap();
        let u0 = state(&mut rng, n);
        for t in [0.3, 1.0, 5.0] {
            let a = heat_solve_spectral(&g, &u0, t).unwrap();
            let b = heat_solve_rk4(&g, &u0, t, 1e-3).unwrap();
            for (x, y) in a.u.iter().zip(&b.u) {
                assert!((x - y).abs() / y.abs() < 1e-6);
            }
        }
    }
}

#[test]
fn rk4_rejects_steps_above_the_bound() {
    let g = build_rose(RoseParams::new(11, 5).unwrap());
    let bound = rk4_step_bound(&g).unwrap();
    assert!((bound - 0.1 / 12.0).abs() < 1e-15);
    let u0 = vec![1.0; g.n()];
    assert!(matches!(
        heat_solve_rk4(&g, &u0, 1.0, 2.0 * bound),
        Err(Error::StepTooLarge { .. })
    ));
    assert!(heat_solve_rk4(&g, &u0, 1.0, bound).is_ok());
}

#[test]
fn deviation_decays_at_rate_lambda2() {
    let mut rng = SplitMix64::new(303);
    for (p, s) in [(11, 5), (3, 5), (6, 9)] {
        let g = build_rose(RoseParams::new(p, s).unwrap());
        let lambda2 = algebraic_connectivity(&g).unwrap();
        let u0 = state(&mut rng, g.n());
        let mean = u0.iter().sum::<f64>() / g.n() as f64;
        let dev0: f64 = u0.iter().map(|x| (x - mean).powi(2)).sum::<f64>().sqrt();
        for t in [1.0, 10.0, 100.0] {
            let u = heat_solve_spectral(&g, &u0, t).unwrap().u;
            let dev: f64 = u.iter().map(|x| (x - mean).powi(2)).sum::<f64>().sqrt();
            assert!(dev <= dev0 * (-lambda2 * t).exp() * (1.0 + 1e-9) + 1e-14);
        }
    }
}

#[test]
fn small_graphs_reach_the_mean() {
    for n in 2..=6 {
        let g = build_path(n).unwrap();
        let u0: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let mean = u0.iter().sum::<f64>() / n as f64;
        let u = heat_solve_spectral(&g, &u0, 100.0).unwrap().u;
        assert!(u.iter().all(|x| (x - mean).abs() < 1e-8));
    }
}

#[test]
fn transient_needs_a_fiedler_component() {
    // the reflection of a path maps e₂ to -e₂, so a symmetric start has no
    // λ₂ component
    let g = build_path(7).unwrap();
    let u0 = vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0];
    assert!(matches!(
        transient_extremes(&g, &u0),
        Err(Error::OrthogonalInitialState(_))
    ));
    let mut skewed = u0.clone();
    skewed[0] = 2.0;
    let report = transient_extremes(&g, &skewed).unwrap();
    assert!(report.matched);
    assert_eq!(report.hot_vertices, [0]);
    assert_eq!(report.cold_vertices, [6]);
}

#[test]
fn transient_at_the_rose_stem_tip() {
    let params = RoseParams::new(11, 5).unwrap();
    let g = build_rose(params);
    let mut u0 = vec![0.0; g.n()];
    u0[params.stem_tip()] = 1.0;
    let report = transient_extremes(&g, &u0).unwrap();
    assert!(report.matched);
    assert_eq!(report.hot_vertices, [params.stem_tip()]);
    assert_eq!(
        report.cold_vertices,
        params.petal_range().collect::<Vec<_>>()
    );
    assert!(report.t_star > 0.0);
    assert!((report.state.mass() - 1.0).abs() < 1e-12);
}
