use fiedler_lab::conjecture::{
    check_conjecture, check_with_fiedler, measure_rose, minimal_violating_p, scan_rose_family,
    search_random_trees, Verdict, DEFAULT_TIE_TOL,
};
use fiedler_lab::graph::{build_path, build_rose, build_star, random_tree};
use fiedler_lab::spectral::{
    fiedler, full_spectrum, is_degenerate_gap, FiedlerResult, DEFAULT_MAX_ITER, DEFAULT_TOL,
};
use fiedler_lab::RoseParams;

#[test]
fn reports_are_consistent() {
    for seed in 0..80 {
        let g = random_tree(5 + (seed as usize % 30), seed).unwrap();
        let report = check_conjecture(&g, DEFAULT_TIE_TOL).unwrap();
        assert!(report.is_consistent(), "seed {seed}: {report:?}");
        assert!(report.is_tree);
    }
    for p in 1..=12 {
        for s in 1..=8 {
            let g = build_rose(RoseParams::new(p, s).unwrap());
            assert!(check_conjecture(&g, DEFAULT_TIE_TOL)
                .unwrap()
                .is_consistent());
        }
    }
}

#[test]
fn verdict_does_not_depend_on_orientation() {
    for seed in 0..40 {
        let g = random_tree(12 + seed as usize % 20, seed).unwrap();
        let r = fiedler(&g, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        let flipped = FiedlerResult {
            vector: r.vector.iter().map(|x| -x).collect(),
            ..r.clone()
        };
        let a = check_with_fiedler(&g, &r, DEFAULT_TIE_TOL).unwrap();
        let b = check_with_fiedler(&g, &flipped, DEFAULT_TIE_TOL).unwrap();
        assert_eq!(a.verdict, b.verdict);
        assert_eq!(a.extremal_pair_distances, b.extremal_pair_distances);
        assert_eq!(a.extremal_max_set, b.extremal_min_set);
    }
}

#[test]
fn looser_ties_only_add_extremal_vertices() {
    let g = build_rose(RoseParams::new(4, 3).unwrap());
    let mut last = (0, 0);
    for tol in [0.0, 1e-9, 1e-3, 0.05, 0.2, 0.5] {
        let r = check_conjecture(&g, tol).unwrap();
        let sizes = (r.extremal_max_set.len(), r.extremal_min_set.len());
        assert!(sizes.0 >= last.0 && sizes.1 >= last.1, "tol {tol}");
        last = sizes;
    }
}

#[test]
fn degenerate_graphs_are_not_judged() {
    let r = check_conjecture(&build_star(5).unwrap(), DEFAULT_TIE_TOL).unwrap();
    assert_eq!(r.verdict, Verdict::Degenerate);
    assert!(r.extremal_max_set.is_empty() && r.witness.is_none());
    assert!(r.is_consistent());
    let path = check_conjecture(&build_path(9).unwrap(), DEFAULT_TIE_TOL).unwrap();
    assert_eq!(path.verdict, Verdict::Holds);
    assert_eq!(path.diameter_pairs, [(0, 8)]);
}

#[test]
fn rose_11_5_violates() {
    let params = RoseParams::new(11, 5).unwrap();
    let r = check_conjecture(&build_rose(params), DEFAULT_TIE_TOL).unwrap();
    assert_eq!(r.verdict, Verdict::Violated);
    assert_eq!(r.diameter, 8);
    assert_eq!(r.diameter_pairs, [(params.leaf_tip(), params.stem_tip())]);
    let w = r.witness.unwrap();
    assert_eq!(w.distance, 7);
    assert!(
        params.petal_range().contains(&w.max_vertex)
            || params.petal_range().contains(&w.min_vertex)
    );
}

#[test]
fn minimal_violating_petal_count() {
    // dense solver as an independent route through the same predicate
    let dense_verdict = |p: usize| {
        let g = build_rose(RoseParams::new(p, 5).unwrap());
        let spectrum = full_spectrum(&g, 1e-9).unwrap();
        let gap = spectrum.eigenvalues[2] - spectrum.eigenvalues[1];
        let result = FiedlerResult {
            lambda2: spectrum.eigenvalues[1],
            vector: spectrum.eigenvectors[1].clone(),
            gap: Some(gap),
            degenerate: is_degenerate_gap(spectrum.eigenvalues[1], gap),
            iterations: 0,
            residual: 0.0,
        };
        check_with_fiedler(&g, &result, DEFAULT_TIE_TOL)
            .unwrap()
            .verdict
    };
    let found = minimal_violating_p(5, 11).unwrap().unwrap();
    assert!(found > 3 && found <= 11);
    assert_eq!(found, 4);
    for p in 1..found {
        assert_eq!(dense_verdict(p), Verdict::Holds, "p={p}");
    }
    assert_eq!(dense_verdict(found), Verdict::Violated);
}

#[test]
fn scan_matches_direct_measurements() {
    let cells = scan_rose_family(1..=12, 5..=5);
    assert_eq!(cells.len(), 12);
    for cell in &cells {
        let direct = measure_rose(RoseParams::new(cell.p, cell.s).unwrap()).unwrap();
        assert_eq!(cell.result.as_ref().unwrap(), &direct);
    }
    let at = |p: usize| cells[p - 1].result.as_ref().unwrap();
    assert!((at(11).leaf_tip_value + 0.0093).abs() < 1e-3);
    assert!((at(10).leaf_tip_value - 0.0074).abs() < 1e-3);
    assert!((at(3).leaf_tip_value - 0.2514).abs() < 1e-3);
    assert_eq!(at(3).verdict, Verdict::Holds);
    assert_eq!(at(11).verdict, Verdict::Violated);
    assert_eq!(at(11).extremal_pair_distance_min, Some(7));

    // stem-major order, and bad cells fail on their own
    let grid = scan_rose_family(0..=2, 1..=2);
    let order: Vec<_> = grid.iter().map(|c| (c.p, c.s)).collect();
    assert_eq!(order, [(0, 1), (1, 1), (2, 1), (0, 2), (1, 2), (2, 2)]);
    assert!(grid[0].result.is_err() && grid[1].result.is_ok());
}

#[test]
fn search_is_independent_of_pool_size() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| search_random_trees(21, 150, 42).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one.instances_checked, 150);
    assert!(one.failures.is_empty());
    for v in &one.violations {
        assert!(v.report.is_consistent());
        assert_eq!(v.report.verdict, Verdict::Violated);
        assert_eq!(
            random_tree(21, v.seed).unwrap().edges().collect::<Vec<_>>(),
            v.edges
        );
    }
    assert!(search_random_trees(2, 5, 0).is_err());
}
