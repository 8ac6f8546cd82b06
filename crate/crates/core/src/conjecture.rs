//! The "Fiedler extremes lie on a diameter pair" predicate for trees.
//!
//! A pair `(v*, w*)` maximizing `|e₂(v) - e₂(w)|` is any pair drawn from the
//! argmax set times the argmin set of the Fiedler vector. The predicate holds
//! when every such pair is at graph distance equal to the diameter.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::distance::{bfs_distances, diameter, is_tree};
use crate::graph::{build_rose, random_tree, RoseParams};
use crate::rng::substream_seed;
use crate::spectral::{fiedler_with, FiedlerOptions, FiedlerResult, SignAnchor};
use crate::{Error, Graph, Result};

pub const DEFAULT_TIE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Holds,
    Violated,
    Degenerate,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "HOLDS",
            Verdict::Violated => "VIOLATED",
            Verdict::Degenerate => "DEGENERATE",
        })
    }
}

/// Extremal pair at distance below the diameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub max_vertex: usize,
    pub min_vertex: usize,
    pub distance: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub is_tree: bool,
    pub lambda2: f64,
    pub gap: Option<f64>,
    pub tie_tol: f64,
    /// Empty when the verdict is `DEGENERATE`.
    pub extremal_max_set: Vec<usize>,
    pub extremal_min_set: Vec<usize>,
    /// Distinct distances over `extremal_max_set × extremal_min_set`, ascending.
    pub extremal_pair_distances: Vec<usize>,
    pub diameter: usize,
    pub diameter_pairs: Vec<(usize, usize)>,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl ConjectureReport {
    pub fn min_extremal_distance(&self) -> Option<usize> {
        self.extremal_pair_distances.first().copied()
    }

    /// Checks the report's internal invariants: the verdict must follow from
    /// the distance set and the diameter alone.
    pub fn is_consistent(&self) -> bool {
        let short = self
            .extremal_pair_distances
            .iter()
            .any(|&d| d < self.diameter);
        match self.verdict {
            Verdict::Degenerate => {
                self.extremal_pair_distances.is_empty() && self.witness.is_none()
            }
            Verdict::Violated => {
                short
                    && self.witness.is_some_and(|w| {
                        w.distance < self.diameter
                            && self.extremal_pair_distances.contains(&w.distance)
                    })
            }
            Verdict::Holds => {
                !short && !self.extremal_pair_distances.is_empty() && self.witness.is_none()
            }
        }
    }
}

/// Solves for the Fiedler vector and evaluates the predicate.
pub fn check_conjecture(g: &Graph, tie_tol: f64) -> Result<ConjectureReport> {
    let result = fiedler_with(g, &FiedlerOptions::default())?;
    check_with_fiedler(g, &result, tie_tol)
}

/// Evaluates the predicate on an already computed Fiedler result.
pub fn check_with_fiedler(
    g: &Graph,
    result: &FiedlerResult,
    tie_tol: f64,
) -> Result<ConjectureReport> {
    if result.vector.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            actual: result.vector.len(),
        });
    }
    let tree = is_tree(g);
    if !tree {
        log::warn!(
            "conjecture check on a non-tree graph ({} vertices, {} edges)",
            g.n(),
            g.edge_count()
        );
    }
    let diam = diameter(g)?;
    let mut report = ConjectureReport {
        n: g.n(),
        is_tree: tree,
        lambda2: result.lambda2,
        gap: result.gap,
        tie_tol,
        extremal_max_set: Vec::new(),
        extremal_min_set: Vec::new(),
        extremal_pair_distances: Vec::new(),
        diameter: diam.diameter,
        diameter_pairs: diam.pairs,
        verdict: Verdict::Degenerate,
        witness: None,
    };
    if result.degenerate {
        return Ok(report);
    }

    let (max_set, min_set) = extremal_sets(&result.vector, tie_tol);
    let mut distances = Vec::new();
    let mut witness = None;
    for &v in &max_set {
        let from_v = bfs_distances(g, v)?;
        for &w in &min_set {
            let d = from_v.to(w).ok_or(Error::Disconnected)?;
            distances.push(d);
            if d < diam.diameter && witness.is_none() {
                witness = Some(Witness {
                    max_vertex: v,
                    min_vertex: w,
                    distance: d,
                });
            }
        }
    }
    distances.sort_unstable();
    distances.dedup();

    report.verdict = if witness.is_some() {
        Verdict::Violated
    } else {
        Verdict::Holds
    };
    report.extremal_max_set = max_set;
    report.extremal_min_set = min_set;
    report.extremal_pair_distances = distances;
    report.witness = witness;
    Ok(report)
}

/// Argmax and argmin sets, with ties taken within `tie_tol · (max - min)`.
pub fn extremal_sets(vector: &[f64], tie_tol: f64) -> (Vec<usize>, Vec<usize>) {
    crate::heat::extreme_sets(vector, tie_tol)
}

/// One rose of a family scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanCell {
    pub p: usize,
    pub s: usize,
    pub result: Result<ScanMeasurement>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanMeasurement {
    /// Fiedler entry at the leaf tip, hub-positive orientation.
    pub leaf_tip_value: f64,
    pub lambda2: f64,
    pub gap: Option<f64>,
    pub verdict: Verdict,
    pub extremal_pair_distance_min: Option<usize>,
    pub diameter: usize,
}

/// Fiedler vector of a rose, oriented so the hub entry is nonnegative.
pub fn rose_fiedler(params: RoseParams) -> Result<FiedlerResult> {
    let g = build_rose(params);
    fiedler_with(
        &g,
        &FiedlerOptions {
            anchor: SignAnchor::Vertex(params.hub()),
            ..FiedlerOptions::default()
        },
    )
}

pub fn measure_rose(params: RoseParams) -> Result<ScanMeasurement> {
    let g = build_rose(params);
    let result = rose_fiedler(params)?;
    let report = check_with_fiedler(&g, &result, DEFAULT_TIE_TOL)?;
    Ok(ScanMeasurement {
        leaf_tip_value: result.vector[params.leaf_tip()],
        lambda2: result.lambda2,
        gap: result.gap,
        verdict: report.verdict,
        extremal_pair_distance_min: report.min_extremal_distance(),
        diameter: report.diameter,
    })
}

/// One cell per `(p, s)`, stem-major order. Cells fail independently.
pub fn scan_rose_family(
    p_range: RangeInclusive<usize>,
    s_range: RangeInclusive<usize>,
) -> Vec<ScanCell> {
    let grid: Vec<(usize, usize)> = s_range
        .flat_map(|s| p_range.clone().map(move |p| (p, s)))
        .collect();
    grid.into_par_iter()
        .map(|(p, s)| ScanCell {
            p,
            s,
            result: RoseParams::new(p, s).and_then(measure_rose),
        })
        .collect()
}

/// Smallest petal count in `1..=p_max` whose rose violates the predicate at
/// stem length `s`.
pub fn minimal_violating_p(s: usize, p_max: usize) -> Result<Option<usize>> {
    for p in 1..=p_max {
        if measure_rose(RoseParams::new(p, s)?)?.verdict == Verdict::Violated {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub index: usize,
    pub seed: u64,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub report: ConjectureReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchFailure {
    pub index: usize,
    pub seed: u64,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub seed: u64,
    pub tie_tol: f64,
    pub instances_checked: usize,
    pub degenerate_skipped: usize,
    pub violations: Vec<Violation>,
    pub failures: Vec<SearchFailure>,
}

enum Outcome {
    Holds,
    Degenerate,
    Violated(Box<Violation>),
    Failed(SearchFailure),
}

/// Checks `instances` random labeled trees on `n` vertices. Instance `i` is
/// generated from `substream_seed(seed, i)`, so the report does not depend on
/// the rayon pool size.
pub fn search_random_trees(n: usize, instances: usize, seed: u64) -> Result<SearchReport> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "search needs n >= 3, got {n}"
        )));
    }
    let outcomes: Vec<Outcome> = (0..instances)
        .into_par_iter()
        .map(|index| {
            let tree_seed = substream_seed(seed, index as u64);
            let checked = random_tree(n, tree_seed)
                .and_then(|g| check_conjecture(&g, DEFAULT_TIE_TOL).map(|report| (g, report)));
            match checked {
                Ok((_, report)) if report.verdict == Verdict::Holds => Outcome::Holds,
                Ok((_, report)) if report.verdict == Verdict::Degenerate => Outcome::Degenerate,
                Ok((g, report)) => Outcome::Violated(Box::new(Violation {
                    index,
                    seed: tree_seed,
                    n,
                    edges: g.edges().collect(),
                    report,
                })),
                Err(e) => Outcome::Failed(SearchFailure {
                    index,
                    seed: tree_seed,
                    error: e.to_string(),
                }),
            }
        })
        .collect();

    let mut report = SearchReport {
        n,
        seed,
        tie_tol: DEFAULT_TIE_TOL,
        instances_checked: instances,
        degenerate_skipped: 0,
        violations: Vec::new(),
        failures: Vec::new(),
    };
    for outcome in outcomes {
        match outcome {
            Outcome::Holds => {}
            Outcome::Degenerate => report.degenerate_skipped += 1,
            Outcome::Violated(v) => report.violations.push(*v),
            Outcome::Failed(f) => report.failures.push(f),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_path, build_star};

    #[test]
    fn rose_11_5_violates() {
        let params = RoseParams::new(11, 5).unwrap();
        let r = check_conjecture(&build_rose(params), DEFAULT_TIE_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        assert_eq!(r.diameter, 8);
        assert_eq!(r.extremal_pair_distances, vec![7]);
        // FirstNonzero orientation puts the leaf tip negative, so petals are the minimum
        assert_eq!(r.extremal_min_set, params.petal_range().collect::<Vec<_>>());
        assert_eq!(r.extremal_max_set, vec![params.stem_tip()]);
        assert!(r.is_consistent());
    }

    #[test]
    fn rose_3_5_holds() {
        let params = RoseParams::new(3, 5).unwrap();
        let r = check_conjecture(&build_rose(params), DEFAULT_TIE_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Holds);
        let mut pair = [r.extremal_max_set.clone(), r.extremal_min_set.clone()];
        pair.sort();
        assert_eq!(pair, [vec![params.leaf_tip()], vec![params.stem_tip()]]);
        assert!(r.is_consistent());
    }

    #[test]
    fn paths_hold() {
        for n in 2..=15 {
            let r = check_conjecture(&build_path(n).unwrap(), DEFAULT_TIE_TOL).unwrap();
            assert_eq!(r.verdict, Verdict::Holds, "path({n})");
            let mut ends = r.extremal_max_set.clone();
            ends.extend(&r.extremal_min_set);
            ends.sort_unstable();
            assert_eq!(ends, vec![0, n - 1]);
        }
    }

    #[test]
    fn star_is_degenerate() {
        let r = check_conjecture(&build_star(5).unwrap(), DEFAULT_TIE_TOL).unwrap();
        assert_eq!(r.verdict, Verdict::Degenerate);
        assert!(r.is_consistent());
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            check_conjecture(&g, DEFAULT_TIE_TOL),
            Err(Error::Disconnected)
        );
    }

    #[test]
    fn non_tree_still_gets_a_verdict() {
        // 6-cycle with a pendant vertex
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (0, 6)])
            .unwrap();
        let r = check_conjecture(&g, DEFAULT_TIE_TOL).unwrap();
        assert!(!r.is_tree);
        assert!(r.is_consistent());
    }

    #[test]
    fn scan_keeps_going_after_failures() {
        let cells = scan_rose_family(0..=2, 5..=5);
        assert_eq!(cells.len(), 3);
        assert!(cells[0].result.is_err());
        assert!(cells[1].result.is_ok() && cells[2].result.is_ok());
        assert_eq!((cells[2].p, cells[2].s), (2, 5));
    }

    #[test]
    fn search_edge_cases() {
        let empty = search_random_trees(21, 0, 1).unwrap();
        assert_eq!(empty.instances_checked, 0);
        assert!(empty.violations.is_empty());
        let tiny = search_random_trees(3, 50, 9).unwrap();
        assert!(tiny.violations.is_empty());
        assert!(search_random_trees(2, 5, 0).is_err());
    }
}
