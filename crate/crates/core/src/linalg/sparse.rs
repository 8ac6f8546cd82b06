use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use crate::{Error, Graph, Result};

/// Sparse `LDLᵀ` factorization of a connected graph's Laplacian with one
/// vertex grounded (its row and column removed), which makes the remaining
/// matrix positive definite.
///
/// Solving `L x = b` for `b ⊥ 1` through the grounded system gives the
/// particular solution with `x[ground] = 0`; callers project out the mean to
/// get the solution in `1⊥`. Elimination follows a greedy minimum-degree
/// order, so trees factor with no fill at all.
#[derive(Debug, Clone)]
pub struct GroundedLaplacianSolver {
    n: usize,
    ground: usize,
    steps: Vec<EliminationStep>,
}

#[derive(Debug, Clone)]
struct EliminationStep {
    vertex: usize,
    pivot: f64,
    // (row, multiplier) for rows eliminated later
    column: Vec<(usize, f64)>,
}

impl GroundedLaplacianSolver {
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.n();
        let ground = (0..n)
            .max_by_key(|&v| (g.degree(v), Reverse(v)))
            .unwrap_or(0);
        let mut diag: Vec<f64> = (0..n).map(|v| g.degree(v) as f64).collect();
        let mut active: Vec<BTreeMap<usize, f64>> = (0..n)
            .map(|v| {
                if v == ground {
                    BTreeMap::new()
                } else {
                    g.neighbors(v)
                        .iter()
                        .filter(|&&u| u != ground)
                        .map(|&u| (u, -1.0))
                        .collect()
                }
            })
            .collect();

        let mut eliminated = vec![false; n];
        eliminated[ground] = true;
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..n)
            .filter(|&v| v != ground)
            .map(|v| Reverse((active[v].len(), v)))
            .collect();

        let scale = g.max_degree().max(1) as f64;
        let mut steps = Vec::with_capacity(n.saturating_sub(1));
        while let Some(Reverse((degree, v))) = heap.pop() {
            if eliminated[v] || degree != active[v].len() {
                continue;
            }
            eliminated[v] = true;
            let pivot = diag[v];
            if pivot.is_nan() || pivot <= 1e-13 * scale {
                return Err(Error::NotPositiveDefinite {
                    step: steps.len(),
                    pivot,
                });
            }
            let entries: Vec<(usize, f64)> = std::mem::take(&mut active[v]).into_iter().collect();
            for (a, &(u, a_uv)) in entries.iter().enumerate() {
                active[u].remove(&v);
                diag[u] -= a_uv * a_uv / pivot;
                for &(w, a_wv) in &entries[a + 1..] {
                    let update = a_uv * a_wv / pivot;
                    *active[u].entry(w).or_insert(0.0) -= update;
                    *active[w].entry(u).or_insert(0.0) -= update;
                }
            }
            for &(u, _) in &entries {
                heap.push(Reverse((active[u].len(), u)));
            }
            steps.push(EliminationStep {
                vertex: v,
                pivot,
                column: entries.into_iter().map(|(u, a)| (u, a / pivot)).collect(),
            });
        }
        Ok(Self { n, ground, steps })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solves the grounded system; `rhs[ground]` is ignored and the result
    /// has `x[ground] = 0`.
    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let mut x = rhs.to_vec();
        x[self.ground] = 0.0;
        for step in &self.steps {
            let xv = x[step.vertex];
            for &(u, l) in &step.column {
                x[u] -= l * xv;
            }
        }
        for step in &self.steps {
            x[step.vertex] /= step.pivot;
        }
        for step in self.steps.iter().rev() {
            let mut xv = x[step.vertex];
            for &(u, l) in &step.column {
                xv -= l * x[u];
            }
            x[step.vertex] = xv;
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_complete, build_path, build_rose, random_tree, RoseParams};
    use crate::linalg::project_out_mean;

    fn apply_laplacian(g: &Graph, x: &[f64]) -> Vec<f64> {
        (0..g.n())
            .map(|v| g.degree(v) as f64 * x[v] - g.neighbors(v).iter().map(|&u| x[u]).sum::<f64>())
            .collect()
    }

    fn check_solves(g: &Graph) {
        let solver = GroundedLaplacianSolver::new(g).unwrap();
        let mut rng = crate::rng::SplitMix64::new(5);
        let mut b: Vec<f64> = (0..g.n()).map(|_| rng.next_f64() - 0.5).collect();
        project_out_mean(&mut b);
        let x = solver.solve(&b);
        let lx = apply_laplacian(g, &x);
        for (l, r) in lx.iter().zip(&b) {
            assert!((l - r).abs() < 1e-10, "{l} vs {r}");
        }
    }

    #[test]
    fn solves_on_trees_and_dense_graphs() {
        check_solves(&build_path(2).unwrap());
        check_solves(&build_path(30).unwrap());
        check_solves(&build_rose(RoseParams::new(11, 5).unwrap()));
        check_solves(&build_complete(9).unwrap());
        for seed in 0..20 {
            check_solves(&random_tree(50, seed).unwrap());
        }
        let cycle =
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        check_solves(&cycle);
    }

    #[test]
    fn trees_factor_without_fill() {
        let g = random_tree(200, 3).unwrap();
        let solver = GroundedLaplacianSolver::new(&g).unwrap();
        let entries: usize = solver.steps.iter().map(|s| s.column.len()).sum();
        assert!(entries <= g.edge_count());
    }

    #[test]
    fn disconnected_graph_is_singular() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            GroundedLaplacianSolver::new(&g),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }
}
