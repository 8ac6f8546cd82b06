//! Laplacian operator and eigensolvers.
//!
//! Convention: `L = D - A`, which is positive semidefinite, so the spectrum
//! reads `0 = λ₁ ≤ λ₂ ≤ … ≤ λₙ`. Some texts define the Laplacian as `A - D`;
//! its eigenvalue `-λ` is our `λ` and the eigenvectors coincide.
//!
//! Two independent routes produce the Fiedler pair:
//!
//! - [`full_spectrum`]: dense Householder tridiagonalization + implicit QL.
//! - [`fiedler`]: block inverse iteration on `1⊥` using a sparse factorization
//!   of the grounded Laplacian, with Rayleigh–Ritz extraction of `λ₂` and
//!   `λ₃` so the spectral gap comes for free.

use serde::{Deserialize, Serialize};

use crate::distance::is_connected;
use crate::linalg::{
    self, dot, norm, project_out_mean, symmetric_eigen, DenseMatrix, GroundedLaplacianSolver,
};
use crate::rng::SplitMix64;
use crate::{Error, Graph, Result};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 10_000;
pub const DENSE_CAP: usize = 2000;

/// Relative gap below which `λ₂` counts as repeated.
pub const DEGENERACY_TOL: f64 = 1e-8;

const ANCHOR_ZERO: f64 = 1e-12;
const BLOCK_SIZE: usize = 6;
const START_SEED: u64 = 0x0F1E_D1E2;

/// Read-only Laplacian `L = D - A` backed by the graph's adjacency lists.
#[derive(Debug, Clone, Copy)]
pub struct LaplacianView<'a> {
    graph: &'a Graph,
}

pub fn laplacian(g: &Graph) -> LaplacianView<'_> {
    LaplacianView { graph: g }
}

impl<'a> LaplacianView<'a> {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn diagonal(&self, i: usize) -> f64 {
        self.graph.degree(i) as f64
    }

    /// Nonzero entries of row `i` in column order.
    pub fn row(&self, i: usize) -> Vec<(usize, f64)> {
        let mut row: Vec<_> = self.graph.neighbors(i).iter().map(|&j| (j, -1.0)).collect();
        let at = row.partition_point(|&(j, _)| j < i);
        row.insert(at, (i, self.diagonal(i)));
        row
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.diagonal(i)
        } else if self.graph.has_edge(i, j) {
            -1.0
        } else {
            0.0
        }
    }

    /// `out = L x`
    pub fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        for (v, o) in out.iter_mut().enumerate() {
            let nb: f64 = self.graph.neighbors(v).iter().map(|&u| x[u]).sum();
            *o = self.diagonal(v) * x[v] - nb;
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; x.len()];
        self.apply_into(x, &mut out);
        out
    }

    /// `xᵀ L x = Σ_{(u,v) ∈ E} (x_u - x_v)²`
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        self.graph.edges().map(|(u, v)| (x[u] - x[v]).powi(2)).sum()
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.n();
        let mut m = DenseMatrix::zeros(n);
        for i in 0..n {
            for (j, value) in self.row(i) {
                m[(i, j)] = value;
            }
        }
        m
    }
}

/// Complete eigendecomposition; `eigenvectors[k]` pairs with `eigenvalues[k]`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<f64>>,
}

impl Spectrum {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Largest `‖L eᵢ - λᵢ eᵢ‖` over all pairs.
    pub fn max_residual(&self, g: &Graph) -> f64 {
        let lap = laplacian(g);
        self.eigenvalues
            .iter()
            .zip(&self.eigenvectors)
            .map(|(&lambda, e)| residual_norm(&lap, lambda, e))
            .fold(0.0, f64::max)
    }
}

pub fn full_spectrum(g: &Graph, tol: f64) -> Result<Spectrum> {
    full_spectrum_capped(g, tol, DENSE_CAP)
}

pub fn full_spectrum_capped(g: &Graph, tol: f64, cap: usize) -> Result<Spectrum> {
    let n = g.n();
    if n > cap {
        return Err(Error::DenseCapExceeded { n, cap });
    }
    let lap = laplacian(g);
    let eig = symmetric_eigen(&lap.to_dense())?;
    let mut eigenvectors: Vec<Vec<f64>> = (0..n).map(|k| eig.vectors.column(k)).collect();
    for e in &mut eigenvectors {
        apply_anchor(e, SignAnchor::FirstNonzero);
    }
    let spectrum = Spectrum {
        eigenvalues: eig.values,
        eigenvectors,
    };
    let bound = tol * spectrum.eigenvalues.last().copied().unwrap_or(0.0).max(1.0);
    let worst = spectrum.max_residual(g);
    if worst > bound {
        return Err(Error::NoConvergence {
            iterations: 0,
            residual: worst,
        });
    }
    Ok(spectrum)
}

/// Rule fixing the overall sign of an eigenvector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignAnchor {
    /// The lowest-index entry with magnitude above `1e-12` is made positive.
    #[default]
    FirstNonzero,
    /// The entry at this vertex is made nonnegative.
    Vertex(usize),
}

pub fn apply_anchor(vector: &mut [f64], anchor: SignAnchor) {
    let flip = match anchor {
        SignAnchor::FirstNonzero => vector
            .iter()
            .find(|x| x.abs() > ANCHOR_ZERO)
            .is_some_and(|&x| x < 0.0),
        SignAnchor::Vertex(v) => vector.get(v).is_some_and(|&x| x < 0.0),
    };
    if flip {
        linalg::scale(-1.0, vector);
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiedlerOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub anchor: SignAnchor,
}

impl Default for FiedlerOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            anchor: SignAnchor::FirstNonzero,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiedlerResult {
    pub lambda2: f64,
    pub vector: Vec<f64>,
    /// `λ₃ - λ₂`; absent for graphs with fewer than three vertices.
    pub gap: Option<f64>,
    pub degenerate: bool,
    pub iterations: usize,
    pub residual: f64,
}

impl FiedlerResult {
    pub fn lambda3(&self) -> Option<f64> {
        self.gap.map(|g| self.lambda2 + g)
    }

    pub fn reanchored(mut self, anchor: SignAnchor) -> Self {
        apply_anchor(&mut self.vector, anchor);
        self
    }
}

pub fn is_degenerate_gap(lambda2: f64, gap: f64) -> bool {
    gap <= DEGENERACY_TOL * lambda2.max(1.0)
}

pub fn fiedler(g: &Graph, tol: f64, max_iter: usize) -> Result<FiedlerResult> {
    fiedler_with(
        g,
        &FiedlerOptions {
            tol,
            max_iter,
            ..FiedlerOptions::default()
        },
    )
}

/// Fiedler pair by block inverse iteration restricted to `1⊥`.
///
/// Each sweep solves `L Z = Q` through the grounded factorization, projects
/// the block back onto `1⊥`, re-orthonormalizes and performs Rayleigh–Ritz.
/// Iteration stops once the Ritz pairs for `λ₂` and `λ₃` both have residual
/// at most `tol`.
pub fn fiedler_with(g: &Graph, opts: &FiedlerOptions) -> Result<FiedlerResult> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "Fiedler vector needs at least two vertices".into(),
        ));
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let lap = laplacian(g);
    let solver = GroundedLaplacianSolver::new(g)?;
    let block = BLOCK_SIZE.min(n - 1);
    let watched = block.min(2);
    let mut rng = SplitMix64::new(START_SEED);

    let mut basis: Vec<Vec<f64>> = (0..block)
        .map(|_| random_in_complement(&mut rng, n))
        .collect();
    orthonormalize(&mut basis, &mut rng);
    let mut ritz = rayleigh_ritz(&lap, &basis)?;

    let mut best = ritz.residuals[0];
    let mut iterations = 0;
    while ritz.worst_residual(watched) > opts.tol {
        if iterations >= opts.max_iter {
            return Err(Error::NoConvergence {
                iterations,
                residual: best,
            });
        }
        iterations += 1;
        let mut next: Vec<Vec<f64>> = ritz
            .vectors
            .iter()
            .map(|q| {
                let mut z = solver.solve(q);
                project_out_mean(&mut z);
                z
            })
            .collect();
        orthonormalize(&mut next, &mut rng);
        ritz = rayleigh_ritz(&lap, &next)?;
        best = best.min(ritz.residuals[0]);
    }

    let mut vector = ritz.vectors.swap_remove(0);
    project_out_mean(&mut vector);
    linalg::scale(1.0 / norm(&vector), &mut vector);
    apply_anchor(&mut vector, opts.anchor);
    let lambda2 = lap.quadratic_form(&vector);
    let residual = residual_norm(&lap, lambda2, &vector);
    let gap = (block >= 2).then(|| (ritz.values[1] - lambda2).max(0.0));
    Ok(FiedlerResult {
        lambda2,
        degenerate: gap.is_some_and(|gap| is_degenerate_gap(lambda2, gap)),
        vector,
        gap,
        iterations,
        residual,
    })
}

/// `λ₂` for connected graphs, `0` for disconnected ones and for a single
/// vertex.
pub fn algebraic_connectivity(g: &Graph) -> Result<f64> {
    if g.n() < 2 || !is_connected(g) {
        return Ok(0.0);
    }
    if g.n() <= DENSE_CAP {
        Ok(full_spectrum(g, DEFAULT_TOL)?.eigenvalues[1].max(0.0))
    } else {
        Ok(fiedler(g, DEFAULT_TOL, DEFAULT_MAX_ITER)?.lambda2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignLabel {
    Positive,
    Negative,
    Zero,
}

/// Labels each vertex by the sign of its entry, treating `|x| ≤ zero_tol`
/// as zero.
pub fn sign_partition(g: &Graph, vector: &[f64], zero_tol: f64) -> Result<Vec<SignLabel>> {
    if vector.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            actual: vector.len(),
        });
    }
    Ok(vector
        .iter()
        .map(|&x| {
            if x > zero_tol {
                SignLabel::Positive
            } else if x < -zero_tol {
                SignLabel::Negative
            } else {
                SignLabel::Zero
            }
        })
        .collect())
}

fn residual_norm(lap: &LaplacianView<'_>, lambda: f64, x: &[f64]) -> f64 {
    let mut r = lap.apply(x);
    linalg::axpy(-lambda, x, &mut r);
    norm(&r)
}

fn random_in_complement(rng: &mut SplitMix64, n: usize) -> Vec<f64> {
    let mut x: Vec<f64> = (0..n).map(|_| rng.next_f64() - 0.5).collect();
    project_out_mean(&mut x);
    x
}

/// Modified Gram–Schmidt, applied twice, inside `1⊥`. Columns that collapse
/// are replaced by fresh random directions.
fn orthonormalize(block: &mut [Vec<f64>], rng: &mut SplitMix64) {
    let n = block.first().map_or(0, Vec::len);
    for k in 0..block.len() {
        let mut attempts = 0;
        loop {
            let (done, rest) = block.split_at_mut(k);
            let x = &mut rest[0];
            let before = norm(x);
            for _ in 0..2 {
                for q in done.iter() {
                    let c = dot(q, x);
                    linalg::axpy(-c, q, x);
                }
                project_out_mean(x);
            }
            let after = norm(x);
            if after > 1e-10 * before.max(f64::MIN_POSITIVE) && after > 0.0 {
                linalg::scale(1.0 / after, x);
                break;
            }
            attempts += 1;
            assert!(attempts < 100, "cannot extend orthonormal block");
            *x = random_in_complement(rng, n);
        }
    }
}

struct Ritz {
    values: Vec<f64>,
    vectors: Vec<Vec<f64>>,
    residuals: Vec<f64>,
}

impl Ritz {
    fn worst_residual(&self, count: usize) -> f64 {
        self.residuals[..count].iter().copied().fold(0.0, f64::max)
    }
}

fn rayleigh_ritz(lap: &LaplacianView<'_>, basis: &[Vec<f64>]) -> Result<Ritz> {
    let k = basis.len();
    let images: Vec<Vec<f64>> = basis.iter().map(|q| lap.apply(q)).collect();
    let mut h = DenseMatrix::zeros(k);
    for i in 0..k {
        for j in 0..=i {
            let v = 0.5 * (dot(&basis[i], &images[j]) + dot(&basis[j], &images[i]));
            h[(i, j)] = v;
            h[(j, i)] = v;
        }
    }
    let eig = symmetric_eigen(&h)?;
    let n = lap.n();
    let mut vectors = Vec::with_capacity(k);
    let mut residuals = Vec::with_capacity(k);
    for col in 0..k {
        let mut x = vec![0.0; n];
        let mut lx = vec![0.0; n];
        for row in 0..k {
            let w = eig.vectors[(row, col)];
            linalg::axpy(w, &basis[row], &mut x);
            linalg::axpy(w, &images[row], &mut lx);
        }
        linalg::axpy(-eig.values[col], &x, &mut lx);
        residuals.push(norm(&lx));
        vectors.push(x);
    }
    Ok(Ritz {
        values: eig.values,
        vectors,
        residuals,
    })
}
