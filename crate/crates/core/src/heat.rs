//! Discrete heat flow `du/dt = -L u`.
//!
//! [`heat_solve_spectral`] evaluates the exact modal expansion
//! `u(t) = Σᵢ (u₀, eᵢ) e^{-λᵢ t} eᵢ`; [`heat_solve_rk4`] integrates the ODE
//! directly and serves as an independent check on it.

use serde::Serialize;

use crate::distance::is_connected;
use crate::linalg::{self, dot};
use crate::spectral::{full_spectrum, is_degenerate_gap, laplacian, Spectrum, DEFAULT_TOL};
use crate::{Error, Graph, Result};

/// Ratio of the neglected modes to the `λ₂` mode at the analysis time.
pub const TRANSIENT_RATIO: f64 = 1e-8;

/// Minimum `|⟨u₀, e₂⟩|` for the long-time approximation to apply.
pub const MIN_FIEDLER_PROJECTION: f64 = 1e-9;

/// Relative tolerance used to group vertices tied at an extreme value.
pub const EXTREME_TIE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeatState {
    pub t: f64,
    pub u: Vec<f64>,
}

impl HeatState {
    pub fn mass(&self) -> f64 {
        self.u.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeatTrajectory {
    pub samples: Vec<HeatState>,
}

/// Dirichlet energy `uᵀ L u`.
pub fn energy(g: &Graph, u: &[f64]) -> f64 {
    laplacian(g).quadratic_form(u)
}

fn check_initial(g: &Graph, u0: &[f64], t: f64) -> Result<()> {
    if u0.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            actual: u0.len(),
        });
    }
    if u0.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter(
            "initial state must be finite".into(),
        ));
    }
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "time must be finite and >= 0, got {t}"
        )));
    }
    Ok(())
}

/// Spectral heat solver holding one eigendecomposition for repeated queries.
#[derive(Debug, Clone)]
pub struct SpectralHeat {
    spectrum: Spectrum,
}

impl SpectralHeat {
    pub fn new(g: &Graph) -> Result<Self> {
        Ok(Self {
            spectrum: full_spectrum(g, DEFAULT_TOL)?,
        })
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// Modal coefficients `(u₀, eᵢ)`.
    pub fn coefficients(&self, u0: &[f64]) -> Vec<f64> {
        self.spectrum
            .eigenvectors
            .iter()
            .map(|e| dot(u0, e))
            .collect()
    }

    pub fn solve(&self, u0: &[f64], t: f64) -> Result<HeatState> {
        if u0.len() != self.spectrum.n() {
            return Err(Error::DimensionMismatch {
                expected: self.spectrum.n(),
                actual: u0.len(),
            });
        }
        if t == 0.0 {
            return Ok(HeatState { t, u: u0.to_vec() });
        }
        let coeffs = self.coefficients(u0);
        let mut u = vec![0.0; u0.len()];
        for ((c, &lambda), e) in coeffs
            .iter()
            .zip(&self.spectrum.eigenvalues)
            .zip(&self.spectrum.eigenvectors)
        {
            // λ₁ may come out as a tiny negative number; it is zero.
            let decay = (-lambda.max(0.0) * t).exp();
            linalg::axpy(c * decay, e, &mut u);
        }
        Ok(HeatState { t, u })
    }
}

pub fn heat_solve_spectral(g: &Graph, u0: &[f64], t: f64) -> Result<HeatState> {
    check_initial(g, u0, t)?;
    SpectralHeat::new(g)?.solve(u0, t)
}

/// Largest step accepted by [`heat_solve_rk4`], or `None` for edgeless graphs.
pub fn rk4_step_bound(g: &Graph) -> Option<f64> {
    match g.max_degree() {
        0 => None,
        d => Some(0.1 / d as f64),
    }
}

/// Classical fixed-step RK4; the final step is shortened to land on `t`.
pub fn heat_solve_rk4(g: &Graph, u0: &[f64], t: f64, dt: f64) -> Result<HeatState> {
    check_initial(g, u0, t)?;
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "step must be positive, got {dt}"
        )));
    }
    if let Some(bound) = rk4_step_bound(g) {
        if dt > bound {
            return Err(Error::StepTooLarge { dt, bound });
        }
    }
    let lap = laplacian(g);
    let n = g.n();
    let mut u = u0.to_vec();
    let mut k = [vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    let mut stage = vec![0.0; n];

    let mut step = |u: &mut Vec<f64>, h: f64| {
        // k = -L(u + c k_prev)
        lap.apply_into(u, &mut k[0]);
        for (s, (ui, ki)) in stage.iter_mut().zip(u.iter().zip(&k[0])) {
            *s = ui - 0.5 * h * ki;
        }
        lap.apply_into(&stage, &mut k[1]);
        for (s, (ui, ki)) in stage.iter_mut().zip(u.iter().zip(&k[1])) {
            *s = ui - 0.5 * h * ki;
        }
        lap.apply_into(&stage, &mut k[2]);
        for (s, (ui, ki)) in stage.iter_mut().zip(u.iter().zip(&k[2])) {
            *s = ui - h * ki;
        }
        lap.apply_into(&stage, &mut k[3]);
        for i in 0..u.len() {
            u[i] -= h / 6.0 * (k[0][i] + 2.0 * k[1][i] + 2.0 * k[2][i] + k[3][i]);
        }
    };

    let full_steps = (t / dt).floor() as usize;
    for _ in 0..full_steps {
        step(&mut u, dt);
    }
    let remainder = t - full_steps as f64 * dt;
    if remainder > 0.0 {
        step(&mut u, remainder);
    }
    Ok(HeatState { t, u })
}

/// Spectral solution sampled at the given strictly increasing times.
pub fn heat_trajectory(g: &Graph, u0: &[f64], times: &[f64]) -> Result<HeatTrajectory> {
    check_initial(g, u0, 0.0)?;
    if times.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(
            "sample times must be strictly increasing".into(),
        ));
    }
    let solver = SpectralHeat::new(g)?;
    let samples = times
        .iter()
        .map(|&t| {
            check_initial(g, u0, t)?;
            solver.solve(u0, t)
        })
        .collect::<Result<_>>()?;
    Ok(HeatTrajectory { samples })
}

/// Comparison between the extremes of `u(t*)` and those of the Fiedler
/// vector, oriented so that it points along `⟨u₀, e₂⟩ e₂`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransientReport {
    pub t_star: f64,
    pub lambda2: f64,
    pub gap: Option<f64>,
    pub fiedler_projection: f64,
    pub hot_vertices: Vec<usize>,
    pub cold_vertices: Vec<usize>,
    pub fiedler_hot: Vec<usize>,
    pub fiedler_cold: Vec<usize>,
    pub matched: bool,
    pub state: HeatState,
}

/// Picks `t*` where the modes above `λ₂` are at most [`TRANSIENT_RATIO`]
/// of the `λ₂` mode, using the bound
/// `Σ_{i≥3} |cᵢ| e^{-(λᵢ-λ₂)t} ≤ (Σ_{i≥3} |cᵢ|) e^{-(λ₃-λ₂)t}`,
/// then compares the extreme vertices of `u(t*)` with those of `±e₂`.
pub fn transient_extremes(g: &Graph, u0: &[f64]) -> Result<TransientReport> {
    check_initial(g, u0, 0.0)?;
    if g.n() < 2 {
        return Err(Error::InvalidParameter("need at least two vertices".into()));
    }
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let solver = SpectralHeat::new(g)?;
    let spectrum = solver.spectrum();
    let lambda = &spectrum.eigenvalues;
    let lambda2 = lambda[1];
    let gap = lambda.get(2).map(|l3| l3 - lambda2);
    if let Some(gap) = gap {
        if is_degenerate_gap(lambda2, gap) {
            return Err(Error::Degenerate { gap });
        }
    }
    let coeffs = solver.coefficients(u0);
    let c2 = coeffs[1];
    if c2.abs() <= MIN_FIEDLER_PROJECTION {
        return Err(Error::OrthogonalInitialState(c2.abs()));
    }
    let tail: f64 = coeffs[2..].iter().map(|c| c.abs()).sum();
    let t_star = match gap {
        Some(gap) if tail > 0.0 => ((tail / (TRANSIENT_RATIO * c2.abs())).ln() / gap).max(0.0),
        _ => 0.0,
    };

    // u(t*) - mean, rescaled by e^{λ₂ t*}; same ordering as u(t*) itself
    let mut transient = vec![0.0; g.n()];
    for i in 1..g.n() {
        let decay = (-(lambda[i] - lambda2) * t_star).exp();
        linalg::axpy(coeffs[i] * decay, &spectrum.eigenvectors[i], &mut transient);
    }
    let oriented: Vec<f64> = spectrum.eigenvectors[1]
        .iter()
        .map(|x| x * c2.signum())
        .collect();

    let (hot_vertices, cold_vertices) = extreme_sets(&transient, EXTREME_TIE_TOL);
    let (fiedler_hot, fiedler_cold) = extreme_sets(&oriented, EXTREME_TIE_TOL);
    let matched = hot_vertices == fiedler_hot && cold_vertices == fiedler_cold;
    Ok(TransientReport {
        t_star,
        lambda2,
        gap,
        fiedler_projection: c2,
        hot_vertices,
        cold_vertices,
        fiedler_hot,
        fiedler_cold,
        matched,
        state: solver.solve(u0, t_star)?,
    })
}

/// Vertices within `rel_tol · (max - min)` of the maximum and of the minimum.
pub fn extreme_sets(values: &[f64], rel_tol: f64) -> (Vec<usize>, Vec<usize>) {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let slack = rel_tol * (max - min);
    let top = (0..values.len())
        .filter(|&v| values[v] >= max - slack)
        .collect();
    let bottom = (0..values.len())
        .filter(|&v| values[v] <= min + slack)
        .collect();
    (top, bottom)
}
