//! Spectral graph laboratory built around the graph Laplacian `L = D - A`.
//!
//! The crate covers four layers:
//!
//! - [`graph`] and [`distance`]: immutable simple graphs, deterministic
//!   generators (including the "Fiedler rose" tree family) and BFS metrics.
//! - [`spectral`]: Laplacian operator, a dense reference eigensolver and an
//!   iterative Fiedler solver with sign anchoring and degeneracy detection.
//! - [`heat`]: the discrete heat equation `du/dt = -L u`, solved both by
//!   spectral expansion and by fixed-step RK4.
//! - [`conjecture`]: the "Fiedler extremes sit on a diameter pair" predicate
//!   for trees, rose-family scans and seeded random-tree searches.
//!
//! [`io`] holds the text formats: edge lists, DOT, the two-row B-matrix
//! layout for roses and versioned JSON reports.

pub mod conjecture;
pub mod distance;
mod error;
pub mod graph;
pub mod heat;
pub mod io;
pub mod linalg;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Graph, RoseParams};
