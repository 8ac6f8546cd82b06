//! Two-row display of a rose's Fiedler vector.
//!
//! Row 1 lists the leaf and stem path from the leaf tip to the stem tip.
//! Row 2 is zero except for the petal value in column 3 and the hub value in
//! column 4 (1-based), so the grid keeps the rough shape of the rose.

use crate::graph::RoseParams;
use crate::spectral::{apply_anchor, FiedlerResult, SignAnchor};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct BMatrix {
    pub rows: [Vec<f64>; 2],
}

impl BMatrix {
    /// Builds the grid from a Fiedler vector of `build_rose(params)`,
    /// re-orienting it so the hub entry is nonnegative.
    pub fn from_fiedler(params: RoseParams, result: &FiedlerResult) -> Result<Self> {
        if result.vector.len() != params.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: params.vertex_count(),
                actual: result.vector.len(),
            });
        }
        let mut v = result.vector.clone();
        apply_anchor(&mut v, SignAnchor::Vertex(params.hub()));
        let top: Vec<f64> = params.path_vertices().map(|i| v[i]).collect();
        let mut bottom = vec![0.0; top.len()];
        bottom[3] = v[params.hub()];
        bottom[2] = v[params.petal_range().start];
        Ok(Self {
            rows: [top, bottom],
        })
    }

    pub fn width(&self) -> usize {
        self.rows[0].len()
    }

    pub fn hub(&self) -> f64 {
        self.rows[1][3]
    }

    pub fn petal(&self) -> f64 {
        self.rows[1][2]
    }

    /// Right-aligned columns, four decimals, exact zeros as `0`.
    pub fn to_text(&self) -> String {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| format!("{:>10}", format_entry(x)))
                    .collect::<String>()
                    + "\n"
            })
            .collect()
    }
}

fn format_entry(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:.4}")
    }
}

pub fn emit_b_matrix(params: RoseParams, result: &FiedlerResult) -> Result<String> {
    Ok(BMatrix::from_fiedler(params, result)?.to_text())
}

/// Reads the numbers back from [`BMatrix::to_text`] output.
pub fn parse_b_matrix(text: &str) -> Result<Vec<Vec<f64>>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.split_whitespace()
                .map(|t| {
                    t.parse::<f64>().map_err(|_| Error::Parse {
                        line: i + 1,
                        message: format!("invalid number `{t}`"),
                    })
                })
                .collect()
        })
        .collect()
}
