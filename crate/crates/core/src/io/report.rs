//! JSON and CSV reports, versioned by the `schema` field.
//!
//! The JSON Schema for every document lives in `schema/fiedler-lab-1.json`
//! at the repository root.

use serde::Serialize;

use crate::conjecture::{ConjectureReport, ScanCell, SearchReport, Verdict};
use crate::distance::{is_connected, is_tree};
use crate::heat::TransientReport;
use crate::spectral::FiedlerResult;
use crate::Graph;

pub const SCHEMA: &str = "fiedler-lab/1";

pub const SCAN_CSV_HEADER: &str = "p,s,leaf_tip,lambda2,gap,verdict,min_extremal_distance,diameter";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphSummary {
    pub source: String,
    pub n: usize,
    pub edge_count: usize,
    pub max_degree: usize,
    pub connected: bool,
    pub is_tree: bool,
}

impl GraphSummary {
    pub fn of(g: &Graph, source: impl Into<String>) -> Self {
        Self {
            source: source.into(),
            n: g.n(),
            edge_count: g.edge_count(),
            max_degree: g.max_degree(),
            connected: is_connected(g),
            is_tree: is_tree(g),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverDiagnostics {
    pub lambda2: f64,
    pub lambda3: Option<f64>,
    pub gap: Option<f64>,
    pub degenerate: bool,
    pub residual: f64,
    pub iterations: usize,
}

impl From<&FiedlerResult> for SolverDiagnostics {
    fn from(r: &FiedlerResult) -> Self {
        Self {
            lambda2: r.lambda2,
            lambda3: r.lambda3(),
            gap: r.gap,
            degenerate: r.degenerate,
            residual: r.residual,
            iterations: r.iterations,
        }
    }
}

/// Output of `rose` and `check`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub graph: GraphSummary,
    pub solver: SolverDiagnostics,
    pub fiedler_vector: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjecture: Option<ConjectureReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_matrix: Option<[Vec<f64>; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub p: usize,
    pub s: usize,
    pub leaf_tip: Option<f64>,
    pub lambda2: Option<f64>,
    pub gap: Option<f64>,
    pub verdict: Option<Verdict>,
    pub min_extremal_distance: Option<usize>,
    pub diameter: Option<usize>,
    pub error: Option<String>,
}

impl From<&ScanCell> for ScanRow {
    fn from(cell: &ScanCell) -> Self {
        match &cell.result {
            Ok(m) => Self {
                p: cell.p,
                s: cell.s,
                leaf_tip: Some(m.leaf_tip_value),
                lambda2: Some(m.lambda2),
                gap: m.gap,
                verdict: Some(m.verdict),
                min_extremal_distance: m.extremal_pair_distance_min,
                diameter: Some(m.diameter),
                error: None,
            },
            Err(e) => Self {
                p: cell.p,
                s: cell.s,
                leaf_tip: None,
                lambda2: None,
                gap: None,
                verdict: None,
                min_extremal_distance: None,
                diameter: None,
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub cells: Vec<ScanRow>,
}

impl ScanReport {
    pub fn new(cells: &[ScanCell]) -> Self {
        Self {
            schema: SCHEMA,
            command: "scan",
            cells: cells.iter().map(ScanRow::from).collect(),
        }
    }
}

/// One row per cell; failed cells carry `ERROR` in the verdict column.
pub fn scan_csv(cells: &[ScanCell]) -> String {
    fn opt<T: ToString>(x: Option<T>) -> String {
        x.map(|v| v.to_string()).unwrap_or_default()
    }
    let mut out = String::from(SCAN_CSV_HEADER);
    out.push('\n');
    for row in cells.iter().map(ScanRow::from) {
        let verdict = match (&row.verdict, &row.error) {
            (Some(v), _) => v.to_string(),
            (None, _) => "ERROR".to_string(),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.p,
            row.s,
            opt(row.leaf_tip),
            opt(row.lambda2),
            opt(row.gap),
            verdict,
            opt(row.min_extremal_distance),
            opt(row.diameter),
        ));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchEnvelope<'a> {
    pub schema: &'static str,
    pub command: &'static str,
    #[serde(flatten)]
    pub report: &'a SearchReport,
}

impl<'a> SearchEnvelope<'a> {
    pub fn new(report: &'a SearchReport) -> Self {
        Self {
            schema: SCHEMA,
            command: "search",
            report,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeatReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub graph: GraphSummary,
    pub t: f64,
    pub dt: f64,
    pub u0: Vec<f64>,
    pub spectral: Vec<f64>,
    pub rk4: Vec<f64>,
    pub max_abs_difference: f64,
    pub mass_initial: f64,
    pub mass_spectral: f64,
    pub mass_rk4: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transient: Option<TransientReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transient_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub graph: GraphSummary,
    pub eigenvalues: Vec<f64>,
    pub algebraic_connectivity: f64,
    pub max_residual: f64,
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjecture::scan_rose_family;

    #[test]
    fn csv_has_header_and_rows() {
        let cells = scan_rose_family(0..=2, 5..=5);
        let csv = scan_csv(&cells);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], SCAN_CSV_HEADER);
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("0,5,,,,ERROR"));
        assert_eq!(lines[2].split(',').count(), 8);
    }

    #[test]
    fn scan_json_carries_schema() {
        let cells = scan_rose_family(3..=3, 5..=5);
        let json: serde_json::Value =
            serde_json::from_str(&to_json(&ScanReport::new(&cells))).unwrap();
        assert_eq!(json["schema"], SCHEMA);
        assert_eq!(json["cells"][0]["verdict"], "HOLDS");
    }
}
