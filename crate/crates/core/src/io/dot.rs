//! Graphviz export with vertices colored by Fiedler sign.

use crate::spectral::SignLabel;
use crate::{Error, Graph, Result};

fn color(label: SignLabel) -> &'static str {
    match label {
        SignLabel::Positive => "red",
        SignLabel::Negative => "blue",
        SignLabel::Zero => "gray",
    }
}

/// Undirected DOT graph: red for positive, blue for negative, gray for zero.
/// Nodes are emitted in id order, edges in lexicographic order.
pub fn export_dot(g: &Graph, labels: &[SignLabel]) -> Result<String> {
    if labels.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            actual: labels.len(),
        });
    }
    let mut out = String::from("graph fiedler {\n  node [style=filled, fontcolor=white];\n");
    for (v, &label) in labels.iter().enumerate() {
        out.push_str(&format!("  {v} [fillcolor={}];\n", color(label)));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    Ok(out)
}
