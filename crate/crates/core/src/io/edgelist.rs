//! Whitespace-separated edge lists.
//!
//! One `u v` pair per line with 0-based ids; `#` starts a comment and blank
//! lines are skipped. The vertex count is the largest id plus one unless a
//! header line `n <count>` is present.

use crate::{Error, Graph, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = std::collections::HashMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "n" {
            if tokens.len() != 2 {
                return Err(err(format!("expected `n <count>`, got `{line}`")));
            }
            if declared.is_some() {
                return Err(err("duplicate vertex-count header".into()));
            }
            let count = tokens[1]
                .parse::<usize>()
                .map_err(|_| err(format!("invalid vertex count `{}`", tokens[1])))?;
            declared = Some((count, line_no));
            continue;
        }
        if tokens.len() != 2 {
            return Err(err(format!("expected two vertex ids, got `{line}`")));
        }
        let parse_id = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| err(format!("invalid vertex id `{t}`")))
        };
        let (u, v) = (parse_id(tokens[0])?, parse_id(tokens[1])?);
        if u == v {
            return Err(err(format!("self-loop ({u}, {v})")));
        }
        let key = (u.min(v), u.max(v));
        if let Some(first) = seen.insert(key, line_no) {
            return Err(err(format!(
                "duplicate edge ({}, {}) first seen at line {first}",
                key.0, key.1
            )));
        }
        edges.push(key);
    }

    let needed = edges.iter().map(|&(_, v)| v + 1).max().unwrap_or(0);
    let n = match declared {
        Some((count, line)) if count < needed => {
            return Err(Error::Parse {
                line,
                message: format!(
                    "header declares {count} vertices but id {} appears",
                    needed - 1
                ),
            })
        }
        Some((count, _)) => count,
        None => needed,
    };
    Graph::from_edges(n, &edges)
}

/// Writes `n <count>` followed by one `u v` line per edge (`u < v`).
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
