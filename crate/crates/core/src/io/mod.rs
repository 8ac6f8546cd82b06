//! Text formats: edge lists, the rose B-matrix, DOT and JSON reports.

pub mod bmatrix;
pub mod dot;
pub mod edgelist;
pub mod report;

pub use bmatrix::{emit_b_matrix, BMatrix};
pub use dot::export_dot;
pub use edgelist::{parse_edge_list, write_edge_list};
