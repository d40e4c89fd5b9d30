//! Weighted graphs and their graph-state preparation circuits.

mod general;
mod grid;
mod io;
mod separator;
mod tree;
mod types;

pub use general::prepare_general;
pub use grid::{plan_grid, prepare_grid, Fold, GridPlan};
pub use io::{emit_graph, emit_grid, parse_graph, parse_grid, parse_tree, parse_weight};
pub use separator::{centroid, components_without, tree_separator};
pub use tree::{naive_cnot_stage, prepare_tree, subtree_sum_circuit};
pub use types::{Edge, GridGraph, TreeGraph, WeightedGraph};
