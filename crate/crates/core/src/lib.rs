//! Exact counting of paths in simple undirected graphs.
//!
//! The path matrix `P_k` holds, at `(i, j)`, the number of paths with `k`
//! links from node `i` to node `j`. This crate computes it several
//! independent ways:
//!
//! * closed forms in powers of the adjacency matrix for `k <= 4`
//!   ([`closed_form`]),
//! * inclusion–exclusion over `(k + 1)`-node subsets, with the Hamiltonian
//!   case `k = N - 1` as a special instance ([`subset_ie`]),
//! * summing over labeled sequences of distinct nodes and recursive
//!   enumeration by link deletion ([`sequences`]),
//! * brute-force filtering of all walks ([`oracle`]).
//!
//! All counts are exact arbitrary-precision integers.

pub mod analysis;
pub mod closed_form;
pub mod error;
pub mod graph;
pub mod matrix;
pub mod oracle;
pub mod sequences;
pub mod subset_ie;
pub mod walks;

pub use closed_form::{
    closed_form_path_matrix, first_term_identity, path_matrix_p1, path_matrix_p2, path_matrix_p3,
    path_matrix_p4, recursion_residual_f,
};
pub use error::{Error, Result};
pub use graph::{complete_graph, cycle_graph, erdos_renyi, path_graph, Graph, NodeSubset};
pub use matrix::{CountMatrix, SignedCountMatrix};
pub use oracle::{brute_force_path_matrix, brute_force_walk_matrix, WalkFilter};
pub use sequences::{
    all_path_matrices, enumerate_paths, path_matrix_labeled, path_matrix_recursive, total_path_count,
    PathMatrixFamily, PathSequence,
};
pub use subset_ie::{hamiltonian_path_matrix, path_matrix_ie, subset_ie_term};
pub use walks::{
    avoiding_walk_matrix, closed_walk_matrix, exactly_once_walk_matrix, matrix_power, repeating_walk_matrix,
};
