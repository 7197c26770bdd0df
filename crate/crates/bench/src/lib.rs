//! Graphs shared by the benchmarks.

use pebalg::graphs::{binary_tree, path, pyramid, random, Dag};

/// Search workloads: small enough for every variant, large enough to show
/// the state-space growth.
pub fn search_graphs() -> Vec<(String, Dag)> {
    vec![
        ("path_16".into(), path(16).unwrap()),
        ("pyramid_3".into(), pyramid(3).unwrap()),
        ("binary_tree_3".into(), binary_tree(3).unwrap()),
        ("random_12".into(), random(12, 0.3, 7).unwrap()),
    ]
}

/// Degree workloads, sized so the monomial bases stay in the thousands.
pub fn decide_graphs() -> Vec<(String, Dag)> {
    vec![
        ("path_8".into(), path(8).unwrap()),
        ("pyramid_2".into(), pyramid(2).unwrap()),
        ("binary_tree_2".into(), binary_tree(2).unwrap()),
        ("random_8".into(), random(8, 0.35, 3).unwrap()),
    ]
}
