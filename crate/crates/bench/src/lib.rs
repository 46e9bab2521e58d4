//! Fixed benchmark inputs shared by the criterion suites.

use pathcount_core::{erdos_renyi, Graph};

/// Seeded `G(n, p)` graphs used across all method benchmarks.
pub fn fixture(n: usize, p: f64) -> Graph {
    erdos_renyi(n, p, 0x5EED_0000 + n as u64).expect("valid density")
}

/// `(label, graph)` pairs spanning sparse to dense inputs.
pub fn fixtures() -> Vec<(String, Graph)> {
    [(7, 0.5), (8, 0.5), (8, 0.8)]
        .into_iter()
        .map(|(n, p)| (format!("er_n{n}_p{p}"), fixture(n, p)))
        .collect()
}
