#![allow(dead_code)]

use pathcount_core::{complete_graph, cycle_graph, erdos_renyi, path_graph, Graph};

pub const DENSITIES: [f64; 3] = [0.3, 0.5, 0.8];

/// `K_n`, `C_n` (n >= 3) and the chain on `n` nodes for `lo <= n <= hi`.
pub fn named_graphs(lo: usize, hi: usize) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in lo..=hi {
        out.push((format!("K{n}"), complete_graph(n).unwrap()));
        if n >= 3 {
            out.push((format!("C{n}"), cycle_graph(n).unwrap()));
        }
        out.push((format!("P{n}"), path_graph(n).unwrap()));
    }
    out
}

/// Seeded `G(n, p)` graphs cycling through `sizes` and [`DENSITIES`].
pub fn random_graphs(count: usize, sizes: &[usize], salt: u64) -> Vec<(String, Graph)> {
    (0..count)
        .map(|i| {
            let n = sizes[i % sizes.len()];
            let p = DENSITIES[(i / sizes.len()) % DENSITIES.len()];
            let seed = salt.wrapping_add(i as u64);
            (
                format!("ER(n={n}, p={p}, seed={seed})"),
                erdos_renyi(n, p, seed).unwrap(),
            )
        })
        .collect()
}

/// The fixture set for cross-method checks: named graphs and random graphs on up to 7 nodes.
pub fn small_fixtures() -> Vec<(String, Graph)> {
    let mut out = named_graphs(2, 7);
    out.extend(random_graphs(60, &[3, 4, 5, 6, 7], 0xF1_0000));
    out
}

#[rustfmt::skip]
pub fn petersen() -> Graph {
    Graph::from_edges(
        10,
        [
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
            (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
        ],
    )
    .unwrap()
}
