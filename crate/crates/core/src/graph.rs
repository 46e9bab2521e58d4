//! Simple undirected graphs stored as a dense 0/1 adjacency matrix.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A simple undirected graph on nodes `0..n`.
///
/// The adjacency matrix is always symmetric with a zero diagonal; every
/// constructor enforces this.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

impl Graph {
    /// The graph on `n` nodes with no links.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("a graph needs at least one node"));
        }
        Ok(Graph {
            n,
            adj: vec![false; n * n],
        })
    }

    /// Builds a graph from unordered node pairs. Duplicates collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (idx, (u, v)) in edges.into_iter().enumerate() {
            if u == v {
                return Err(Error::SelfLoop {
                    line: idx + 1,
                    node: u,
                });
            }
            for id in [u, v] {
                if id >= n {
                    return Err(Error::NodeOutOfRange { line: idx + 1, id, n });
                }
            }
            g.set_link(u, v);
        }
        g.debug_check();
        Ok(g)
    }

    /// Builds a graph from a row-major 0/1 matrix.
    pub fn from_adjacency(n: usize, entries: &[u8]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::invalid(format!(
                "adjacency has {} entries, expected {}",
                entries.len(),
                n * n
            )));
        }
        let mut g = Graph::empty(n)?;
        for i in 0..n {
            for j in 0..n {
                let a = entries[i * n + j];
                if a > 1 {
                    return Err(Error::invalid(format!("entry ({i}, {j}) is {a}, not 0/1")));
                }
                if a != entries[j * n + i] {
                    return Err(Error::invalid(format!("adjacency not symmetric at ({i}, {j})")));
                }
                if i == j && a == 1 {
                    return Err(Error::SelfLoop { line: i + 1, node: i });
                }
                g.adj[i * n + j] = a == 1;
            }
        }
        Ok(g)
    }

    fn set_link(&mut self, u: usize, v: usize) {
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
    }

    fn debug_check(&self) {
        debug_assert!((0..self.n).all(|i| !self.has_link(i, i)));
        debug_assert!((0..self.n).all(|i| (0..self.n).all(|j| self.has_link(i, j) == self.has_link(j, i))));
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn link_count(&self) -> usize {
        self.adj.iter().filter(|&&a| a).count() / 2
    }

    #[inline]
    pub fn has_link(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    /// Adjacency entry `a_uv` as 0 or 1.
    #[inline]
    pub fn entry(&self, u: usize, v: usize) -> u8 {
        self.has_link(u, v) as u8
    }

    /// Neighbours of `u` in ascending order.
    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.adj[u * self.n..(u + 1) * self.n];
        row.iter().enumerate().filter_map(|(v, &a)| a.then_some(v))
    }

    /// Links as `(u, v)` with `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n)
            .flat_map(move |u| ((u + 1)..self.n).filter_map(move |v| self.has_link(u, v).then_some((u, v))))
    }

    /// `d = A u`.
    pub fn degree_vector(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.neighbors(u).count()).collect()
    }

    /// Keeps only links with both endpoints in `keep`. The node count is unchanged.
    pub fn induced_mask(&self, keep: &NodeSubset) -> Result<Graph> {
        if keep.universe() != self.n {
            return Err(Error::invalid(format!(
                "subset over {} nodes applied to a graph on {}",
                keep.universe(),
                self.n
            )));
        }
        let inside = keep.indicator();
        let mut g = self.clone();
        for u in 0..self.n {
            for v in 0..self.n {
                if !(inside[u] && inside[v]) {
                    g.adj[u * self.n + v] = false;
                }
            }
        }
        g.debug_check();
        Ok(g)
    }

    /// Serializes to the edge-list text format with an `n` header.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the edge-list text format.
    ///
    /// Each non-comment line holds two 0-based node ids. A line `n <count>`
    /// fixes the node count; without it the count is one more than the largest
    /// id seen. Lines starting with `#` and blank lines are skipped.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut declared: Option<usize> = None;
        let mut edges: Vec<(usize, usize, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            if tokens[0] == "n" {
                if tokens.len() != 2 || declared.is_some() {
                    return Err(Error::MalformedLine {
                        line,
                        content: trimmed.to_string(),
                    });
                }
                let count = parse_id(tokens[1], line)?;
                if count == 0 {
                    return Err(Error::invalid(format!(
                        "line {line}: node count must be positive"
                    )));
                }
                declared = Some(count);
                continue;
            }
            if tokens.len() != 2 {
                return Err(Error::MalformedLine {
                    line,
                    content: trimmed.to_string(),
                });
            }
            let u = parse_id(tokens[0], line)?;
            let v = parse_id(tokens[1], line)?;
            if u == v {
                return Err(Error::SelfLoop { line, node: u });
            }
            edges.push((line, u, v));
        }

        let n = match declared {
            Some(n) => n,
            None => edges
                .iter()
                .map(|&(_, u, v)| u.max(v) + 1)
                .max()
                .ok_or_else(|| Error::invalid("edge list has neither edges nor an `n` header"))?,
        };
        let mut g = Graph::empty(n)?;
        for (line, u, v) in edges {
            if let Some(id) = [u, v].into_iter().find(|&id| id >= n) {
                return Err(Error::NodeOutOfRange { line, id, n });
            }
            g.set_link(u, v);
        }
        g.debug_check();
        Ok(g)
    }
}

fn parse_id(token: &str, line: usize) -> Result<usize> {
    token.parse::<usize>().map_err(|_| Error::InvalidToken {
        line,
        token: token.to_string(),
    })
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Graph::from_edge_list(s)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Graph(n = {})", self.n)?;
        for u in 0..self.n {
            let row: String = (0..self.n)
                .map(|v| if self.has_link(u, v) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

/// Complete graph `K_n`.
pub fn complete_graph(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in (u + 1)..n {
            g.set_link(u, v);
        }
    }
    Ok(g)
}

/// Cycle `C_n`, `n >= 3`.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid(format!("cycle graph needs n >= 3, got {n}")));
    }
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        g.set_link(u, (u + 1) % n);
    }
    Ok(g)
}

/// Path graph `P_n`: the chain `0 - 1 - ... - (n-1)`.
pub fn path_graph(n: usize) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for u in 1..n {
        g.set_link(u - 1, u);
    }
    Ok(g)
}

/// Erdős–Rényi `G(n, p)`.
///
/// Pairs `(i, j)` with `i < j` are visited in row-major order and each takes
/// the next value `x` of a splitmix64 stream seeded with `seed`. The link is
/// present iff `x / 2^64 < p`, evaluated exactly.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("link probability {p} outside [0, 1]")));
    }
    let threshold = UnitThreshold::new(p);
    let mut rng = SplitMix64::new(seed);
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in (u + 1)..n {
            if threshold.accepts(rng.next_u64()) {
                g.set_link(u, v);
            }
        }
    }
    g.debug_check();
    Ok(g)
}

/// Exact test of `x / 2^64 < p` without rounding `x` to a float.
#[derive(Debug, Clone, Copy)]
struct UnitThreshold {
    // `None` means every draw is accepted (p = 1).
    bound: Option<u64>,
}

impl UnitThreshold {
    fn new(p: f64) -> Self {
        // p * 2^64 is exact in binary floating point.
        let scaled = p * 18_446_744_073_709_551_616.0;
        if scaled >= 18_446_744_073_709_551_616.0 {
            UnitThreshold { bound: None }
        } else {
            // x < scaled  <=>  x < ceil(scaled), and ceil(scaled) < 2^64 here.
            UnitThreshold {
                bound: Some(scaled.ceil() as u64),
            }
        }
    }

    fn accepts(&self, x: u64) -> bool {
        match self.bound {
            None => true,
            Some(b) => x < b,
        }
    }
}

/// The splitmix64 generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// A set of node ids drawn from `0..universe`, kept strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeSubset {
    universe: usize,
    members: Vec<usize>,
}

impl NodeSubset {
    /// Sorts `members`; rejects duplicates and ids outside `0..universe`.
    pub fn new(universe: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        if let Some(&id) = members.iter().find(|&&id| id >= universe) {
            return Err(Error::NodeOutOfRange {
                line: 0,
                id,
                n: universe,
            });
        }
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate node in subset"));
        }
        Ok(NodeSubset { universe, members })
    }

    pub fn all(universe: usize) -> Self {
        NodeSubset {
            universe,
            members: (0..universe).collect(),
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.members.binary_search(&id).is_ok()
    }

    /// The 0/1 vector `sum_z e_{i_z}` as booleans.
    pub fn indicator(&self) -> Vec<bool> {
        let mut v = vec![false; self.universe];
        for &m in &self.members {
            v[m] = true;
        }
        v
    }

    /// All `size`-subsets of `0..universe` in lexicographic order.
    pub fn combinations(universe: usize, size: usize) -> Combinations {
        Combinations {
            universe,
            current: if size <= universe {
                Some((0..size).collect())
            } else {
                None
            },
        }
    }
}

/// Lexicographic iterator over fixed-size subsets.
#[derive(Debug, Clone)]
pub struct Combinations {
    universe: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Combinations {
    type Item = NodeSubset;

    fn next(&mut self) -> Option<NodeSubset> {
        let cur = self.current.take()?;
        let out = NodeSubset {
            universe: self.universe,
            members: cur.clone(),
        };
        let size = cur.len();
        let mut next = cur;
        // Rightmost position that can still advance.
        let mut pos = size;
        while pos > 0 {
            pos -= 1;
            if next[pos] < self.universe - size + pos {
                next[pos] += 1;
                for q in (pos + 1)..size {
                    next[q] = next[q - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_simple(g: &Graph) {
        let n = g.node_count();
        for i in 0..n {
            assert!(!g.has_link(i, i));
            for j in 0..n {
                assert_eq!(g.has_link(i, j), g.has_link(j, i));
            }
        }
    }

    #[test]
    fn parses_header_and_edges() {
        let g = Graph::from_edge_list("n 3\n0 1\n1 2").unwrap();
        assert_eq!(g.node_count(), 3);
        assert!(g.has_link(0, 1) && g.has_link(1, 2));
        assert!(!g.has_link(0, 2));
        assert_simple(&g);
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edge_list("0 1\n0 1").unwrap();
        assert_eq!(g, complete_graph(2).unwrap());
        let g = Graph::from_edge_list("0 1\r\n1 0\r\n").unwrap();
        assert_eq!(g.link_count(), 1);
    }

    #[test]
    fn comments_blank_lines_and_isolated_nodes() {
        let g = Graph::from_edge_list("# header\n\nn 5\n# edge\n3 4\n").unwrap();
        assert_eq!(g.node_count(), 5);
        assert_eq!(g.link_count(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            Graph::from_edge_list("0 0"),
            Err(Error::SelfLoop { line: 1, node: 0 })
        );
        assert!(matches!(
            Graph::from_edge_list("0 1\n1 x"),
            Err(Error::InvalidToken { line: 2, .. })
        ));
        assert!(matches!(
            Graph::from_edge_list("0 -1"),
            Err(Error::InvalidToken { .. })
        ));
        assert_eq!(
            Graph::from_edge_list("n 3\n0 1\n1 3"),
            Err(Error::NodeOutOfRange { line: 3, id: 3, n: 3 })
        );
        assert!(matches!(
            Graph::from_edge_list("0 1 2"),
            Err(Error::MalformedLine { line: 1, .. })
        ));
        assert!(Graph::from_edge_list("# nothing\n").is_err());
        assert!(Graph::from_edge_list("n 0\n").is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = erdos_renyi(9, 0.4, 17).unwrap();
        assert_eq!(Graph::from_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn fixture_generators() {
        let k3 = complete_graph(3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(k3.entry(i, j), (i != j) as u8);
            }
        }
        let c4 = cycle_graph(4).unwrap();
        assert_eq!(
            c4.edges().collect::<Vec<_>>(),
            vec![(0, 1), (0, 3), (1, 2), (2, 3)]
        );
        assert!(cycle_graph(2).is_err());
        let p2 = path_graph(2).unwrap();
        assert_eq!(p2.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        for g in [k3, c4, p2, path_graph(1).unwrap()] {
            assert_simple(&g);
        }
        assert!(complete_graph(0).is_err());
    }

    #[test]
    fn erdos_renyi_extremes_and_determinism() {
        assert_eq!(erdos_renyi(5, 0.0, 3).unwrap().link_count(), 0);
        assert_eq!(erdos_renyi(5, 1.0, 3).unwrap(), complete_graph(5).unwrap());
        assert_eq!(
            erdos_renyi(10, 0.5, 99).unwrap(),
            erdos_renyi(10, 0.5, 99).unwrap()
        );
        assert!(erdos_renyi(5, 1.5, 0).is_err());
        assert!(erdos_renyi(5, -0.1, 0).is_err());
        assert!(erdos_renyi(5, f64::NAN, 0).is_err());
    }

    #[test]
    fn splitmix64_reference_stream() {
        // Reference values for seed 0 from the published splitmix64 generator.
        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(rng.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(rng.next_u64(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn threshold_is_exact_at_the_boundary() {
        let t = UnitThreshold::new(0.5);
        assert!(t.accepts((1u64 << 63) - 1));
        assert!(!t.accepts(1u64 << 63));
        assert!(UnitThreshold::new(1.0).accepts(u64::MAX));
        assert!(!UnitThreshold::new(0.0).accepts(0));
    }

    #[test]
    fn erdos_renyi_mean_edge_count() {
        let seeds = 1000u64;
        let counts: Vec<f64> = (0..seeds)
            .map(|s| erdos_renyi(10, 0.5, s).unwrap().link_count() as f64)
            .collect();
        let mean = counts.iter().sum::<f64>() / seeds as f64;
        // Binomial(45, 0.5): sd = sqrt(45 / 4)
        let se = (45.0f64 * 0.25).sqrt() / (seeds as f64).sqrt();
        assert!((mean - 22.5).abs() < 3.0 * se, "mean {mean}");
    }

    #[test]
    fn degrees() {
        assert_eq!(complete_graph(3).unwrap().degree_vector(), vec![2, 2, 2]);
        assert_eq!(path_graph(3).unwrap().degree_vector(), vec![1, 2, 1]);
        assert_eq!(Graph::empty(4).unwrap().degree_vector(), vec![0; 4]);
        let g = erdos_renyi(12, 0.3, 5).unwrap();
        assert_eq!(g.degree_vector().iter().sum::<usize>(), 2 * g.link_count());
    }

    #[test]
    fn masking() {
        let k3 = complete_graph(3).unwrap();
        let masked = k3.induced_mask(&NodeSubset::new(3, [0, 1]).unwrap()).unwrap();
        assert_eq!(masked, Graph::from_edges(3, [(0, 1)]).unwrap());
        let g = erdos_renyi(8, 0.5, 1).unwrap();
        assert_eq!(g.induced_mask(&NodeSubset::all(8)).unwrap(), g);
        assert_eq!(
            g.induced_mask(&NodeSubset::new(8, [4]).unwrap()).unwrap(),
            Graph::empty(8).unwrap()
        );
        assert!(g.induced_mask(&NodeSubset::all(7)).is_err());
    }

    #[test]
    fn subsets() {
        assert!(NodeSubset::new(3, [0, 3]).is_err());
        assert!(NodeSubset::new(3, [1, 1]).is_err());
        assert_eq!(NodeSubset::new(5, [4, 0, 2]).unwrap().members(), &[0, 2, 4]);
        let all: Vec<Vec<usize>> = NodeSubset::combinations(4, 2)
            .map(|s| s.members().to_vec())
            .collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(NodeSubset::combinations(4, 0).count(), 1);
        assert_eq!(NodeSubset::combinations(4, 4).count(), 1);
        assert_eq!(NodeSubset::combinations(3, 4).count(), 0);
        assert_eq!(NodeSubset::combinations(10, 4).count(), 210);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn mask_is_idempotent(n in 1usize..10, p in 0.0f64..=1.0, seed: u64, bits: u16) {
                let g = erdos_renyi(n, p, seed).unwrap();
                let keep = NodeSubset::new(n, (0..n).filter(|i| bits >> i & 1 == 1)).unwrap();
                let once = g.induced_mask(&keep).unwrap();
                prop_assert_eq!(once.induced_mask(&keep).unwrap(), once.clone());
                for (u, v) in once.edges() {
                    prop_assert!(keep.contains(u) && keep.contains(v));
                }
            }

            #[test]
            fn generated_graphs_are_simple(n in 1usize..16, p in 0.0f64..=1.0, seed: u64) {
                let g = erdos_renyi(n, p, seed).unwrap();
                for i in 0..n {
                    prop_assert!(!g.has_link(i, i));
                    for j in 0..n {
                        prop_assert_eq!(g.has_link(i, j), g.has_link(j, i));
                    }
                }
            }
        }
    }
}
