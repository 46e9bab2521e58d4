//! Counting and listing paths one node sequence at a time.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::CountMatrix;

/// Largest walk-based upper bound on the number of paths that the
/// sequence-by-sequence methods will attempt.
pub const PATH_ENUMERATION_LIMIT: u64 = 100_000_000;

/// A path as its ordered node sequence `n_0, ..., n_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathSequence {
    nodes: Vec<usize>,
}

impl PathSequence {
    /// Checks that the nodes are distinct and consecutive nodes are linked in `g`.
    pub fn new(g: &Graph, nodes: Vec<usize>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::invalid("a path needs at least one hop"));
        }
        let n = g.node_count();
        if let Some(&id) = nodes.iter().find(|&&id| id >= n) {
            return Err(Error::invalid(format!("node {id} out of range for n = {n}")));
        }
        let mut seen = vec![false; n];
        for &id in &nodes {
            if std::mem::replace(&mut seen[id], true) {
                return Err(Error::invalid(format!("node {id} repeats")));
            }
        }
        if let Some(w) = nodes.windows(2).find(|w| !g.has_link(w[0], w[1])) {
            return Err(Error::invalid(format!("no link between {} and {}", w[0], w[1])));
        }
        Ok(PathSequence { nodes })
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn hops(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn source(&self) -> usize {
        self.nodes[0]
    }

    pub fn destination(&self) -> usize {
        self.nodes[self.nodes.len() - 1]
    }

    pub fn reversed(&self) -> PathSequence {
        PathSequence {
            nodes: self.nodes.iter().rev().copied().collect(),
        }
    }
}

/// One line of the path stream format: node ids separated by single spaces.
impl fmt::Display for PathSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, id) in self.nodes.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{id}")?;
        }
        Ok(())
    }
}

/// Sum of `u^T A^j u` for `j = 1..=k_max`, an upper bound on the number of
/// paths with at most `k_max` hops.
pub fn walk_upper_bound(g: &Graph, k_max: usize) -> BigUint {
    let n = g.node_count();
    let mut v = vec![BigUint::from(1u8); n];
    let mut total = BigUint::zero();
    for _ in 0..k_max {
        v = (0..n).map(|u| g.neighbors(u).map(|w| &v[w]).sum()).collect();
        total += v.iter().sum::<BigUint>();
    }
    total
}

fn enumeration_guard(g: &Graph, k_max: usize) -> Result<()> {
    let bound = walk_upper_bound(g, k_max);
    if bound > BigUint::from(PATH_ENUMERATION_LIMIT) {
        return Err(Error::GuardExceeded {
            estimate: bound.to_string(),
            limit: PATH_ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

fn check_hopcount(g: &Graph, k: usize) -> Result<()> {
    let n = g.node_count();
    if k == 0 || k >= n {
        return Err(Error::invalid(format!(
            "hopcount {k} outside 1..={}",
            n.saturating_sub(1)
        )));
    }
    Ok(())
}

/// `P_k` as the sum over labeled sequences of distinct nodes of
/// `Π_z (e_{i_{z-1}} e_{i_z}^T) ∘ A`.
///
/// A product is nonzero only when every consecutive pair is linked, so the
/// sequences are grown depth first and a prefix is dropped as soon as it hits
/// a missing link.
pub fn path_matrix_labeled(g: &Graph, k: usize) -> Result<CountMatrix> {
    check_hopcount(g, k)?;
    enumeration_guard(g, k)?;
    let n = g.node_count();
    let adjacency: Vec<Vec<usize>> = (0..n).map(|u| g.neighbors(u).collect()).collect();
    let rows: Vec<Vec<u64>> = (0..n)
        .into_par_iter()
        .map(|s| {
            let mut row = vec![0u64; n];
            let mut used = vec![false; n];
            used[s] = true;
            extend_labeled(&adjacency, s, k, &mut used, &mut row);
            row
        })
        .collect();
    Ok(CountMatrix::from_u64_rows(&rows))
}

fn extend_labeled(adjacency: &[Vec<usize>], last: usize, left: usize, used: &mut [bool], row: &mut [u64]) {
    for &next in &adjacency[last] {
        if used[next] {
            continue;
        }
        if left == 1 {
            row[next] += 1;
        } else {
            used[next] = true;
            extend_labeled(adjacency, next, left - 1, used, row);
            used[next] = false;
        }
    }
}

/// The labeled-sequence sum evaluated literally: every ordered selection of
/// `k + 1` distinct nodes contributes the matrix product of its `k` rank-one
/// masked factors, zero or not. Cost grows like `N!/(N-k-1)! · k N^3`.
pub fn path_matrix_labeled_literal(g: &Graph, k: usize) -> Result<CountMatrix> {
    check_hopcount(g, k)?;
    let n = g.node_count();
    let a = CountMatrix::adjacency(g);
    let factor = |x: usize, y: usize| {
        CountMatrix::from_fn(n, |i, j| {
            if i == x && j == y {
                a.get(i, j).clone()
            } else {
                BigUint::zero()
            }
        })
    };
    let mut total = CountMatrix::zeros(n);
    let mut seq = Vec::with_capacity(k + 1);
    let mut used = vec![false; n];
    literal_sequences(n, k + 1, &mut seq, &mut used, &mut |s: &[usize]| {
        let mut prod = factor(s[0], s[1]);
        for z in 2..=k {
            prod = &prod * &factor(s[z - 1], s[z]);
        }
        total += &prod;
    });
    Ok(total)
}

fn literal_sequences(
    n: usize,
    len: usize,
    seq: &mut Vec<usize>,
    used: &mut [bool],
    visit: &mut impl FnMut(&[usize]),
) {
    if seq.len() == len {
        visit(seq);
        return;
    }
    for x in 0..n {
        if !used[x] {
            used[x] = true;
            seq.push(x);
            literal_sequences(n, len, seq, used, visit);
            seq.pop();
            used[x] = false;
        }
    }
}

/// Path matrices `P_1, ..., P_{N-1}` of one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathMatrixFamily {
    n: usize,
    matrices: Vec<CountMatrix>,
}

impl PathMatrixFamily {
    pub fn node_count(&self) -> usize {
        self.n
    }

    /// `P_k` for `1 <= k <= N - 1`.
    pub fn get(&self, k: usize) -> Option<&CountMatrix> {
        k.checked_sub(1).and_then(|idx| self.matrices.get(idx))
    }

    pub fn max_hops(&self) -> usize {
        self.matrices.len()
    }

    /// `(k, P_k)` in increasing `k`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &CountMatrix)> {
        self.matrices.iter().enumerate().map(|(i, m)| (i + 1, m))
    }

    /// `½ Σ_k u^T P_k u`.
    pub fn total_paths(&self) -> BigUint {
        self.matrices.iter().map(CountMatrix::total).sum::<BigUint>() / 2u32
    }

    /// `{"n": int, "P": {"1": rows, ..., "n-1": rows}}`.
    pub fn to_json_value(&self) -> Value {
        let mut by_k = Map::new();
        for (k, m) in self.iter() {
            by_k.insert(k.to_string(), m.to_json_value()["rows"].clone());
        }
        json!({ "n": self.n, "P": by_k })
    }
}

/// Adjacency rows as bitsets so that a node's links can be cut and restored
/// word by word.
#[derive(Clone)]
struct WorkingLinks {
    words: usize,
    bits: Vec<u64>,
}

impl WorkingLinks {
    fn new(g: &Graph) -> Self {
        let n = g.node_count();
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        for (u, v) in g.edges() {
            bits[u * words + v / 64] |= 1 << (v % 64);
            bits[v * words + u / 64] |= 1 << (u % 64);
        }
        WorkingLinks { words, bits }
    }

    fn neighbors(&self, u: usize) -> Vec<usize> {
        let row = &self.bits[u * self.words..(u + 1) * self.words];
        let mut out = Vec::new();
        for (w, &word) in row.iter().enumerate() {
            let mut rest = word;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                out.push(w * 64 + b);
                rest &= rest - 1;
            }
        }
        out
    }

    fn cut(&mut self, u: usize, nbrs: &[usize]) {
        for &v in nbrs {
            self.bits[u * self.words + v / 64] &= !(1 << (v % 64));
            self.bits[v * self.words + u / 64] &= !(1 << (u % 64));
        }
    }

    fn restore(&mut self, u: usize, nbrs: &[usize]) {
        for &v in nbrs {
            self.bits[u * self.words + v / 64] |= 1 << (v % 64);
            self.bits[v * self.words + u / 64] |= 1 << (u % 64);
        }
    }
}

/// Per-source table: `counts[(h - 1) * n + m]` is the number of `h`-hop paths
/// from the source to `m`.
struct NodePathTable {
    n: usize,
    counts: Vec<u64>,
}

impl NodePathTable {
    fn new(n: usize) -> Self {
        NodePathTable {
            n,
            counts: vec![0; n.saturating_sub(1) * n],
        }
    }

    fn bump(&mut self, hops: usize, m: usize) {
        self.counts[(hops - 1) * self.n + m] += 1;
    }

    fn row(&self, hops: usize) -> &[u64] {
        &self.counts[(hops - 1) * self.n..hops * self.n]
    }
}

/// Extends the path ending at `end` (already `hops` long) by every remaining
/// link of `end`. All links of nodes already on the path have been cut from
/// `links`, so each neighbour found is a valid extension.
fn compute_paths(
    table: &mut NodePathTable,
    links: &mut WorkingLinks,
    end: usize,
    hops: usize,
    max_hops: usize,
) {
    let hops = hops + 1;
    let nbrs = links.neighbors(end);
    for &j in &nbrs {
        table.bump(hops, j);
    }
    links.cut(end, &nbrs);
    if !nbrs.is_empty() && hops < max_hops {
        for &j in &nbrs {
            compute_paths(table, links, j, hops, max_hops);
        }
    }
    links.restore(end, &nbrs);
}

/// All path matrices `P_1 .. P_{N-1}` by recursive extension from every source.
///
/// Refuses to run when `Σ_k u^T A^k u` exceeds [`PATH_ENUMERATION_LIMIT`].
pub fn all_path_matrices(g: &Graph) -> Result<PathMatrixFamily> {
    let n = g.node_count();
    let max_hops = n - 1;
    enumeration_guard(g, max_hops)?;
    let base = WorkingLinks::new(g);
    let tables: Vec<NodePathTable> = (0..n)
        .into_par_iter()
        .map(|source| {
            let mut table = NodePathTable::new(n);
            if max_hops > 0 {
                let mut links = base.clone();
                compute_paths(&mut table, &mut links, source, 0, max_hops);
            }
            table
        })
        .collect();
    let matrices = (1..=max_hops)
        .map(|k| {
            let rows: Vec<Vec<u64>> = tables.iter().map(|t| t.row(k).to_vec()).collect();
            CountMatrix::from_u64_rows(&rows)
        })
        .collect();
    Ok(PathMatrixFamily { n, matrices })
}

/// `P_k` taken from [`all_path_matrices`].
pub fn path_matrix_recursive(g: &Graph, k: usize) -> Result<CountMatrix> {
    check_hopcount(g, k)?;
    Ok(all_path_matrices(g)?
        .get(k)
        .expect("k checked against n - 1")
        .clone())
}

/// Number of unordered paths of every length, `½ Σ_{k=1}^{N-1} u^T P_k u`.
pub fn total_path_count(g: &Graph) -> Result<BigUint> {
    Ok(all_path_matrices(g)?.total_paths())
}

/// Streams every path with `min_hops <= hops <= max_hops` in depth-first
/// order: sources ascending, neighbours ascending, each path emitted when it
/// is first reached. Each undirected path appears once per direction.
pub fn enumerate_paths(
    g: &Graph,
    min_hops: usize,
    max_hops: usize,
    limit: Option<usize>,
) -> Result<PathStream> {
    let n = g.node_count();
    if min_hops == 0 || min_hops > max_hops || max_hops >= n {
        return Err(Error::invalid(format!(
            "need 1 <= min_hops <= max_hops <= {}, got {min_hops}..{max_hops}",
            n.saturating_sub(1)
        )));
    }
    Ok(PathStream {
        adjacency: (0..n).map(|u| g.neighbors(u).collect()).collect(),
        min_hops,
        max_hops,
        remaining: limit,
        next_source: 0,
        path: Vec::new(),
        cursor: Vec::new(),
        on_path: vec![false; n],
    })
}

/// Iterator returned by [`enumerate_paths`].
pub struct PathStream {
    adjacency: Vec<Vec<usize>>,
    min_hops: usize,
    max_hops: usize,
    remaining: Option<usize>,
    next_source: usize,
    path: Vec<usize>,
    // cursor[d] indexes the next neighbour of path[d] to try.
    cursor: Vec<usize>,
    on_path: Vec<bool>,
}

impl Iterator for PathStream {
    type Item = PathSequence;

    fn next(&mut self) -> Option<PathSequence> {
        if self.remaining == Some(0) {
            return None;
        }
        loop {
            let Some(&end) = self.path.last() else {
                if self.next_source >= self.adjacency.len() {
                    return None;
                }
                let s = self.next_source;
                self.next_source += 1;
                self.path.push(s);
                self.cursor.push(0);
                self.on_path[s] = true;
                continue;
            };
            let depth = self.path.len() - 1;
            let mut advanced = None;
            if depth < self.max_hops {
                let nbrs = &self.adjacency[end];
                while self.cursor[depth] < nbrs.len() {
                    let cand = nbrs[self.cursor[depth]];
                    self.cursor[depth] += 1;
                    if !self.on_path[cand] {
                        advanced = Some(cand);
                        break;
                    }
                }
            }
            match advanced {
                Some(next) => {
                    self.path.push(next);
                    self.cursor.push(0);
                    self.on_path[next] = true;
                    if depth + 1 >= self.min_hops {
                        if let Some(r) = self.remaining.as_mut() {
                            *r -= 1;
                        }
                        return Some(PathSequence {
                            nodes: self.path.clone(),
                        });
                    }
                }
                None => {
                    self.on_path[end] = false;
                    self.path.pop();
                    self.cursor.pop();
                }
            }
        }
    }
}
