//! Brute-force walk enumeration used as an independent reference.
//!
//! Every walk of the requested length is generated by depth-first extension
//! along the adjacency lists and tested against a predicate on its full node
//! sequence. Nothing here uses matrix algebra.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::CountMatrix;

/// Largest number of candidate node sequences the oracle will walk through.
pub const ORACLE_SEQUENCE_LIMIT: u64 = 100_000_000;

/// Predicate applied to the node sequence `n_0, ..., n_k` of each walk.
#[derive(Clone, Copy)]
pub enum WalkFilter<'a> {
    All,
    /// `n_i == n_j`.
    PositionsEqual(usize, usize),
    /// Node appears exactly once.
    NodeExactlyOnce(usize),
    /// Node appears two or more times.
    NodeAtLeastTwice(usize),
    /// Node does not appear.
    NodeAbsent(usize),
    /// All nodes distinct, i.e. the walk is a path.
    AllDistinct,
    /// Some node appears more than once.
    HasRepeat,
    Custom(&'a dyn Fn(&[usize]) -> bool),
}

impl std::fmt::Debug for WalkFilter<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WalkFilter::All => write!(f, "All"),
            WalkFilter::PositionsEqual(i, j) => write!(f, "PositionsEqual({i}, {j})"),
            WalkFilter::NodeExactlyOnce(v) => write!(f, "NodeExactlyOnce({v})"),
            WalkFilter::NodeAtLeastTwice(v) => write!(f, "NodeAtLeastTwice({v})"),
            WalkFilter::NodeAbsent(v) => write!(f, "NodeAbsent({v})"),
            WalkFilter::AllDistinct => write!(f, "AllDistinct"),
            WalkFilter::HasRepeat => write!(f, "HasRepeat"),
            WalkFilter::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

impl WalkFilter<'_> {
    pub fn matches(&self, walk: &[usize]) -> bool {
        let occurrences = |v: usize| walk.iter().filter(|&&x| x == v).count();
        match *self {
            WalkFilter::All => true,
            WalkFilter::PositionsEqual(i, j) => walk[i] == walk[j],
            WalkFilter::NodeExactlyOnce(v) => occurrences(v) == 1,
            WalkFilter::NodeAtLeastTwice(v) => occurrences(v) >= 2,
            WalkFilter::NodeAbsent(v) => occurrences(v) == 0,
            WalkFilter::AllDistinct => all_distinct(walk),
            WalkFilter::HasRepeat => !all_distinct(walk),
            WalkFilter::Custom(pred) => pred(walk),
        }
    }
}

fn all_distinct(walk: &[usize]) -> bool {
    walk.iter().enumerate().all(|(p, x)| !walk[p + 1..].contains(x))
}

/// `n^(k+1)`, the number of node sequences of length `k + 1`.
pub fn oracle_sequence_bound(n: usize, k: usize) -> BigUint {
    let exp = u32::try_from(k + 1).unwrap_or(u32::MAX);
    BigUint::from(n).pow(exp)
}

fn guard(n: usize, k: usize) -> Result<()> {
    let bound = oracle_sequence_bound(n, k);
    if bound > BigUint::from(ORACLE_SEQUENCE_LIMIT) {
        return Err(Error::GuardExceeded {
            estimate: bound.to_string(),
            limit: ORACLE_SEQUENCE_LIMIT,
        });
    }
    Ok(())
}

/// Counts, for each `(source, destination)`, the walks of length `k` whose
/// node sequence satisfies `filter`.
pub fn brute_force_walk_matrix(g: &Graph, k: usize, filter: &WalkFilter<'_>) -> Result<CountMatrix> {
    let n = g.node_count();
    guard(n, k)?;
    if let WalkFilter::PositionsEqual(i, j) = *filter {
        if i > k || j > k {
            return Err(Error::invalid(format!(
                "positions ({i}, {j}) beyond hopcount {k}"
            )));
        }
    }
    let adjacency: Vec<Vec<usize>> = (0..n).map(|u| g.neighbors(u).collect()).collect();
    let mut counts = vec![0u64; n * n];
    let mut walk = Vec::with_capacity(k + 1);
    for s in 0..n {
        walk.push(s);
        extend(&adjacency, k, filter, &mut walk, &mut counts, n);
        walk.pop();
    }
    Ok(CountMatrix::from_fn(n, |s, t| BigUint::from(counts[s * n + t])))
}

fn extend(
    adjacency: &[Vec<usize>],
    k: usize,
    filter: &WalkFilter<'_>,
    walk: &mut Vec<usize>,
    counts: &mut [u64],
    n: usize,
) {
    if walk.len() == k + 1 {
        if filter.matches(walk) {
            counts[walk[0] * n + walk[k]] += 1;
        }
        return;
    }
    let last = *walk.last().expect("walk starts non-empty");
    for &next in &adjacency[last] {
        walk.push(next);
        extend(adjacency, k, filter, walk, counts, n);
        walk.pop();
    }
}

/// Paths of length `k`: walks with all nodes distinct.
pub fn brute_force_path_matrix(g: &Graph, k: usize) -> Result<CountMatrix> {
    brute_force_walk_matrix(g, k, &WalkFilter::AllDistinct)
}

/// Number of walks the oracle would emit, `u^T A^k u`, as an `f64` estimate.
pub fn walk_total_estimate(g: &Graph, k: usize) -> f64 {
    let mut v: Vec<BigUint> = vec![BigUint::one(); g.node_count()];
    for _ in 0..k {
        v = (0..g.node_count())
            .map(|u| g.neighbors(u).map(|w| &v[w]).sum())
            .collect();
    }
    v.iter().sum::<BigUint>().to_f64().unwrap_or(f64::INFINITY)
}
