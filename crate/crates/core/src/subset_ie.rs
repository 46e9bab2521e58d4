//! Path matrices by inclusion–exclusion over node subsets.
//!
//! A `k`-hop path uses exactly `k + 1` nodes. For a fixed node set `S` of that
//! size, the walks of length `k` inside `S` that visit every node of `S` are
//! exactly the paths on `S`; inclusion–exclusion over the nodes left out
//! counts them from masked powers of `A`. Summing over all `S` gives `P_k`.

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSubset};
use crate::matrix::{CountMatrix, SignedCountMatrix};
use crate::walks::{matrix_power, walk_powers};

/// `Σ_{T ⊆ keep} (-1)^{|T|} (A restricted to keep \ T)^k` with `|keep| = k + 1`.
///
/// Entry `(s, t)` counts the `k`-hop paths from `s` to `t` whose node set is
/// exactly `keep`. Removal sets leaving fewer than two nodes are skipped since
/// their masked power vanishes for `k >= 1`.
pub fn subset_ie_term(g: &Graph, keep: &NodeSubset, k: usize) -> Result<SignedCountMatrix> {
    if keep.universe() != g.node_count() {
        return Err(Error::invalid("subset and graph have different node counts"));
    }
    if keep.len() != k + 1 {
        return Err(Error::invalid(format!(
            "subset has {} nodes, hopcount {k} needs {}",
            keep.len(),
            k + 1
        )));
    }
    let local = local_term(g, keep.members(), k);
    let n = g.node_count();
    let mut out = SignedCountMatrix::zeros(n);
    for (a, &s) in keep.members().iter().enumerate() {
        for (b, &t) in keep.members().iter().enumerate() {
            out.set(s, t, local[a][b].clone());
        }
    }
    Ok(out)
}

/// The inclusion–exclusion sum in coordinates local to `members`.
fn local_term(g: &Graph, members: &[usize], k: usize) -> Vec<Vec<BigInt>> {
    let size = members.len();
    let mut acc = vec![vec![BigInt::ZERO; size]; size];
    if k == 0 {
        // Zero-hop walks are the identity; nothing to subtract for a single node.
        for (a, row) in acc.iter_mut().enumerate() {
            row[a] = BigInt::from(1u8);
        }
        return acc;
    }
    // Bit b of `remaining` keeps members[b].
    for remaining in 0u64..(1u64 << size) {
        let kept: Vec<usize> = (0..size).filter(|b| remaining >> b & 1 == 1).collect();
        if kept.len() < 2 {
            continue;
        }
        let removed = size - kept.len();
        let sub = Graph::from_edges(
            kept.len(),
            (0..kept.len())
                .flat_map(|x| (x + 1..kept.len()).map(move |y| (x, y)))
                .filter(|&(x, y)| g.has_link(members[kept[x]], members[kept[y]])),
        )
        .expect("local subgraph is simple");
        let power = matrix_power(&sub, k);
        for (x, &a) in kept.iter().enumerate() {
            for (y, &b) in kept.iter().enumerate() {
                let w = BigInt::from(power.get(x, y).clone());
                if removed.is_multiple_of(2) {
                    acc[a][b] += w;
                } else {
                    acc[a][b] -= w;
                }
            }
        }
    }
    acc
}

/// `P_k` as the sum of [`subset_ie_term`] over every `(k + 1)`-node subset.
///
/// Subsets are independent and are evaluated in parallel; each per-subset
/// term is checked for nonnegativity before it is added.
pub fn path_matrix_ie(g: &Graph, k: usize) -> Result<CountMatrix> {
    let n = g.node_count();
    if k == 0 || k >= n {
        return Err(Error::invalid(format!(
            "hopcount {k} outside 1..={}",
            n.saturating_sub(1)
        )));
    }
    if k + 1 > 63 {
        return Err(Error::invalid("subsets larger than 63 nodes are not supported"));
    }
    let subsets: Vec<NodeSubset> = NodeSubset::combinations(n, k + 1).collect();
    subsets
        .par_iter()
        .try_fold(
            || CountMatrix::zeros(n),
            |mut acc, keep| -> Result<CountMatrix> {
                let local = local_term(g, keep.members(), k);
                for (a, &s) in keep.members().iter().enumerate() {
                    for (b, &t) in keep.members().iter().enumerate() {
                        let value = &local[a][b];
                        let count: BigUint = value.to_biguint().ok_or_else(|| Error::NegativeEntry {
                            context: format!("subset term {:?}", keep.members()),
                            row: s,
                            col: t,
                            value: value.to_string(),
                        })?;
                        let slot = acc.get(s, t) + count;
                        acc.set(s, t, slot);
                    }
                }
                Ok(acc)
            },
        )
        .try_reduce(|| CountMatrix::zeros(n), |a, b| Ok(&a + &b))
}

/// Hamiltonian path matrix `P_{N-1}`:
///
/// ```text
/// P_{N-1} = Σ_{T ⊆ N} (-1)^{|T|} (diag(u - Σ_T e) · A · diag(u - Σ_T e))^{N-1}
/// ```
///
/// evaluated over the full node set with `N x N` masked powers.
pub fn hamiltonian_path_matrix(g: &Graph) -> Result<CountMatrix> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::invalid("Hamiltonian paths need at least two nodes"));
    }
    if n > 30 {
        return Err(Error::invalid(format!("2^{n} removal sets is out of reach")));
    }
    let terms: Result<Vec<(bool, CountMatrix)>> = (0u64..(1u64 << n))
        .into_par_iter()
        .filter(|mask| (n as u32 - mask.count_ones()) >= 2)
        .map(|mask| {
            let removed = NodeSubset::new(n, (0..n).filter(|b| mask >> b & 1 == 1))?;
            let keep = NodeSubset::new(n, (0..n).filter(|b| mask >> b & 1 == 0))?;
            let masked = g.induced_mask(&keep)?;
            let power = walk_powers(&masked, n - 1).pop().expect("n - 1 + 1 powers");
            Ok((removed.len() % 2 == 1, power))
        })
        .collect();
    let mut acc = SignedCountMatrix::zeros(n);
    for (negative, m) in terms? {
        if negative {
            acc -= &m.to_signed();
        } else {
            acc += &m.to_signed();
        }
    }
    acc.into_nonnegative("Hamiltonian path matrix")
}

/// Number of unordered Hamiltonian paths, `u^T P_{N-1} u / 2`.
pub fn hamiltonian_path_count(g: &Graph) -> Result<BigUint> {
    Ok(hamiltonian_path_matrix(g)?.total() / 2u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, erdos_renyi, path_graph};
    use crate::walks::{diag_conjugated_walk_matrix, masked_walk_matrix};

    fn off_diag(n: usize, v: u64) -> CountMatrix {
        CountMatrix::from_fn(n, |i, j| if i == j { 0u32.into() } else { v.into() })
    }

    #[test]
    fn triangle_term() {
        let k3 = complete_graph(3).unwrap();
        let term = subset_ie_term(&k3, &NodeSubset::all(3), 2).unwrap();
        assert_eq!(term.into_nonnegative("t").unwrap(), off_diag(3, 1));
    }

    #[test]
    fn term_is_zero_when_no_spanning_path() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let term = subset_ie_term(&g, &NodeSubset::all(3), 2).unwrap();
        assert!(term.is_zero());
    }

    #[test]
    fn single_link_term_is_masked_adjacency() {
        let g = erdos_renyi(6, 0.5, 2).unwrap();
        for keep in NodeSubset::combinations(6, 2) {
            let term = subset_ie_term(&g, &keep, 1)
                .unwrap()
                .into_nonnegative("t")
                .unwrap();
            assert_eq!(term, CountMatrix::adjacency(&g.induced_mask(&keep).unwrap()));
        }
    }

    #[test]
    fn term_rejects_wrong_size() {
        let k3 = complete_graph(3).unwrap();
        assert!(subset_ie_term(&k3, &NodeSubset::all(3), 1).is_err());
    }

    #[test]
    fn term_support_lies_inside_keep() {
        let g = erdos_renyi(7, 0.6, 11).unwrap();
        for keep in NodeSubset::combinations(7, 4) {
            let term = subset_ie_term(&g, &keep, 3).unwrap();
            for s in 0..7 {
                for t in 0..7 {
                    if !(keep.contains(s) && keep.contains(t)) {
                        assert_eq!(*term.get(s, t), BigInt::ZERO);
                    }
                }
            }
        }
    }

    #[test]
    fn ie_examples() {
        assert_eq!(
            path_matrix_ie(&complete_graph(3).unwrap(), 2).unwrap(),
            off_diag(3, 1)
        );
        let c4 = cycle_graph(4).unwrap();
        assert_eq!(path_matrix_ie(&c4, 3).unwrap(), CountMatrix::adjacency(&c4));
        let g = erdos_renyi(8, 0.4, 6).unwrap();
        assert_eq!(path_matrix_ie(&g, 1).unwrap(), CountMatrix::adjacency(&g));
        assert!(path_matrix_ie(&g, 0).is_err());
        assert!(path_matrix_ie(&g, 8).is_err());
    }

    #[test]
    fn hamiltonian_examples() {
        let k4 = complete_graph(4).unwrap();
        assert_eq!(hamiltonian_path_matrix(&k4).unwrap(), off_diag(4, 2));
        assert_eq!(hamiltonian_path_count(&k4).unwrap(), BigUint::from(12u32));
        let c4 = cycle_graph(4).unwrap();
        assert_eq!(hamiltonian_path_matrix(&c4).unwrap(), CountMatrix::adjacency(&c4));
        let p4 = path_graph(4).unwrap();
        let mut expected = CountMatrix::zeros(4);
        expected.set(0, 3, 1u32.into());
        expected.set(3, 0, 1u32.into());
        assert_eq!(hamiltonian_path_matrix(&p4).unwrap(), expected);
        assert!(hamiltonian_path_matrix(&path_graph(1).unwrap()).is_err());
    }

    #[test]
    fn mask_and_diag_conjugation_agree_for_every_removal_set() {
        for seed in 0..20 {
            let g = erdos_renyi(6, 0.5, 1000 + seed).unwrap();
            for mask in 0u32..(1 << 6) {
                let removed = NodeSubset::new(6, (0..6).filter(|b| mask >> b & 1 == 1)).unwrap();
                assert_eq!(
                    masked_walk_matrix(&g, &removed, 5).unwrap(),
                    diag_conjugated_walk_matrix(&g, &removed, 5).unwrap()
                );
            }
        }
    }
}
