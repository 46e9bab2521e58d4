//! Walk matrices: powers of `A`, closed walks, walks with a repeated node at
//! fixed positions, walks that visit a node exactly once, and walks that avoid
//! a set of nodes.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSubset};
use crate::matrix::CountMatrix;

/// `[A^0, A^1, ..., A^k]`, each obtained from the previous by one multiplication.
pub fn walk_powers(g: &Graph, k: usize) -> Vec<CountMatrix> {
    let mut powers = Vec::with_capacity(k + 1);
    powers.push(CountMatrix::identity(g.node_count()));
    for p in 1..=k {
        let next = powers[p - 1].mul_adjacency(g);
        powers.push(next);
    }
    powers
}

/// `A^k`: entry `(s, t)` counts the walks of length `k` from `s` to `t`.
pub fn matrix_power(g: &Graph, k: usize) -> CountMatrix {
    walk_powers(g, k)
        .pop()
        .expect("walk_powers returns k + 1 matrices")
}

/// `I ∘ A^k`, the closed walks of length `k` on the diagonal.
pub fn closed_walk_matrix(g: &Graph, k: usize) -> Result<CountMatrix> {
    if k == 0 {
        return Err(Error::invalid("closed walks need k >= 1"));
    }
    Ok(matrix_power(g, k).diag_part())
}

/// Walks of length `k` with `n_i = n_j`: `A^i (I ∘ A^{j-i}) A^{k-j}`.
///
/// Requires `i + 1 < j <= k`; adjacent positions can never hold the same node.
pub fn repeating_walk_matrix(g: &Graph, i: usize, j: usize, k: usize) -> Result<CountMatrix> {
    check_positions(i, j, k)?;
    Ok(repeating_from_powers(&walk_powers(g, k), i, j, k))
}

fn check_positions(i: usize, j: usize, k: usize) -> Result<()> {
    if j > k {
        return Err(Error::invalid(format!("position {j} beyond hopcount {k}")));
    }
    if j <= i + 1 {
        return Err(Error::invalid(format!(
            "positions ({i}, {j}) must satisfy j > i + 1"
        )));
    }
    Ok(())
}

/// Same as [`repeating_walk_matrix`] but reuses precomputed powers (`powers[p] = A^p`).
pub(crate) fn repeating_from_powers(powers: &[CountMatrix], i: usize, j: usize, k: usize) -> CountMatrix {
    let middle = powers[j - i].diag_part();
    &(&powers[i] * &middle) * &powers[k - j]
}

/// Which form of the interior-position term to use in
/// [`exactly_once_walk_matrix_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactlyOnceForm {
    /// Enters `v` through its column of `A` and leaves through its row.
    Corrected,
    /// The literal three-term expression: row of `v`, then column of `v`
    /// before an avoiding power, then row of `v` at the end. The last two
    /// factor pairs vanish for `k >= 2`, so only walks starting at `v` survive.
    /// Kept for diagnostics only.
    AsPrinted,
}

/// Entry `(s, t)` counts walks of length `k` from `s` to `t` in which node `v`
/// appears exactly once.
pub fn exactly_once_walk_matrix(g: &Graph, v: usize, k: usize) -> Result<CountMatrix> {
    exactly_once_walk_matrix_with(g, v, k, ExactlyOnceForm::Corrected)
}

pub fn exactly_once_walk_matrix_with(
    g: &Graph,
    v: usize,
    k: usize,
    form: ExactlyOnceForm,
) -> Result<CountMatrix> {
    let n = g.node_count();
    if v >= n {
        return Err(Error::invalid(format!("node {v} out of range for n = {n}")));
    }
    if k == 0 {
        return Err(Error::invalid("exactly-once walks need k >= 1"));
    }
    let a = CountMatrix::adjacency(g);
    // (e_v u^T) ∘ A: leave v.
    let leave = CountMatrix::from_fn(n, |s, t| {
        if s == v {
            a.get(s, t).clone()
        } else {
            BigUint::ZERO
        }
    });
    // A ∘ (u e_v^T): enter v.
    let enter = CountMatrix::from_fn(n, |s, t| {
        if t == v {
            a.get(s, t).clone()
        } else {
            BigUint::ZERO
        }
    });
    let avoid = avoiding_graph(g, v);
    let b = walk_powers(&avoid, k);

    let mut total = &leave * &b[k - 1];
    match form {
        ExactlyOnceForm::Corrected => {
            let through = &enter * &leave;
            for m in 1..k {
                total += &(&(&b[m - 1] * &through) * &b[k - m - 1]);
            }
            total += &(&b[k - 1] * &enter);
        }
        ExactlyOnceForm::AsPrinted => {
            for m in 1..k {
                total += &(&(&b[m - 1] * &enter) * &b[k - m]);
            }
            total += &(&b[k - 1] * &leave);
        }
    }
    Ok(total)
}

/// `g` with every link incident to `m` removed.
fn avoiding_graph(g: &Graph, m: usize) -> Graph {
    let keep = NodeSubset::new(g.node_count(), (0..g.node_count()).filter(|&x| x != m))
        .expect("complement of one node is a valid subset");
    g.induced_mask(&keep)
        .expect("subset built over the same node set")
}

/// `(((u - e_m)(u - e_m)^T) ∘ A)^k`: walks of length `k` that never visit `m`.
pub fn avoiding_walk_matrix(g: &Graph, m: usize, k: usize) -> Result<CountMatrix> {
    let n = g.node_count();
    if m >= n {
        return Err(Error::invalid(format!("node {m} out of range for n = {n}")));
    }
    if k == 0 {
        return Err(Error::invalid("avoiding walks need k >= 1"));
    }
    Ok(matrix_power(&avoiding_graph(g, m), k))
}

/// Hadamard-mask form: `(((u - Σe)(u - Σe)^T) ∘ A)^k` for the removed nodes.
pub fn masked_walk_matrix(g: &Graph, removed: &NodeSubset, k: usize) -> Result<CountMatrix> {
    let keep = NodeSubset::new(
        g.node_count(),
        (0..g.node_count()).filter(|&x| !removed.contains(x)),
    )?;
    Ok(matrix_power(&g.induced_mask(&keep)?, k))
}

/// Diagonal-conjugation form: `(diag(u - Σe) · A · diag(u - Σe))^k`, evaluated
/// with explicit matrix products.
pub fn diag_conjugated_walk_matrix(g: &Graph, removed: &NodeSubset, k: usize) -> Result<CountMatrix> {
    let n = g.node_count();
    if removed.universe() != n {
        return Err(Error::invalid("subset and graph have different node counts"));
    }
    let d = CountMatrix::from_fn(n, |i, j| BigUint::from((i == j && !removed.contains(i)) as u8));
    let base = &(&d * &CountMatrix::adjacency(g)) * &d;
    let mut acc = CountMatrix::identity(n);
    for _ in 0..k {
        acc = &acc * &base;
    }
    Ok(acc)
}
