//! Closed-form path matrices for hopcounts 1 through 4, built from powers of
//! `A`, their diagonals and Hadamard products.
//!
//! Each expression is evaluated in signed arithmetic because the partial sums
//! of the inclusion–exclusion terms can dip below zero. The final matrix is
//! checked for negative entries instead of clamped.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{CountMatrix, SignedCountMatrix};
use crate::walks::{repeating_from_powers, walk_powers};

/// `P_1 = A`.
pub fn path_matrix_p1(g: &Graph) -> CountMatrix {
    CountMatrix::adjacency(g)
}

/// `P_2 = A^2 - I ∘ A^2`.
pub fn path_matrix_p2(g: &Graph) -> Result<CountMatrix> {
    let pw = walk_powers(g, 2);
    let a2 = pw[2].to_signed();
    (&a2 - &a2.diag_part()).into_nonnegative("P2")
}

/// `P_3 = A^3 - (I ∘ A^2) A - I ∘ A^3 - A (I ∘ A^2) + A`.
pub fn path_matrix_p3(g: &Graph) -> Result<CountMatrix> {
    let pw = walk_powers(g, 3);
    let a = pw[1].to_signed();
    let a3 = pw[3].to_signed();
    let d2 = pw[2].diag_part().to_signed();

    let mut p = a3.clone();
    p -= &(&d2 * &a);
    p -= &a3.diag_part();
    p -= &(&a * &d2);
    p += &a;
    p.into_nonnegative("P3")
}

/// The fourteen-term expression for `P_4`:
///
/// ```text
/// P4 = A^4 - D2 A^2 - D3 A - D4 - A D2 A - A D3 - A^2 D2
///    + 3 D2^2 + 3 (A ∘ A^2) + I ∘ (A D2 A) + 2 A^2
///    - 3 D2 - D2^2
///    + D2
/// ```
///
/// with `Dk = I ∘ A^k`.
pub fn path_matrix_p4(g: &Graph) -> Result<CountMatrix> {
    let pw = walk_powers(g, 4);
    let a = pw[1].to_signed();
    let a2 = pw[2].to_signed();
    let a4 = pw[4].to_signed();
    let d2 = pw[2].diag_part().to_signed();
    let d3 = pw[3].diag_part().to_signed();
    let d4 = pw[4].diag_part().to_signed();
    let d2_sq = &d2 * &d2;
    let a_d2_a = &(&a * &d2) * &a;

    let mut p = a4;
    p -= &(&d2 * &a2);
    p -= &(&d3 * &a);
    p -= &d4;
    p -= &a_d2_a;
    p -= &(&a * &d3);
    p -= &(&a2 * &d2);

    p += &d2_sq.scale(3);
    p += &a.hadamard(&a2).scale(3);
    p += &a_d2_a.diag_part();
    p += &a2.scale(2);

    p -= &d2.scale(3);
    p -= &d2_sq;

    p += &d2;
    p.into_nonnegative("P4")
}

/// Dispatches to the closed form for `1 <= k <= 4`.
pub fn closed_form_path_matrix(g: &Graph, k: usize) -> Result<CountMatrix> {
    match k {
        1 => Ok(path_matrix_p1(g)),
        2 => path_matrix_p2(g),
        3 => path_matrix_p3(g),
        4 => path_matrix_p4(g),
        _ => Err(Error::invalid(format!(
            "closed forms exist for 1 <= k <= 4, got {k}"
        ))),
    }
}

/// `F_k = P_{k-1} A - P_k`, the length-`k` extensions of `(k-1)`-paths that
/// revisit a node. `paths` supplies exact path matrices.
pub fn recursion_residual_f<F>(g: &Graph, k: usize, paths: F) -> Result<CountMatrix>
where
    F: Fn(&Graph, usize) -> Result<CountMatrix>,
{
    if k < 2 {
        return Err(Error::invalid(format!("F_k needs k >= 2, got {k}")));
    }
    let extended = paths(g, k - 1)?.mul_adjacency(g).to_signed();
    let pk = paths(g, k)?.to_signed();
    (&extended - &pk).into_nonnegative(&format!("F{k}"))
}

/// Both sides of the first-term identity for `F_k`:
///
/// ```text
/// Σ_{i<j<=k} M(W_(i,j)[k]) - Σ_{i<j<=k-1} M(W_(i,j)[k-1]) A  =  Σ_{i=0}^{k-2} A^i (I ∘ A^{k-i})
/// ```
///
/// Both sums on the left range over `j >= i + 2`. Returns `(lhs, rhs)`.
pub fn first_term_identity(g: &Graph, k: usize) -> Result<(CountMatrix, CountMatrix)> {
    if k < 2 {
        return Err(Error::invalid(format!("identity needs k >= 2, got {k}")));
    }
    let n = g.node_count();
    let pw = walk_powers(g, k);

    let mut lhs = SignedCountMatrix::zeros(n);
    for i in 0..=k - 2 {
        for j in (i + 2)..=k {
            lhs += &repeating_from_powers(&pw, i, j, k).to_signed();
        }
    }
    for i in 0..(k - 1).saturating_sub(1) {
        for j in (i + 2)..=k - 1 {
            lhs -= &repeating_from_powers(&pw, i, j, k - 1)
                .mul_adjacency(g)
                .to_signed();
        }
    }

    let mut rhs = CountMatrix::zeros(n);
    for i in 0..=k - 2 {
        rhs += &(&pw[i] * &pw[k - i].diag_part());
    }
    Ok((lhs.into_nonnegative("first-term identity lhs")?, rhs))
}
