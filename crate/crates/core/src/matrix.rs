//! Dense square matrices of exact integers.
//!
//! [`CountMatrix`] holds nonnegative counts and [`SignedCountMatrix`] holds
//! the signed intermediate values of inclusion–exclusion sums. Counts grow
//! like `d^k`, so both use arbitrary-precision integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CountMatrix {
    n: usize,
    entries: Vec<BigUint>,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedCountMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

macro_rules! square_matrix_common {
    ($ty:ident, $elem:ty) => {
        impl $ty {
            pub fn zeros(n: usize) -> Self {
                $ty {
                    n,
                    entries: vec![<$elem>::zero(); n * n],
                }
            }

            pub fn identity(n: usize) -> Self {
                let mut m = Self::zeros(n);
                for i in 0..n {
                    m.entries[i * n + i] = <$elem>::one();
                }
                m
            }

            pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> $elem) -> Self {
                let mut entries = Vec::with_capacity(n * n);
                for i in 0..n {
                    for j in 0..n {
                        entries.push(f(i, j));
                    }
                }
                $ty { n, entries }
            }

            pub fn dim(&self) -> usize {
                self.n
            }

            #[inline]
            pub fn get(&self, i: usize, j: usize) -> &$elem {
                &self.entries[i * self.n + j]
            }

            #[inline]
            pub fn set(&mut self, i: usize, j: usize, value: $elem) {
                self.entries[i * self.n + j] = value;
            }

            pub fn row(&self, i: usize) -> &[$elem] {
                &self.entries[i * self.n..(i + 1) * self.n]
            }

            pub fn rows(&self) -> impl Iterator<Item = &[$elem]> {
                self.entries.chunks(self.n.max(1)).take(self.n)
            }

            pub fn transpose(&self) -> Self {
                Self::from_fn(self.n, |i, j| self.get(j, i).clone())
            }

            pub fn is_symmetric(&self) -> bool {
                (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
            }

            pub fn is_zero(&self) -> bool {
                self.entries.iter().all(|x| x.is_zero())
            }

            /// `I ∘ M`: the diagonal of `M`, zeros elsewhere.
            pub fn diag_part(&self) -> Self {
                Self::from_fn(self.n, |i, j| {
                    if i == j {
                        self.get(i, i).clone()
                    } else {
                        <$elem>::zero()
                    }
                })
            }

            pub fn trace(&self) -> $elem {
                (0..self.n).map(|i| self.get(i, i).clone()).sum()
            }

            /// Entrywise (Hadamard) product.
            pub fn hadamard(&self, rhs: &Self) -> Self {
                assert_eq!(self.n, rhs.n, "dimension mismatch");
                $ty {
                    n: self.n,
                    entries: self
                        .entries
                        .iter()
                        .zip(&rhs.entries)
                        .map(|(a, b)| a * b)
                        .collect(),
                }
            }

            pub fn scale(&self, factor: u32) -> Self {
                let f = <$elem>::from(factor);
                $ty {
                    n: self.n,
                    entries: self.entries.iter().map(|x| x * &f).collect(),
                }
            }

            /// `M · A` where `A` is the adjacency matrix of `g`. Uses additions only.
            pub fn mul_adjacency(&self, g: &Graph) -> Self {
                assert_eq!(self.n, g.node_count(), "dimension mismatch");
                let n = self.n;
                let nbrs: Vec<Vec<usize>> = (0..n).map(|j| g.neighbors(j).collect()).collect();
                Self::from_fn(n, |i, j| nbrs[j].iter().map(|&r| self.get(i, r)).sum())
            }

            /// `A · M` where `A` is the adjacency matrix of `g`.
            pub fn adjacency_mul(&self, g: &Graph) -> Self {
                assert_eq!(self.n, g.node_count(), "dimension mismatch");
                let n = self.n;
                let nbrs: Vec<Vec<usize>> = (0..n).map(|i| g.neighbors(i).collect()).collect();
                Self::from_fn(n, |i, j| nbrs[i].iter().map(|&r| self.get(r, j)).sum())
            }

            /// `u^T M u`.
            pub fn total(&self) -> $elem {
                self.entries.iter().sum()
            }
        }

        impl Mul for &$ty {
            type Output = $ty;

            fn mul(self, rhs: &$ty) -> $ty {
                assert_eq!(self.n, rhs.n, "dimension mismatch");
                let n = self.n;
                let mut out = $ty::zeros(n);
                for i in 0..n {
                    for r in 0..n {
                        let a = self.get(i, r);
                        if a.is_zero() {
                            continue;
                        }
                        for j in 0..n {
                            let b = rhs.get(r, j);
                            if !b.is_zero() {
                                out.entries[i * n + j] += a * b;
                            }
                        }
                    }
                }
                out
            }
        }

        impl Add for &$ty {
            type Output = $ty;

            fn add(self, rhs: &$ty) -> $ty {
                assert_eq!(self.n, rhs.n, "dimension mismatch");
                $ty {
                    n: self.n,
                    entries: self
                        .entries
                        .iter()
                        .zip(&rhs.entries)
                        .map(|(a, b)| a + b)
                        .collect(),
                }
            }
        }

        impl std::ops::AddAssign<&$ty> for $ty {
            fn add_assign(&mut self, rhs: &$ty) {
                assert_eq!(self.n, rhs.n, "dimension mismatch");
                for (a, b) in self.entries.iter_mut().zip(&rhs.entries) {
                    *a += b;
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let cells: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
                let width = cells.iter().map(String::len).max().unwrap_or(1);
                for i in 0..self.n {
                    let line: Vec<String> = cells[i * self.n..(i + 1) * self.n]
                        .iter()
                        .map(|c| format!("{c:>width$}"))
                        .collect();
                    writeln!(f, "[{}]", line.join(" "))?;
                }
                Ok(())
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                writeln!(f, "{}({})", stringify!($ty), self.n)?;
                fmt::Display::fmt(self, f)
            }
        }
    };
}

square_matrix_common!(CountMatrix, BigUint);
square_matrix_common!(SignedCountMatrix, BigInt);

impl CountMatrix {
    /// The adjacency matrix `A` of `g`.
    pub fn adjacency(g: &Graph) -> Self {
        Self::from_fn(g.node_count(), |i, j| BigUint::from(g.entry(i, j)))
    }

    pub fn from_u64_rows(rows: &[Vec<u64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must form a square");
        Self::from_fn(n, |i, j| BigUint::from(rows[i][j]))
    }

    pub fn to_signed(&self) -> SignedCountMatrix {
        SignedCountMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| BigInt::from(x.clone())).collect(),
        }
    }

    /// True if `self[i][j] <= other[i][j]` everywhere.
    pub fn entrywise_le(&self, other: &CountMatrix) -> bool {
        self.n == other.n && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    /// Entries as `u64`, or `None` if any entry does not fit.
    pub fn to_u64_rows(&self) -> Option<Vec<Vec<u64>>> {
        self.rows()
            .map(|r| r.iter().map(|x| u64::try_from(x).ok()).collect())
            .collect()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(MatrixJson::from(self)).expect("matrix JSON is always representable")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixJson::from(self)).expect("matrix JSON is always representable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        raw.try_into()
    }

    /// Header row then one line per row, big integers as decimal strings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("source");
        for j in 0..self.n {
            out.push_str(&format!(",{j}"));
        }
        out.push('\n');
        for (i, row) in self.rows().enumerate() {
            out.push_str(&i.to_string());
            for x in row {
                out.push(',');
                out.push_str(&x.to_string());
            }
            out.push('\n');
        }
        out
    }
}

impl SignedCountMatrix {
    /// Converts to a [`CountMatrix`], failing on the first negative entry.
    pub fn into_nonnegative(self, context: &str) -> Result<CountMatrix> {
        let n = self.n;
        let mut entries = Vec::with_capacity(self.entries.len());
        for (idx, x) in self.entries.into_iter().enumerate() {
            match x.sign() {
                Sign::Minus => {
                    return Err(Error::NegativeEntry {
                        context: context.to_string(),
                        row: idx / n,
                        col: idx % n,
                        value: x.to_string(),
                    })
                }
                _ => entries.push(x.magnitude().clone()),
            }
        }
        Ok(CountMatrix { n, entries })
    }
}

impl Sub for &SignedCountMatrix {
    type Output = SignedCountMatrix;

    fn sub(self, rhs: &SignedCountMatrix) -> SignedCountMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        SignedCountMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl std::ops::SubAssign<&SignedCountMatrix> for SignedCountMatrix {
    fn sub_assign(&mut self, rhs: &SignedCountMatrix) {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        for (a, b) in self.entries.iter_mut().zip(&rhs.entries) {
            *a -= b;
        }
    }
}

impl Neg for &SignedCountMatrix {
    type Output = SignedCountMatrix;

    fn neg(self) -> SignedCountMatrix {
        SignedCountMatrix {
            n: self.n,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }
}

impl From<&CountMatrix> for SignedCountMatrix {
    fn from(m: &CountMatrix) -> Self {
        m.to_signed()
    }
}

/// Wire form of a count matrix: `{"n": int, "rows": [[decimal strings]]}`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub n: usize,
    pub rows: Vec<Vec<String>>,
}

impl From<&CountMatrix> for MatrixJson {
    fn from(m: &CountMatrix) -> Self {
        MatrixJson {
            n: m.n,
            rows: m
                .rows()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }
}

impl TryFrom<MatrixJson> for CountMatrix {
    type Error = Error;

    fn try_from(raw: MatrixJson) -> Result<Self> {
        if raw.rows.len() != raw.n || raw.rows.iter().any(|r| r.len() != raw.n) {
            return Err(Error::Json(format!("rows do not form a {0}x{0} matrix", raw.n)));
        }
        let mut entries = Vec::with_capacity(raw.n * raw.n);
        for cell in raw.rows.iter().flatten() {
            let ok = !cell.is_empty() && cell.bytes().all(|b| b.is_ascii_digit());
            let value = ok
                .then(|| cell.parse::<BigUint>().ok())
                .flatten()
                .ok_or_else(|| Error::Json(format!("`{cell}` is not a decimal count")))?;
            entries.push(value);
        }
        Ok(CountMatrix { n: raw.n, entries })
    }
}

/// Row-sum vector `M u`, used for compact reporting.
pub fn row_sums(m: &CountMatrix) -> Vec<BigUint> {
    m.rows().map(|r| r.iter().sum()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, path_graph};

    #[test]
    fn products_and_adjacency_shortcuts_agree() {
        let g = crate::graph::erdos_renyi(7, 0.5, 4).unwrap();
        let a = CountMatrix::adjacency(&g);
        let m = &(&a * &a) + &CountMatrix::identity(7);
        assert_eq!(&m * &a, m.mul_adjacency(&g));
        assert_eq!(&a * &m, m.adjacency_mul(&g));
    }

    #[test]
    fn diag_trace_hadamard() {
        let a = CountMatrix::adjacency(&complete_graph(3).unwrap());
        let a2 = &a * &a;
        assert_eq!(a2.diag_part(), CountMatrix::identity(3).scale(2));
        assert_eq!(a2.trace(), BigUint::from(6u32));
        assert_eq!(a.hadamard(&a), a);
        assert_eq!(a.total(), BigUint::from(6u32));
    }

    #[test]
    fn negative_entries_are_reported() {
        let a = CountMatrix::adjacency(&path_graph(2).unwrap()).to_signed();
        let err = (&SignedCountMatrix::zeros(2) - &a)
            .into_nonnegative("test")
            .unwrap_err();
        assert!(matches!(err, Error::NegativeEntry { row: 0, col: 1, .. }));
    }

    #[test]
    fn json_round_trip_keeps_big_values() {
        let big: BigUint = "2000000000000000000000000".parse().unwrap();
        let mut m = CountMatrix::identity(2);
        m.set(0, 1, big.clone());
        let text = m.to_json();
        assert_eq!(
            text,
            r#"{"n":2,"rows":[["1","2000000000000000000000000"],["0","1"]]}"#
        );
        assert_eq!(CountMatrix::from_json(&text).unwrap(), m);
    }

    #[test]
    fn json_rejects_malformed() {
        assert!(CountMatrix::from_json(r#"{"n":2,"rows":[["1"]]}"#).is_err());
        assert!(CountMatrix::from_json(r#"{"n":1,"rows":[["-1"]]}"#).is_err());
        assert!(CountMatrix::from_json(r#"{"n":1,"rows":[["+1"]]}"#).is_err());
        assert!(CountMatrix::from_json(r#"{"n":1,"rows":[[1]]}"#).is_err());
    }

    #[test]
    fn csv_layout() {
        let a = CountMatrix::adjacency(&path_graph(2).unwrap());
        assert_eq!(a.to_csv(), "source,0,1\n0,0,1\n1,1,0\n");
    }
}
