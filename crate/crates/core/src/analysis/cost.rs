//! Operation-count models for the four ways of computing `P_k`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{FromPrimitive, One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CostMethod {
    /// Inclusion–exclusion over repeated-position walk sets: `k N^3 2^{(k^2-k)/2}`.
    Repeating,
    /// Labeled distinct-node sequences: `k! k N^3`.
    Labeled,
    /// Subset inclusion–exclusion: `C(N, k+1) k N^3 2^k`.
    Subset,
    /// Recursive enumeration on `G(N, p)`: `N (1+p)^{2k}`.
    Recursive,
}

impl CostMethod {
    pub const ALL: [CostMethod; 4] = [
        CostMethod::Repeating,
        CostMethod::Labeled,
        CostMethod::Subset,
        CostMethod::Recursive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CostMethod::Repeating => "repeating",
            CostMethod::Labeled => "labeled",
            CostMethod::Subset => "subset",
            CostMethod::Recursive => "recursive",
        }
    }
}

impl fmt::Display for CostMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CostMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CostMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown cost method `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostPoint {
    pub method: CostMethod,
    pub n: usize,
    pub k: usize,
    #[serde(serialize_with = "as_decimal")]
    pub cost: BigUint,
    pub log10_cost: f64,
}

fn as_decimal<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// `log10(x)` for integers too large for `f64`.
pub fn log10_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64 below 2^1000").log10();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("64-bit value").log10() + shift as f64 * std::f64::consts::LOG10_2
}

/// `C(n, r)` exactly.
pub fn binomial(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::ZERO;
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

/// Operation-count estimate for computing `P_k` on `n` nodes.
///
/// `p` is the link density and is required only for [`CostMethod::Recursive`],
/// whose rational value is rounded to the nearest integer.
pub fn cost_model(method: CostMethod, n: usize, k: usize, p: Option<f64>) -> Result<CostPoint> {
    if k == 0 || k >= n {
        return Err(Error::invalid(format!(
            "hopcount {k} outside 1..={}",
            n.saturating_sub(1)
        )));
    }
    let n_cubed = BigUint::from(n).pow(3);
    let cost = match method {
        CostMethod::Repeating => BigUint::from(k) * &n_cubed * pow2((k * k - k) / 2),
        CostMethod::Labeled => factorial(k) * k * &n_cubed,
        CostMethod::Subset => binomial(n, k + 1) * k * &n_cubed * pow2(k),
        CostMethod::Recursive => {
            let p = p.ok_or_else(|| Error::invalid("the recursive cost model needs a link density"))?;
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::invalid(format!("link density {p} outside [0, 1]")));
            }
            let exp = i32::try_from(2 * k).map_err(|_| Error::invalid("hopcount too large"))?;
            let value = (n as f64 * (1.0 + p).powi(exp)).round();
            BigUint::from_f64(value)
                .filter(|_| value.is_finite())
                .ok_or_else(|| Error::invalid(format!("recursive cost {value} not representable")))?
        }
    };
    let log10_cost = log10_big(&cost);
    Ok(CostPoint {
        method,
        n,
        k,
        cost,
        log10_cost,
    })
}

/// Costs of the three matrix methods at one hopcount.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityRow {
    pub k: usize,
    pub repeating: CostPoint,
    pub labeled: CostPoint,
    pub subset: CostPoint,
}

impl ComplexityRow {
    /// The method with the strictly smallest cost, if unique.
    pub fn strict_minimum(&self) -> Option<CostMethod> {
        self.strict_extreme(|a, b| a < b)
    }

    /// The method with the strictly largest cost, if unique.
    pub fn strict_maximum(&self) -> Option<CostMethod> {
        self.strict_extreme(|a, b| a > b)
    }

    fn strict_extreme(&self, better: impl Fn(&BigUint, &BigUint) -> bool) -> Option<CostMethod> {
        let pts = [&self.repeating, &self.labeled, &self.subset];
        pts.iter()
            .find(|c| {
                pts.iter()
                    .filter(|o| o.method != c.method)
                    .all(|o| better(&c.cost, &o.cost))
            })
            .map(|c| c.method)
    }
}

/// One row per `k = 1..n-1`.
pub fn complexity_table(n: usize) -> Result<Vec<ComplexityRow>> {
    if n < 2 {
        return Err(Error::invalid(format!("complexity table needs n >= 2, got {n}")));
    }
    (1..n)
        .map(|k| {
            Ok(ComplexityRow {
                k,
                repeating: cost_model(CostMethod::Repeating, n, k, None)?,
                labeled: cost_model(CostMethod::Labeled, n, k, None)?,
                subset: cost_model(CostMethod::Subset, n, k, None)?,
            })
        })
        .collect()
}

pub const COMPLEXITY_CSV_HEADER: &str =
    "k,cost_repeating,cost_labeled,cost_subset,log10_repeating,log10_labeled,log10_subset";

pub fn complexity_csv(rows: &[ComplexityRow]) -> String {
    let mut out = String::from(COMPLEXITY_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{:.6},{:.6},{:.6}\n",
            r.k,
            r.repeating.cost,
            r.labeled.cost,
            r.subset.cost,
            r.repeating.log10_cost,
            r.labeled.log10_cost,
            r.subset.log10_cost
        ));
    }
    out
}
