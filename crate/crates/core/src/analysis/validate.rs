//! Cross-checks every applicable method against the others for `k = 1..=k_max`.

use std::fmt;
use std::time::{Duration, Instant};

use crate::closed_form::closed_form_path_matrix;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::CountMatrix;
use crate::oracle::brute_force_path_matrix;
use crate::sequences::{all_path_matrices, path_matrix_labeled, PathMatrixFamily};
use crate::subset_ie::{hamiltonian_path_matrix, path_matrix_ie};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathMethod {
    ClosedForm,
    Labeled,
    SubsetIe,
    Recursive,
    Hamiltonian,
    Oracle,
}

impl PathMethod {
    pub fn name(self) -> &'static str {
        match self {
            PathMethod::ClosedForm => "closed-form",
            PathMethod::Labeled => "labeled",
            PathMethod::SubsetIe => "subset",
            PathMethod::Recursive => "recursive",
            PathMethod::Hamiltonian => "hamiltonian",
            PathMethod::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MethodStatus {
    /// First computed matrix at this `k`; the others are compared against it.
    Reference,
    Agree,
    Mismatch,
    /// The method ran but reported an error such as a negative entry.
    Failed(String),
    Skipped(String),
}

#[derive(Debug, Clone)]
pub struct MethodResult {
    pub method: PathMethod,
    pub status: MethodStatus,
    pub elapsed: Duration,
    pub matrix: Option<CountMatrix>,
}

#[derive(Debug, Clone)]
pub struct HopReport {
    pub k: usize,
    pub results: Vec<MethodResult>,
}

impl HopReport {
    pub fn reference(&self) -> Option<&MethodResult> {
        self.results.iter().find(|r| r.status == MethodStatus::Reference)
    }

    pub fn has_failure(&self) -> bool {
        self.results
            .iter()
            .any(|r| matches!(r.status, MethodStatus::Mismatch | MethodStatus::Failed(_)))
    }
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub n: usize,
    pub k_max: usize,
    pub hops: Vec<HopReport>,
}

impl ValidationReport {
    /// True iff every pair of computed matrices agreed.
    pub fn passed(&self) -> bool {
        !self.hops.iter().any(HopReport::has_failure)
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

/// Runs the closed forms (`k <= 4`), labeled sequences, subset
/// inclusion–exclusion, recursive enumeration, the Hamiltonian form
/// (`k = n - 1`) and the brute-force oracle, and compares the results.
/// Methods refused by their enumeration guards are reported as skipped.
pub fn validate(g: &Graph, k_max: usize) -> Result<ValidationReport> {
    let n = g.node_count();
    if k_max == 0 || k_max >= n {
        return Err(Error::invalid(format!(
            "k_max {k_max} outside 1..={}",
            n.saturating_sub(1)
        )));
    }
    let (family, family_time): (Result<PathMatrixFamily>, Duration) = timed(|| all_path_matrices(g));

    let mut hops = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let mut results: Vec<MethodResult> = Vec::new();
        let mut push = |method: PathMethod, outcome: Result<CountMatrix>, elapsed: Duration| {
            let (status, matrix) = match outcome {
                Ok(m) => (MethodStatus::Agree, Some(m)),
                Err(Error::GuardExceeded { estimate, limit }) => (
                    MethodStatus::Skipped(format!("guard: {estimate} > {limit}")),
                    None,
                ),
                Err(e) => (MethodStatus::Failed(e.to_string()), None),
            };
            results.push(MethodResult {
                method,
                status,
                elapsed,
                matrix,
            });
        };

        if k <= 4 {
            let (m, t) = timed(|| closed_form_path_matrix(g, k));
            push(PathMethod::ClosedForm, m, t);
        }
        let (m, t) = timed(|| path_matrix_labeled(g, k));
        push(PathMethod::Labeled, m, t);
        let (m, t) = timed(|| path_matrix_ie(g, k));
        push(PathMethod::SubsetIe, m, t);
        let recursive = match &family {
            Ok(f) => Ok(f.get(k).expect("k <= n - 1").clone()),
            Err(e) => Err(e.clone()),
        };
        push(PathMethod::Recursive, recursive, family_time);
        if k == n - 1 {
            let (m, t) = timed(|| hamiltonian_path_matrix(g));
            push(PathMethod::Hamiltonian, m, t);
        }
        let (m, t) = timed(|| brute_force_path_matrix(g, k));
        push(PathMethod::Oracle, m, t);

        let mut reference: Option<CountMatrix> = None;
        for r in results.iter_mut() {
            let Some(m) = &r.matrix else { continue };
            match &reference {
                None => {
                    reference = Some(m.clone());
                    r.status = MethodStatus::Reference;
                }
                Some(base) if base == m => r.status = MethodStatus::Agree,
                Some(_) => r.status = MethodStatus::Mismatch,
            }
        }
        hops.push(HopReport { k, results });
    }
    Ok(ValidationReport { n, k_max, hops })
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "validation: n = {}, k = 1..={}", self.n, self.k_max)?;
        for hop in &self.hops {
            writeln!(f, "k = {}", hop.k)?;
            for r in &hop.results {
                let status = match &r.status {
                    MethodStatus::Reference => "reference".to_string(),
                    MethodStatus::Agree => "agree".to_string(),
                    MethodStatus::Mismatch => "MISMATCH".to_string(),
                    MethodStatus::Failed(e) => format!("FAILED: {e}"),
                    MethodStatus::Skipped(why) => format!("skipped ({why})"),
                };
                writeln!(
                    f,
                    "  {:<12} {:<10} {:>10.3} ms",
                    r.method.name(),
                    status,
                    r.elapsed.as_secs_f64() * 1e3
                )?;
            }
            if hop.has_failure() {
                if let Some(base) = hop.reference() {
                    writeln!(f, "  reference ({}):", base.method.name())?;
                    write!(f, "{}", base.matrix.as_ref().expect("reference has a matrix"))?;
                }
                for r in hop.results.iter().filter(|r| r.status == MethodStatus::Mismatch) {
                    writeln!(f, "  {}:", r.method.name())?;
                    write!(f, "{}", r.matrix.as_ref().expect("mismatch has a matrix"))?;
                }
            }
        }
        writeln!(
            f,
            "result: {}",
            if self.passed() {
                "all methods agree"
            } else {
                "DISCREPANCY"
            }
        )
    }
}
