//! Total path counts of seeded Erdős–Rényi graphs across link densities.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{erdos_renyi, SplitMix64};
use crate::sequences::total_path_count;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepOutcome {
    Counted(BigUint),
    /// The enumeration guard refused the graph; carries the walk bound.
    Skipped {
        bound: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub n: usize,
    pub p: f64,
    pub rep: usize,
    pub seed: u64,
    pub outcome: SweepOutcome,
}

impl SweepRecord {
    pub fn total_paths(&self) -> Option<&BigUint> {
        match &self.outcome {
            SweepOutcome::Counted(t) => Some(t),
            SweepOutcome::Skipped { .. } => None,
        }
    }
}

/// Seed for repetition `rep`. It does not depend on `p`, so for a fixed
/// repetition the uniform draws are shared across densities and the graphs
/// are nested as `p` grows.
pub fn derive_seed(base_seed: u64, rep: usize) -> u64 {
    SplitMix64::new(base_seed ^ (rep as u64).wrapping_mul(0xD1B5_4A32_D192_ED03)).next_u64()
}

/// Parses `start:stop:step` into the inclusive list of densities.
pub fn parse_density_range(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::invalid(format!("density range `{spec}` is not start:stop:step"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !(0.0..=1.0).contains(&start) || !(0.0..=1.0).contains(&stop) || start > stop {
        return Err(Error::invalid(format!(
            "densities must satisfy 0 <= start <= stop <= 1 in `{spec}`"
        )));
    }
    if step.is_nan() || step <= 0.0 {
        return Err(Error::invalid(format!("step must be positive in `{spec}`")));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| {
            let p = start + i as f64 * step;
            ((p * 1e12).round() / 1e12).min(1.0)
        })
        .collect())
}

/// One record per `(p, rep)`, ordered by density then repetition.
pub fn er_sweep(n: usize, densities: &[f64], reps: usize, base_seed: u64) -> Result<Vec<SweepRecord>> {
    if reps == 0 {
        return Err(Error::invalid("reps must be at least 1"));
    }
    if let Some(p) = densities.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::invalid(format!("link density {p} outside [0, 1]")));
    }
    let grid: Vec<(f64, usize)> = densities
        .iter()
        .flat_map(|&p| (0..reps).map(move |rep| (p, rep)))
        .collect();
    grid.par_iter()
        .map(|&(p, rep)| {
            let seed = derive_seed(base_seed, rep);
            let g = erdos_renyi(n, p, seed)?;
            let outcome = match total_path_count(&g) {
                Ok(total) => SweepOutcome::Counted(total),
                Err(Error::GuardExceeded { estimate, .. }) => SweepOutcome::Skipped { bound: estimate },
                Err(e) => return Err(e),
            };
            Ok(SweepRecord {
                n,
                p,
                rep,
                seed,
                outcome,
            })
        })
        .collect()
}

pub const SWEEP_CSV_HEADER: &str = "n,p,rep,seed,total_paths,status";

pub fn sweep_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in records {
        let (total, status) = match &r.outcome {
            SweepOutcome::Counted(t) => (t.to_string(), "ok".to_string()),
            SweepOutcome::Skipped { bound } => (String::new(), format!("skipped(bound={bound})")),
        };
        out.push_str(&format!(
            "{},{:.6},{},{},{},{}\n",
            r.n, r.p, r.rep, r.seed, total, status
        ));
    }
    out
}

/// Per-density summary: `(p, sum of totals, number counted, number skipped)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySummary {
    pub p: f64,
    pub sum: BigUint,
    pub counted: usize,
    pub skipped: usize,
}

impl DensitySummary {
    pub fn mean(&self) -> Option<f64> {
        use num_traits::ToPrimitive;
        (self.counted > 0).then(|| self.sum.to_f64().unwrap_or(f64::INFINITY) / self.counted as f64)
    }
}

/// Groups records by density, preserving the order in which densities appear.
pub fn summarize(records: &[SweepRecord]) -> Vec<DensitySummary> {
    let mut out: Vec<DensitySummary> = Vec::new();
    for r in records {
        let idx = match out.iter().position(|s| s.p == r.p) {
            Some(i) => i,
            None => {
                out.push(DensitySummary {
                    p: r.p,
                    sum: BigUint::ZERO,
                    counted: 0,
                    skipped: 0,
                });
                out.len() - 1
            }
        };
        match &r.outcome {
            SweepOutcome::Counted(t) => {
                out[idx].sum += t;
                out[idx].counted += 1;
            }
            SweepOutcome::Skipped { .. } => out[idx].skipped += 1,
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_ranges() {
        assert_eq!(
            parse_density_range("0.2:1.0:0.2").unwrap(),
            vec![0.2, 0.4, 0.6, 0.8, 1.0]
        );
        assert_eq!(parse_density_range("0:0:0.1").unwrap(), vec![0.0]);
        assert_eq!(parse_density_range("0:1:0.1").unwrap().len(), 11);
        assert!(parse_density_range("0.5:0.2:0.1").is_err());
        assert!(parse_density_range("0:1").is_err());
        assert!(parse_density_range("0:1:0").is_err());
        assert!(parse_density_range("0:2:0.5").is_err());
        assert!(parse_density_range("a:1:0.5").is_err());
    }

    #[test]
    fn complete_and_empty_anchors() {
        let recs = er_sweep(6, &[1.0], 3, 7).unwrap();
        assert!(recs
            .iter()
            .all(|r| r.total_paths() == Some(&BigUint::from(975u32))));
        let recs = er_sweep(10, &[0.0], 2, 7).unwrap();
        assert!(recs.iter().all(|r| r.total_paths() == Some(&BigUint::ZERO)));
    }

    #[test]
    fn guard_marks_skipped_records() {
        let recs = er_sweep(14, &[1.0], 1, 0).unwrap();
        assert!(matches!(recs[0].outcome, SweepOutcome::Skipped { .. }));
        let csv = sweep_csv(&recs);
        assert!(csv.lines().nth(1).unwrap().contains(",,skipped(bound="));
        assert_eq!(summarize(&recs)[0].mean(), None);
    }

    #[test]
    fn records_are_ordered_and_seeded_per_rep() {
        let recs = er_sweep(5, &[0.2, 0.6], 3, 42).unwrap();
        let keys: Vec<(f64, usize)> = recs.iter().map(|r| (r.p, r.rep)).collect();
        assert_eq!(keys, [(0.2, 0), (0.2, 1), (0.2, 2), (0.6, 0), (0.6, 1), (0.6, 2)]);
        assert_eq!(recs[0].seed, recs[3].seed);
        assert_ne!(recs[0].seed, recs[1].seed);
        assert!(er_sweep(5, &[0.5], 0, 0).is_err());
        assert!(er_sweep(5, &[1.5], 1, 0).is_err());
    }

    #[test]
    fn csv_format() {
        let recs = er_sweep(3, &[1.0], 1, 0).unwrap();
        let csv = sweep_csv(&recs);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(SWEEP_CSV_HEADER));
        let seed = derive_seed(0, 0);
        assert_eq!(lines.next().unwrap(), format!("3,1.000000,0,{seed},6,ok"));
    }
}
