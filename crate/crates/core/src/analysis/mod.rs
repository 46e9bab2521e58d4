//! Cost models, experiment drivers and cross-method validation.

pub mod cost;
pub mod sweep;
pub mod validate;

pub use cost::{complexity_csv, complexity_table, cost_model, ComplexityRow, CostMethod, CostPoint};
pub use sweep::{
    er_sweep, parse_density_range, summarize, sweep_csv, DensitySummary, SweepOutcome, SweepRecord,
};
pub use validate::{validate, MethodStatus, PathMethod, ValidationReport};
