//! Two-colour Ramsey numbers for packings and families, critical colouring
//! structure, and formula evaluation.

mod critical;
mod formulas;
mod pipeline;
mod kernel;
mod search;
mod target;

pub use critical::{
    verify_critical_structure, Bullet, BulletStatus, CriticalOptions, CriticalPartition, CriticalReport, SWEEP_PAIR_LIMIT,
    SWEEP_SET_LIMIT,
};
pub use kernel::{edge_list, search_order, EdgeOrder, KernelStats, Outcome, KERNEL_LIMIT};
pub use search::{ramsey_search, OrderRecord, OrderVerdict, RamseyQuery, RamseyResult, RamseyStatus};
pub use target::{avoids_both, colouring_avoids, Avoidance, Target};
pub use formulas::{bounds_sandwich, evaluate_formulas, family_ramsey, FormulaRecord, Predicted, Sandwich};
pub use pipeline::{run_asymmetric_pipeline, PipelineOutcome, PipelineReport, TraceStep};
