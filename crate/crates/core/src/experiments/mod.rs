//! Anonymization experiments: walk a graph, match every checkpoint back to
//! the starting graph, and estimate when the matching breaks down.

mod anonymization;
mod config;
mod driver;
mod fit;
mod trace;

pub use anonymization::{detect_anonymization, detect_community, median_t_hat, AnonymizationEstimate};
pub use config::{ExperimentConfig, ModelKind, WalkKind};
pub use driver::{
    run_er_sweep, run_loaded_graph, run_replicate, run_sbm_sweep, ReplicateInput, ReplicateOutcome, SizeSummary,
    SweepResult,
};
pub use fit::{loglog_fit, LogLogFit};
pub use trace::TraceRecord;
