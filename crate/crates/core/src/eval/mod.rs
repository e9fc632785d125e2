//! 1-NN classification experiments over symbolized (or raw) time series:
//! leave-one-out tuning of the alphabet size and frequency factor, test-set
//! evaluation, and summary tables.
//!
//! Parallel work (pairwise tables, per-test-instance classification) always
//! collects results in index order, so output never depends on scheduling.

mod classify;
mod metric;
mod report;
mod tune;

pub use classify::{
    classify_all, distance, loocv_count, loocv_error, nearest, nn1_classify, Encoding, ErrorCount, Neighbor,
    PreparedSet, Representation,
};
pub use metric::{lcss_distance, Metric, MetricKind};
pub use report::{eval_csv, eval_table, summarize, summarize_errors, tune_csv, tune_table, Summary};
pub use tune::{
    distance_matrix, evaluate, grid_search, loocv_error_for, tune_and_evaluate, EvalReport, GridPoint, GridSpec,
    TuneReport, DEFAULT_LAMBDAS, LAMBDA_CEILING, LAMBDA_STEP,
};

#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    (0..n).map(f).collect()
}
