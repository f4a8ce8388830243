//! Evaluation statistics: ROC curves, Pearson correlation with exact
//! t-distribution p-values, coefficients of determination and
//! significance-masked correlation matrices.

mod correlation;
mod roc;
mod special;

pub use correlation::{
    correlation_matrix, pearson, r_squared_fit, Cell, Column, CorrelationMatrix, MetricResult,
    DEFAULT_ALPHA,
};
pub use roc::{roc_auc, RocCurve, RocPoint};
pub use special::{regularized_incomplete_beta, student_t_sf};

/// Arithmetic mean. Returns `None` for an empty slice.
pub fn mean(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        None
    } else {
        Some(values.iter().sum::<f64>() / values.len() as f64)
    }
}
