//! Pairwise violence ranking: balanced comparison designs and the
//! Bradley-Terry model fitted by minorize-maximize iterations.

mod bradley_terry;
mod design;
mod wins;

pub use bradley_terry::{
    fit_bradley_terry, log_likelihood, normalize_scores, predict_pair_prob, BtConfig, StrengthVector,
    ViolenceScore,
};
pub use design::{sample_pairs, DEFAULT_MAX_RESTARTS};
pub use wins::{accumulate_wins, PairComparison, Side, WinMatrix};
