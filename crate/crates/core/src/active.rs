//! Candidate harvesting for the data-refinement loop: choose a classifier
//! cut that keeps a required share of known positives, then apply it to
//! unlabeled prediction streams.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Recall floor used when none is given.
pub const DEFAULT_TARGET_RECALL: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdReport {
    pub threshold: f64,
    /// Share of positives with score `>= threshold`.
    pub achieved_recall: f64,
    /// Share of negatives with score `< threshold`; 0 when there are none.
    pub prune_rate: f64,
    pub n_pos: usize,
    pub n_neg: usize,
}

/// The highest observed score `t` such that keeping `score >= t` retains at
/// least `target_recall` of the positives.
pub fn select_threshold(scores: &[f64], labels: &[bool], target_recall: f64) -> Result<ThresholdReport> {
    if scores.len() != labels.len() {
        return Err(Error::LengthMismatch { left: scores.len(), right: labels.len() });
    }
    if !(target_recall > 0.0 && target_recall <= 1.0) {
        return Err(Error::Config(alloc::format!("target recall must be in (0, 1], got {target_recall}")));
    }
    if let Some(bad) = scores.iter().find(|s| s.is_nan()) {
        return Err(Error::Range(alloc::format!("score {bad} is not a number")));
    }
    let n_pos = labels.iter().filter(|&&l| l).count();
    let n_neg = labels.len() - n_pos;
    if n_pos == 0 {
        return Err(Error::UndefinedThreshold);
    }

    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));

    // Walk candidate cuts from the top; the first cut meeting the floor is
    // the largest admissible one.
    let mut kept_pos = 0usize;
    let mut kept_neg = 0usize;
    let mut i = 0;
    while i < order.len() {
        let cut = scores[order[i]];
        while i < order.len() && scores[order[i]] == cut {
            if labels[order[i]] {
                kept_pos += 1;
            } else {
                kept_neg += 1;
            }
            i += 1;
        }
        let recall = kept_pos as f64 / n_pos as f64;
        if recall >= target_recall {
            let prune_rate = if n_neg == 0 { 0.0 } else { (n_neg - kept_neg) as f64 / n_neg as f64 };
            return Ok(ThresholdReport { threshold: cut, achieved_recall: recall, prune_rate, n_pos, n_neg });
        }
    }
    unreachable!("the lowest cut keeps every positive")
}

/// Splits ids into `(kept, pruned)` by `score >= threshold`, preserving
/// input order in both halves.
pub fn filter_candidates<S: AsRef<str>>(predictions: &[(S, f64)], threshold: f64) -> (Vec<&str>, Vec<&str>) {
    let mut kept = Vec::new();
    let mut pruned = Vec::new();
    for (id, score) in predictions {
        if *score >= threshold {
            kept.push(id.as_ref());
        } else {
            pruned.push(id.as_ref());
        }
    }
    (kept, pruned)
}

/// Drops entries scoring below `low_cutoff`; returns how many were removed.
pub fn prune_easy_negatives<S>(predictions: &mut Vec<(S, f64)>, low_cutoff: f64) -> usize {
    let before = predictions.len();
    predictions.retain(|(_, s)| *s >= low_cutoff);
    before - predictions.len()
}
