//! Crowd judgment resolution.
//!
//! Binary fields (protest presence and the ten visual attributes) are
//! labeled by two workers and confirmed when they agree; a disagreement is
//! settled by a third worker. Sentiment dimensions are rated individually in
//! `[0, 1]` and pooled by their arithmetic mean.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::scores::ATTRIBUTE_NAMES;
use crate::stats::{pearson, MetricResult};
use crate::{Error, Result};

/// Sentiment dimensions rated individually per image.
pub const SENTIMENT_DIMENSIONS: [&str; 5] = ["violent", "angry", "fearful", "sad", "happy"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Binary,
    Sentiment,
}

/// Classifies a label name; `None` for names outside the annotation schema.
pub fn field_kind(field: &str) -> Option<FieldKind> {
    if field == "protest" || ATTRIBUTE_NAMES.contains(&field) {
        Some(FieldKind::Binary)
    } else if SENTIMENT_DIMENSIONS.contains(&field) {
        Some(FieldKind::Sentiment)
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WorkerJudgment {
    pub worker_id: String,
    pub image_id: String,
    pub field: String,
    pub value: f64,
}

impl WorkerJudgment {
    /// Checks the value against the field's kind.
    pub fn validate(&self) -> Result<FieldKind> {
        let kind = field_kind(&self.field)
            .ok_or_else(|| Error::TypeMismatch(alloc::format!("unknown field `{}`", self.field)))?;
        let ok = match kind {
            FieldKind::Binary => self.value == 0.0 || self.value == 1.0,
            FieldKind::Sentiment => (0.0..=1.0).contains(&self.value),
        };
        if ok {
            Ok(kind)
        } else {
            Err(Error::TypeMismatch(alloc::format!(
                "value {} is not valid for {:?} field `{}`",
                self.value, kind, self.field
            )))
        }
    }
}

/// Rejects batches where a (worker, image, field) triple repeats.
pub fn check_unique(judgments: &[WorkerJudgment]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for j in judgments {
        if !seen.insert((j.worker_id.as_str(), j.image_id.as_str(), j.field.as_str())) {
            return Err(Error::DuplicateJudgment(alloc::format!(
                "worker `{}`, image `{}`, field `{}`",
                j.worker_id, j.image_id, j.field
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConsensusStatus {
    ResolvedBy2,
    ResolvedBy3,
    Pending,
}

impl ConsensusStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ConsensusStatus::ResolvedBy2 => "resolved-by-2",
            ConsensusStatus::ResolvedBy3 => "resolved-by-3",
            ConsensusStatus::Pending => "pending",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsensusLabel {
    pub image_id: String,
    pub field: String,
    /// `None` while pending.
    pub value: Option<u8>,
    pub status: ConsensusStatus,
}

/// Resolves two or three binary judgments of one image/field.
///
/// Two agreeing votes decide; with a disagreement the third vote breaks the
/// tie. Order of the judgments is irrelevant.
pub fn resolve_binary_consensus(judgments: &[WorkerJudgment]) -> Result<ConsensusLabel> {
    if judgments.len() < 2 {
        return Err(Error::InsufficientJudgments { needed: 2, got: judgments.len() });
    }
    if judgments.len() > 3 {
        return Err(Error::ExcessJudgments { max: 3, got: judgments.len() });
    }
    let first = &judgments[0];
    for j in judgments {
        if j.image_id != first.image_id || j.field != first.field {
            return Err(Error::TypeMismatch(alloc::format!(
                "judgments mix ({}, {}) and ({}, {})",
                first.image_id, first.field, j.image_id, j.field
            )));
        }
        if j.validate()? != FieldKind::Binary {
            return Err(Error::TypeMismatch(alloc::format!("`{}` is not a binary field", j.field)));
        }
    }
    check_unique(judgments)?;

    let ones = judgments.iter().filter(|j| j.value == 1.0).count();
    let zeros = judgments.len() - ones;
    let (value, status) = match (judgments.len(), ones) {
        (2, 1) => (None, ConsensusStatus::Pending),
        (2, _) => (Some(u8::from(ones == 2)), ConsensusStatus::ResolvedBy2),
        _ if ones == 3 || zeros == 3 => (Some(u8::from(ones == 3)), ConsensusStatus::ResolvedBy2),
        _ => (Some(u8::from(ones > zeros)), ConsensusStatus::ResolvedBy3),
    };
    Ok(ConsensusLabel {
        image_id: first.image_id.clone(),
        field: first.field.clone(),
        value,
        status,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SentimentScore {
    pub image_id: String,
    pub dimension: String,
    pub score: f64,
    pub n_raters: usize,
}

/// Mean of individual ratings in `[0, 1]`; returns `(score, n_raters)`.
pub fn aggregate_sentiment(ratings: &[f64]) -> Result<(f64, usize)> {
    if ratings.is_empty() {
        return Err(Error::InsufficientJudgments { needed: 1, got: 0 });
    }
    if let Some(bad) = ratings.iter().find(|r| !(0.0..=1.0).contains(*r)) {
        return Err(Error::TypeMismatch(alloc::format!("rating {bad} outside [0, 1]")));
    }
    let mean = ratings.iter().sum::<f64>() / ratings.len() as f64;
    // Summation rounding can push the mean a hair past the extremes.
    let lo = ratings.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ratings.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok((mean.clamp(lo, hi), ratings.len()))
}

/// One rating of an item, optionally attributed to a worker.
#[derive(Debug, Clone, PartialEq)]
pub struct Rating {
    pub worker_id: Option<String>,
    pub value: f64,
}

/// The per-item half means produced by one random split.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitHalves {
    pub first: Vec<f64>,
    pub second: Vec<f64>,
    /// Items skipped because one half of their raters was empty
    /// (only possible when splitting by worker id).
    pub skipped: usize,
}

/// Randomly splits raters into two disjoint halves and averages each half
/// per item.
///
/// When every rating carries a worker id, the distinct workers are shuffled
/// once and halved globally, so the two groups never share a worker. Items
/// rated entirely by one group are skipped. Otherwise each item's rating slots
/// are shuffled and halved independently.
pub fn split_halves(items: &[Vec<Rating>], seed: u64) -> Result<SplitHalves> {
    if let Some(item) = items.iter().find(|r| r.len() < 2) {
        return Err(Error::InsufficientJudgments { needed: 2, got: item.len() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let by_worker = !items.is_empty() && items.iter().flatten().all(|r| r.worker_id.is_some());

    let mut halves = SplitHalves { first: Vec::new(), second: Vec::new(), skipped: 0 };
    if by_worker {
        let workers: BTreeSet<&str> = items.iter().flatten().filter_map(|r| r.worker_id.as_deref()).collect();
        let mut workers: Vec<&str> = workers.into_iter().collect();
        workers.shuffle(&mut rng);
        let group_a: BTreeSet<&str> = workers[..workers.len() / 2].iter().copied().collect();
        for item in items {
            let (mut a, mut b) = ((0.0, 0usize), (0.0, 0usize));
            for r in item {
                let slot = if group_a.contains(r.worker_id.as_deref().unwrap_or_default()) { &mut a } else { &mut b };
                slot.0 += r.value;
                slot.1 += 1;
            }
            if a.1 == 0 || b.1 == 0 {
                halves.skipped += 1;
                continue;
            }
            halves.first.push(a.0 / a.1 as f64);
            halves.second.push(b.0 / b.1 as f64);
        }
    } else {
        let mut slots: Vec<usize> = Vec::new();
        for item in items {
            slots.clear();
            slots.extend(0..item.len());
            slots.shuffle(&mut rng);
            let (a, b) = slots.split_at(item.len() / 2);
            let mean = |idx: &[usize]| idx.iter().map(|&i| item[i].value).sum::<f64>() / idx.len() as f64;
            halves.first.push(mean(a));
            halves.second.push(mean(b));
        }
    }
    Ok(halves)
}

/// Split-half inter-rater reliability: Pearson correlation between the two
/// vectors of per-item half means. Deterministic for a fixed seed.
pub fn split_half_reliability(items: &[Vec<Rating>], seed: u64) -> Result<MetricResult> {
    let halves = split_halves(items, seed)?;
    if halves.first.len() < 3 {
        return Err(Error::InsufficientJudgments { needed: 3, got: halves.first.len() });
    }
    pearson(&halves.first, &halves.second)
}

/// Convenience for anonymous rating lists.
pub fn anonymous(items: &[Vec<f64>]) -> Vec<Vec<Rating>> {
    items
        .iter()
        .map(|r| r.iter().map(|&value| Rating { worker_id: None, value }).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn judgment(worker: &str, value: f64) -> WorkerJudgment {
        WorkerJudgment {
            worker_id: worker.to_string(),
            image_id: "img".to_string(),
            field: "protest".to_string(),
            value,
        }
    }

    fn votes(values: &[f64]) -> Vec<WorkerJudgment> {
        values
            .iter()
            .enumerate()
            .map(|(i, &v)| judgment(&alloc::format!("w{i}"), v))
            .collect()
    }

    #[test]
    fn consensus_cases() {
        let l = resolve_binary_consensus(&votes(&[1.0, 1.0])).unwrap();
        assert_eq!((l.value, l.status), (Some(1), ConsensusStatus::ResolvedBy2));
        let l = resolve_binary_consensus(&votes(&[1.0, 0.0, 0.0])).unwrap();
        assert_eq!((l.value, l.status), (Some(0), ConsensusStatus::ResolvedBy3));
        let l = resolve_binary_consensus(&votes(&[1.0, 0.0])).unwrap();
        assert_eq!((l.value, l.status), (None, ConsensusStatus::Pending));
    }

    #[test]
    fn consensus_is_order_invariant() {
        let all = [[1.0, 0.0, 1.0], [0.0, 1.0, 1.0], [1.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]];
        for values in all {
            let base = resolve_binary_consensus(&votes(&values)).unwrap();
            let mut v = votes(&values);
            v.reverse();
            let rev = resolve_binary_consensus(&v).unwrap();
            assert_eq!(base, rev);
            assert!(values.contains(&f64::from(base.value.unwrap())));
        }
    }

    #[test]
    fn consensus_errors() {
        assert_eq!(
            resolve_binary_consensus(&votes(&[1.0])),
            Err(Error::InsufficientJudgments { needed: 2, got: 1 })
        );
        assert!(matches!(resolve_binary_consensus(&votes(&[1.0, 0.5])), Err(Error::TypeMismatch(_))));
        let mut sentiment = votes(&[0.2, 0.3]);
        for j in &mut sentiment {
            j.field = "angry".to_string();
        }
        assert!(matches!(resolve_binary_consensus(&sentiment), Err(Error::TypeMismatch(_))));
        let dup = vec![judgment("w", 1.0), judgment("w", 1.0)];
        assert!(matches!(resolve_binary_consensus(&dup), Err(Error::DuplicateJudgment(_))));
    }

    #[test]
    fn sentiment_means() {
        assert_eq!(aggregate_sentiment(&[0.5, 0.5, 0.5]).unwrap(), (0.5, 3));
        assert_eq!(aggregate_sentiment(&[0.0, 1.0]).unwrap(), (0.5, 2));
        let (s, n) = aggregate_sentiment(&[0.2, 0.4, 0.9]).unwrap();
        assert!((s - 0.5).abs() < 1e-15);
        assert_eq!(n, 3);
        assert_eq!(aggregate_sentiment(&[]), Err(Error::InsufficientJudgments { needed: 1, got: 0 }));
        assert!(matches!(aggregate_sentiment(&[0.2, 1.1]), Err(Error::TypeMismatch(_))));
    }

    #[test]
    fn field_kinds() {
        assert_eq!(field_kind("protest"), Some(FieldKind::Binary));
        assert_eq!(field_kind("group_100"), Some(FieldKind::Binary));
        assert_eq!(field_kind("fearful"), Some(FieldKind::Sentiment));
        assert_eq!(field_kind("bogus"), None);
    }

    #[test]
    fn noiseless_ratings_are_perfectly_reliable() {
        let items: Vec<Vec<f64>> = (0..30).map(|i| vec![f64::from(i) / 30.0; 6]).collect();
        for seed in 0..5 {
            let m = split_half_reliability(&anonymous(&items), seed).unwrap();
            assert!((m.rho - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn split_half_needs_two_ratings() {
        let items = vec![vec![0.1, 0.2], vec![0.3]];
        assert_eq!(
            split_half_reliability(&anonymous(&items), 0),
            Err(Error::InsufficientJudgments { needed: 2, got: 1 })
        );
    }

    #[test]
    fn split_half_is_seed_deterministic_and_symmetric() {
        let items: Vec<Vec<f64>> = (0..40)
            .map(|i| (0..5).map(|k| f64::from((i * 7 + k * 3) % 11) / 10.0).collect())
            .collect();
        let a = split_half_reliability(&anonymous(&items), 9).unwrap();
        let b = split_half_reliability(&anonymous(&items), 9).unwrap();
        assert_eq!(a, b);
        let h = split_halves(&anonymous(&items), 9).unwrap();
        let swapped = pearson(&h.second, &h.first).unwrap();
        assert_eq!(swapped.rho, a.rho);
    }

    #[test]
    fn split_by_worker_uses_disjoint_groups() {
        let workers = ["a", "b", "c", "d"];
        let items: Vec<Vec<Rating>> = (0..20)
            .map(|i| {
                workers
                    .iter()
                    .map(|w| Rating { worker_id: Some(w.to_string()), value: f64::from(i) / 20.0 })
                    .collect()
            })
            .collect();
        let h = split_halves(&items, 1).unwrap();
        assert_eq!(h.skipped, 0);
        assert_eq!(h.first, h.second);
    }
}
