//! Crowd judgment files and their consensus / sentiment outputs.

use std::collections::BTreeMap;
use std::path::Path;

use protest_core::annotation::{
    aggregate_sentiment, check_unique, resolve_binary_consensus, split_half_reliability, ConsensusLabel,
    FieldKind, Rating, SentimentScore, WorkerJudgment, SENTIMENT_DIMENSIONS,
};
use protest_core::stats::MetricResult;
use serde::Deserialize;

use crate::tables::{cell, csv_error, render_csv};
use crate::{ToolError, ToolResult};

pub const JUDGMENT_HEADER: [&str; 4] = ["worker_id", "image_id", "field", "value"];
pub const CONSENSUS_HEADER: [&str; 4] = ["image_id", "field", "value", "status"];
pub const SENTIMENT_HEADER: [&str; 4] = ["image_id", "dimension", "score", "n_raters"];

#[derive(Deserialize)]
struct Row {
    worker_id: String,
    image_id: String,
    field: String,
    value: f64,
}

/// Reads `worker_id,image_id,field,value`; every value is checked against
/// its field's kind and duplicate triples are rejected.
pub fn read_judgments(path: &Path) -> ToolResult<Vec<WorkerJudgment>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| csv_error(path, e))?;
    let headers = reader.headers().map_err(|e| csv_error(path, e))?;
    if headers.iter().collect::<Vec<_>>() != JUDGMENT_HEADER {
        return Err(ToolError::format(path, Some(1), format!("expected header `{}`", JUDGMENT_HEADER.join(","))));
    }
    let mut out = Vec::new();
    for (i, row) in reader.deserialize::<Row>().enumerate() {
        let row = row.map_err(|e| csv_error(path, e))?;
        let j = WorkerJudgment { worker_id: row.worker_id, image_id: row.image_id, field: row.field, value: row.value };
        j.validate().map_err(|e| ToolError::format(path, Some(i + 2), e.to_string()))?;
        out.push(j);
    }
    check_unique(&out)?;
    Ok(out)
}

#[derive(Debug, Default)]
pub struct ConsensusOutput {
    pub labels: Vec<ConsensusLabel>,
    pub sentiments: Vec<SentimentScore>,
}

/// Groups judgments by (image, field) and resolves each group. Output is
/// sorted by image id, then field.
pub fn resolve_all(judgments: &[WorkerJudgment]) -> ToolResult<ConsensusOutput> {
    let mut groups: BTreeMap<(&str, &str), Vec<&WorkerJudgment>> = BTreeMap::new();
    for j in judgments {
        groups.entry((&j.image_id, &j.field)).or_default().push(j);
    }
    let mut out = ConsensusOutput::default();
    for ((image, field), group) in groups {
        match group[0].validate()? {
            FieldKind::Binary => {
                let owned: Vec<WorkerJudgment> = group.into_iter().cloned().collect();
                out.labels.push(resolve_binary_consensus(&owned)?);
            }
            FieldKind::Sentiment => {
                let values: Vec<f64> = group.iter().map(|j| j.value).collect();
                let (score, n_raters) = aggregate_sentiment(&values)?;
                out.sentiments.push(SentimentScore {
                    image_id: image.to_string(),
                    dimension: field.to_string(),
                    score,
                    n_raters,
                });
            }
        }
    }
    Ok(out)
}

pub fn render_consensus(labels: &[ConsensusLabel]) -> Vec<u8> {
    render_csv(
        &CONSENSUS_HEADER,
        labels.iter().map(|l| {
            [
                l.image_id.clone(),
                l.field.clone(),
                l.value.map(|v| v.to_string()).unwrap_or_default(),
                l.status.as_str().to_string(),
            ]
        }),
    )
}

pub fn render_sentiments(scores: &[SentimentScore]) -> Vec<u8> {
    render_csv(
        &SENTIMENT_HEADER,
        scores
            .iter()
            .map(|s| [s.image_id.clone(), s.dimension.clone(), cell(Some(s.score)), s.n_raters.to_string()]),
    )
}

/// Split-half reliability for every sentiment dimension present in the
/// judgments, splitting by worker id.
pub fn reliability_by_dimension(judgments: &[WorkerJudgment], seed: u64) -> ToolResult<Vec<(String, MetricResult)>> {
    let mut by_dim: BTreeMap<&str, BTreeMap<&str, Vec<Rating>>> = BTreeMap::new();
    for j in judgments.iter().filter(|j| SENTIMENT_DIMENSIONS.contains(&j.field.as_str())) {
        by_dim
            .entry(&j.field)
            .or_default()
            .entry(&j.image_id)
            .or_default()
            .push(Rating { worker_id: Some(j.worker_id.clone()), value: j.value });
    }
    let mut out = Vec::new();
    for dim in SENTIMENT_DIMENSIONS {
        if let Some(items) = by_dim.remove(dim) {
            let items: Vec<Vec<Rating>> = items.into_values().collect();
            out.push((dim.to_string(), split_half_reliability(&items, seed)?));
        }
    }
    Ok(out)
}
