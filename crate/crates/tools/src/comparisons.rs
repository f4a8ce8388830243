//! Pairwise comparison files, pair designs and strength tables.

use std::path::Path;

use protest_core::ranking::{normalize_scores, PairComparison, Side, StrengthVector};
use serde::Deserialize;

use crate::tables::{csv_error, exact, render_csv};
use crate::{ToolError, ToolResult};

pub const COMPARISON_HEADER: [&str; 4] = ["worker_id", "left_id", "right_id", "winner"];
pub const PAIR_HEADER: [&str; 2] = ["left_id", "right_id"];
pub const STRENGTH_HEADER: [&str; 4] = ["image_id", "pi", "log_pi", "score"];

#[derive(Deserialize)]
struct Row {
    worker_id: String,
    left_id: String,
    right_id: String,
    winner: String,
}

/// Reads `worker_id,left_id,right_id,winner`. `winner` is `left`, `right`,
/// or the id of the winning image.
pub fn read_comparisons(path: &Path) -> ToolResult<Vec<PairComparison>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| csv_error(path, e))?;
    let headers = reader.headers().map_err(|e| csv_error(path, e))?;
    if headers.iter().collect::<Vec<_>>() != COMPARISON_HEADER {
        return Err(ToolError::format(path, Some(1), format!("expected header `{}`", COMPARISON_HEADER.join(","))));
    }
    let mut out = Vec::new();
    for (i, row) in reader.deserialize::<Row>().enumerate() {
        let row = row.map_err(|e| csv_error(path, e))?;
        let line = i + 2;
        if row.left_id == row.right_id {
            return Err(ToolError::format(path, Some(line), format!("`{}` compared with itself", row.left_id)));
        }
        let winner = match row.winner.as_str() {
            "left" => Side::Left,
            "right" => Side::Right,
            w if w == row.left_id => Side::Left,
            w if w == row.right_id => Side::Right,
            w => return Err(ToolError::format(path, Some(line), format!("winner `{w}` is neither side"))),
        };
        out.push(PairComparison { left: row.left_id, right: row.right_id, winner, worker_id: row.worker_id });
    }
    Ok(out)
}

/// Reads a `left_id,right_id` pair design.
pub fn read_pairs(path: &Path) -> ToolResult<Vec<(String, String)>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| csv_error(path, e))?;
    let headers = reader.headers().map_err(|e| csv_error(path, e))?;
    if headers.iter().collect::<Vec<_>>() != PAIR_HEADER {
        return Err(ToolError::format(path, Some(1), format!("expected header `{}`", PAIR_HEADER.join(","))));
    }
    let mut out = Vec::new();
    for row in reader.deserialize::<(String, String)>() {
        out.push(row.map_err(|e| csv_error(path, e))?);
    }
    Ok(out)
}

pub fn render_pairs(items: &[String], pairs: &[(usize, usize)]) -> Vec<u8> {
    render_csv(&PAIR_HEADER, pairs.iter().map(|&(a, b)| [items[a].as_str(), items[b].as_str()]))
}

/// `image_id,pi,log_pi,score` in item order, full precision.
pub fn render_strengths(fit: &StrengthVector) -> Vec<u8> {
    let scores = normalize_scores(fit);
    render_csv(
        &STRENGTH_HEADER,
        fit.items.iter().zip(&fit.strengths).zip(&scores).map(|((id, &pi), s)| {
            [id.clone(), exact(pi), exact(pi.ln()), exact(s.score)]
        }),
    )
}
