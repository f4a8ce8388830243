//! The prediction interchange file: the canonical 16-score CSV exchanged
//! with any image model.

use std::fs;
use std::path::Path;

use protest_core::scores::{parse_predictions, render_predictions, PredictionRecord};

use crate::tables::write_atomic;
use crate::{ToolError, ToolResult};

/// Strictly parses a prediction file. Errors carry the offending line.
pub fn read_predictions(path: &Path) -> ToolResult<Vec<PredictionRecord>> {
    let text = fs::read_to_string(path).map_err(|e| ToolError::io(path, e))?;
    parse_predictions(&text).map_err(|e| ToolError::in_file(path, e))
}

/// Writes records in canonical column order with six decimals, atomically.
pub fn write_predictions(records: &[PredictionRecord], path: &Path) -> ToolResult<()> {
    let body = render_predictions(records)?;
    write_atomic(path, body.as_bytes())
}
