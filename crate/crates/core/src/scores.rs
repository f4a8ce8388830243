//! The per-image prediction record shared by every analysis stage, and the
//! row grammar of its CSV interchange format.
//!
//! ```text
//! image_id,protest,violence,angry,fearful,sad,happy,sign,photo,fire,law,children,group_20,group_100,flag,night,shout
//! ```
//!
//! Every score column is printed with exactly six decimals and must lie in
//! `[0, 1]`. `image_id` is non-empty and free of commas, quotes, carriage
//! returns and newlines.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use crate::{Error, Result};

pub const SENTIMENT_NAMES: [&str; 4] = ["angry", "fearful", "sad", "happy"];

pub const ATTRIBUTE_NAMES: [&str; 10] = [
    "sign", "photo", "fire", "law", "children", "group_20", "group_100", "flag", "night", "shout",
];

/// Score columns in file order.
pub const SCORE_COLUMNS: [&str; 16] = [
    "protest", "violence", "angry", "fearful", "sad", "happy", "sign", "photo", "fire", "law", "children",
    "group_20", "group_100", "flag", "night", "shout",
];

pub const HEADER: &str = "image_id,protest,violence,angry,fearful,sad,happy,sign,photo,fire,law,children,group_20,group_100,flag,night,shout";

/// Model outputs for one image.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictionRecord {
    pub image_id: String,
    pub protest: f64,
    pub violence: f64,
    /// angry, fearful, sad, happy
    pub sentiments: [f64; 4],
    /// sign, photo, fire, law, children, group_20, group_100, flag, night, shout
    pub attributes: [f64; 10],
}

impl PredictionRecord {
    /// Builds a record from the 16 scores in column order.
    pub fn from_scores(image_id: impl Into<String>, scores: [f64; 16]) -> Self {
        let mut sentiments = [0.0; 4];
        let mut attributes = [0.0; 10];
        sentiments.copy_from_slice(&scores[2..6]);
        attributes.copy_from_slice(&scores[6..16]);
        PredictionRecord {
            image_id: image_id.into(),
            protest: scores[0],
            violence: scores[1],
            sentiments,
            attributes,
        }
    }

    /// The 16 scores in column order.
    pub fn scores(&self) -> [f64; 16] {
        let mut out = [0.0; 16];
        out[0] = self.protest;
        out[1] = self.violence;
        out[2..6].copy_from_slice(&self.sentiments);
        out[6..16].copy_from_slice(&self.attributes);
        out
    }

    /// Looks up a score by column name.
    pub fn score(&self, column: &str) -> Option<f64> {
        SCORE_COLUMNS.iter().position(|c| *c == column).map(|i| self.scores()[i])
    }

    pub fn validate(&self) -> Result<()> {
        validate_id(&self.image_id)?;
        for (name, v) in SCORE_COLUMNS.iter().zip(self.scores()) {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Range(alloc::format!(
                    "{name} = {v} for `{}` outside [0, 1]",
                    self.image_id
                )));
            }
        }
        Ok(())
    }
}

fn validate_id(id: &str) -> Result<()> {
    if id.is_empty() {
        return Err(Error::Range("empty image_id".to_string()));
    }
    if id.contains([',', '"', '\r', '\n']) {
        return Err(Error::Range(alloc::format!("image_id `{id}` contains a reserved character")));
    }
    if id.trim() != id {
        return Err(Error::Range(alloc::format!("image_id `{id}` has surrounding whitespace")));
    }
    Ok(())
}

/// Formats one data row (without a trailing newline).
pub fn format_row(record: &PredictionRecord) -> String {
    let mut line = String::with_capacity(record.image_id.len() + 16 * 9);
    line.push_str(&record.image_id);
    for v in record.scores() {
        let _ = write!(line, ",{v:.6}");
    }
    line
}

fn is_score_literal(field: &str) -> bool {
    let bytes = field.as_bytes();
    bytes.len() == 8
        && bytes[0].is_ascii_digit()
        && bytes[1] == b'.'
        && bytes[2..].iter().all(u8::is_ascii_digit)
}

/// Parses one data row. `line_no` is 1-based and only used in errors.
///
/// Accepts exactly the strings [`format_row`] can produce for a valid record.
pub fn parse_row(line: &str, line_no: usize) -> Result<PredictionRecord> {
    let err = |message: String| Error::Parse { line: line_no, message };
    let fields: Vec<&str> = line.split(',').collect();
    if fields.len() != 17 {
        return Err(err(alloc::format!("expected 17 fields, found {}", fields.len())));
    }
    validate_id(fields[0]).map_err(|e| err(e.to_string()))?;
    let mut scores = [0.0; 16];
    for (i, raw) in fields[1..].iter().enumerate() {
        if !is_score_literal(raw) {
            return Err(err(alloc::format!("{}: `{raw}` is not a six-decimal score", SCORE_COLUMNS[i])));
        }
        let v: f64 = raw.parse().map_err(|_| err(alloc::format!("{}: `{raw}` is not a number", SCORE_COLUMNS[i])))?;
        if v > 1.0 {
            return Err(err(alloc::format!("{}: {v} outside [0, 1]", SCORE_COLUMNS[i])));
        }
        scores[i] = v;
    }
    Ok(PredictionRecord::from_scores(fields[0], scores))
}

/// Parses a whole file body: header line, then data rows. Blank trailing
/// lines are ignored; duplicate image ids are rejected.
pub fn parse_predictions(text: &str) -> Result<Vec<PredictionRecord>> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or_default();
    if header != HEADER {
        return Err(Error::HeaderMismatch { expected: HEADER.to_string(), found: header.to_string() });
    }
    let mut seen = BTreeMap::new();
    let mut out = Vec::new();
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        if line.is_empty() {
            continue;
        }
        let record = parse_row(line, line_no)?;
        if let Some(first) = seen.insert(record.image_id.clone(), line_no) {
            return Err(Error::Parse {
                line: line_no,
                message: alloc::format!("duplicate image_id `{}` (first on line {first})", record.image_id),
            });
        }
        out.push(record);
    }
    Ok(out)
}

/// Renders a complete file body: header plus one row per record, each line
/// newline-terminated.
pub fn render_predictions(records: &[PredictionRecord]) -> Result<String> {
    let mut out = String::from(HEADER);
    out.push('\n');
    for r in records {
        r.validate()?;
        out.push_str(&format_row(r));
        out.push('\n');
    }
    Ok(out)
}

/// Predictions keyed by image id.
pub type PredictionIndex = BTreeMap<String, PredictionRecord>;

/// Indexes records by image id, rejecting duplicates.
pub fn index_predictions(records: impl IntoIterator<Item = PredictionRecord>) -> Result<PredictionIndex> {
    let mut index = PredictionIndex::new();
    for r in records {
        if index.contains_key(&r.image_id) {
            return Err(Error::DuplicateId(r.image_id));
        }
        index.insert(r.image_id.clone(), r);
    }
    Ok(index)
}

/// An auxiliary score table keyed by image id, e.g. facial-attribute scores
/// produced by an external model.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtraTable {
    pub columns: Vec<String>,
    pub rows: Vec<(String, Vec<f64>)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JoinedRow {
    pub image_id: String,
    pub scores: [f64; 16],
    pub extra: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JoinedTable {
    pub extra_columns: Vec<String>,
    pub rows: Vec<JoinedRow>,
    /// Predictions with no matching extra row.
    pub dropped_predictions: usize,
    /// Extra rows with no matching prediction.
    pub dropped_extra: usize,
}

impl JoinedTable {
    /// All values of one column, prediction or extra, in row order.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        if let Some(i) = SCORE_COLUMNS.iter().position(|c| *c == name) {
            return Some(self.rows.iter().map(|r| r.scores[i]).collect());
        }
        let i = self.extra_columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r.extra[i]).collect())
    }
}

/// Inner join on image id, in prediction order.
pub fn join_scores(predictions: &[PredictionRecord], extra: &ExtraTable) -> Result<JoinedTable> {
    let mut index = BTreeMap::new();
    for (i, (id, values)) in extra.rows.iter().enumerate() {
        if values.len() != extra.columns.len() {
            return Err(Error::LengthMismatch { left: extra.columns.len(), right: values.len() });
        }
        if index.insert(id.as_str(), i).is_some() {
            return Err(Error::DuplicateId(id.clone()));
        }
    }
    let mut rows = Vec::new();
    let mut matched = 0;
    for p in predictions {
        if let Some(&i) = index.get(p.image_id.as_str()) {
            matched += 1;
            rows.push(JoinedRow { image_id: p.image_id.clone(), scores: p.scores(), extra: extra.rows[i].1.clone() });
        }
    }
    if rows.is_empty() {
        return Err(Error::JoinEmpty);
    }
    Ok(JoinedTable {
        extra_columns: extra.columns.clone(),
        rows,
        dropped_predictions: predictions.len() - matched,
        dropped_extra: extra.rows.len() - matched,
    })
}
