//! Generic keyed numeric tables and output helpers.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use protest_core::scores::ExtraTable;
use protest_core::stats::Column;

use crate::{ToolError, ToolResult};

/// A CSV table whose first column is a string key and whose remaining
/// columns are numeric.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedTable {
    pub key: String,
    pub columns: Vec<String>,
    pub ids: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl NamedTable {
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn named_column(&self, name: &str) -> ToolResult<Column> {
        self.column(name)
            .map(|v| Column::new(name, v))
            .ok_or_else(|| ToolError::Config(format!("no column `{name}`")))
    }

    /// Row lookup by key.
    pub fn index(&self) -> BTreeMap<&str, usize> {
        self.ids.iter().enumerate().map(|(i, id)| (id.as_str(), i)).collect()
    }

    pub fn into_extra(self) -> ExtraTable {
        ExtraTable { columns: self.columns, rows: self.ids.into_iter().zip(self.rows).collect() }
    }
}

pub fn read_named_table(path: &Path) -> ToolResult<NamedTable> {
    let mut reader = csv::ReaderBuilder::new()
        .from_path(path)
        .map_err(|e| csv_error(path, e))?;
    let headers = reader.headers().map_err(|e| csv_error(path, e))?.clone();
    let mut names = headers.iter().map(|h| h.trim().to_string());
    let key = names.next().ok_or_else(|| ToolError::format(path, Some(1), "empty header"))?;
    let columns: Vec<String> = names.collect();
    let mut ids = Vec::new();
    let mut rows = Vec::new();
    let mut seen = BTreeMap::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| csv_error(path, e))?;
        let id = record.get(0).unwrap_or_default().trim().to_string();
        if id.is_empty() {
            return Err(ToolError::format(path, Some(line), "empty key"));
        }
        if seen.insert(id.clone(), line).is_some() {
            return Err(ToolError::format(path, Some(line), format!("duplicate key `{id}`")));
        }
        let mut values = Vec::with_capacity(columns.len());
        for (j, raw) in record.iter().skip(1).enumerate() {
            let v: f64 = raw.trim().parse().map_err(|_| {
                ToolError::format(path, Some(line), format!("{}: `{raw}` is not a number", columns[j]))
            })?;
            values.push(v);
        }
        ids.push(id);
        rows.push(values);
    }
    Ok(NamedTable { key, columns, ids, rows })
}

/// Reads a single-column id list (header required).
pub fn read_id_list(path: &Path) -> ToolResult<Vec<String>> {
    let mut reader = csv::ReaderBuilder::new().from_path(path).map_err(|e| csv_error(path, e))?;
    let mut ids = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let id = record.get(0).unwrap_or_default().trim();
        if !id.is_empty() {
            ids.push(id.to_string());
        }
    }
    Ok(ids)
}

pub(crate) fn csv_error(path: &Path, e: csv::Error) -> ToolError {
    let line = e.position().map(|p| p.line() as usize);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => ToolError::io(path, io),
        other => ToolError::format(path, line, format!("{other:?}")),
    }
}

/// Writes `contents` to `path` through a sibling temp file and a rename, so
/// readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> ToolResult<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| ToolError::io(dir, e))?;
    let file_name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{file_name}.tmp{}", std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(ToolError::io(path, e));
    }
    Ok(())
}

/// Renders rows with the `csv` writer (quoting as needed).
pub fn render_csv<I, R>(header: &[&str], rows: I) -> Vec<u8>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

/// Fixed-precision float cell; empty for `None`.
pub fn cell(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6}")).unwrap_or_default()
}

/// Full-precision float cell (shortest round-trip form).
pub fn exact(v: f64) -> String {
    format!("{v}")
}
