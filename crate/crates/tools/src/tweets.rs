//! JSON-lines ingestion of geotagged posts.
//!
//! One object per line:
//! `{"id", "user_id", "created_at" (ISO-8601, UTC), "lat", "lon", "text", "image_id"?}`.
//! Bad lines are logged with a reason and skipped; they never abort the
//! stream. Input may arrive in arbitrary byte chunks: [`TweetIngestor`]
//! buffers at most one partial line.

use std::fmt;
use std::fs::File;
use std::io::Read;
use std::path::Path;

use chrono::{DateTime, NaiveDate, NaiveDateTime};
use protest_core::geo::{check_coordinates, extract_hashtags, GeoTweet};
use serde_json::Value;

use crate::tables::render_csv;
use crate::{ToolError, ToolResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectReason {
    /// Coordinates absent or null.
    NoGps,
    /// Coordinates outside [-90, 90] x [-180, 180].
    Range,
    /// Not JSON, not an object, bad encoding, or a required field missing or mistyped.
    Malformed,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RejectReason::NoGps => "no-gps",
            RejectReason::Range => "range",
            RejectReason::Malformed => "malformed",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rejection {
    pub line: usize,
    pub reason: RejectReason,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Ingested {
    pub tweets: Vec<GeoTweet>,
    pub rejections: Vec<Rejection>,
}

/// Parses an ISO-8601 instant to UTC Unix seconds. Accepts RFC 3339 with an
/// offset, a bare `YYYY-MM-DDTHH:MM:SS[.frac]` (taken as UTC) or a bare date.
pub fn parse_timestamp(raw: &str) -> Option<i64> {
    if let Ok(dt) = DateTime::parse_from_rfc3339(raw) {
        return Some(dt.timestamp());
    }
    for fmt in ["%Y-%m-%dT%H:%M:%S%.f", "%Y-%m-%d %H:%M:%S%.f"] {
        if let Ok(dt) = NaiveDateTime::parse_from_str(raw, fmt) {
            return Some(dt.and_utc().timestamp());
        }
    }
    NaiveDate::parse_from_str(raw, "%Y-%m-%d")
        .ok()
        .map(|d| d.and_hms_opt(0, 0, 0).expect("midnight exists").and_utc().timestamp())
}

fn id_field(obj: &serde_json::Map<String, Value>, key: &str) -> Result<String, String> {
    match obj.get(key) {
        Some(Value::String(s)) if !s.is_empty() => Ok(s.clone()),
        Some(Value::Number(n)) => Ok(n.to_string()),
        Some(_) => Err(format!("field `{key}` must be a string or number")),
        None => Err(format!("missing field `{key}`")),
    }
}

/// Parses one non-empty line.
pub fn parse_line(line: &str, line_no: usize) -> Result<GeoTweet, Rejection> {
    let reject = |reason, detail: String| Rejection { line: line_no, reason, detail };
    let malformed = |detail: String| reject(RejectReason::Malformed, detail);

    let value: Value = serde_json::from_str(line).map_err(|e| malformed(format!("invalid JSON: {e}")))?;
    let Value::Object(obj) = value else {
        return Err(malformed("record is not an object".into()));
    };
    let tweet_id = id_field(&obj, "id").map_err(malformed)?;
    let user_id = id_field(&obj, "user_id").map_err(malformed)?;
    let created = match obj.get("created_at") {
        Some(Value::String(s)) => s.as_str(),
        _ => return Err(malformed("missing or non-string `created_at`".into())),
    };
    let timestamp = parse_timestamp(created).ok_or_else(|| malformed(format!("bad timestamp `{created}`")))?;

    let coord = |key: &str| match obj.get(key) {
        None | Some(Value::Null) => Err(reject(RejectReason::NoGps, format!("no `{key}`"))),
        Some(Value::Number(n)) => n.as_f64().ok_or_else(|| malformed(format!("`{key}` is not finite"))),
        Some(_) => Err(malformed(format!("`{key}` is not a number"))),
    };
    let lat = coord("lat")?;
    let lon = coord("lon")?;
    check_coordinates(lat, lon).map_err(|e| reject(RejectReason::Range, e.to_string()))?;

    let text = match obj.get("text") {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(malformed("`text` is not a string".into())),
    };
    let image_id = match obj.get("image_id") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) if s.is_empty() => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(Value::Number(n)) => Some(n.to_string()),
        Some(_) => return Err(malformed("`image_id` is not a string".into())),
    };
    Ok(GeoTweet { tweet_id, user_id, timestamp, lat, lon, hashtags: extract_hashtags(&text), text, image_id })
}

/// Incremental line splitter over arbitrary byte chunks.
#[derive(Debug, Default)]
pub struct TweetIngestor {
    line: usize,
    pending: Vec<u8>,
    out: Ingested,
}

impl TweetIngestor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn feed(&mut self, mut chunk: &[u8]) {
        while let Some(pos) = chunk.iter().position(|&b| b == b'\n') {
            if self.pending.is_empty() {
                self.process(&chunk[..pos]);
            } else {
                self.pending.extend_from_slice(&chunk[..pos]);
                let line = std::mem::take(&mut self.pending);
                self.process(&line);
            }
            chunk = &chunk[pos + 1..];
        }
        self.pending.extend_from_slice(chunk);
    }

    fn process(&mut self, raw: &[u8]) {
        self.line += 1;
        let raw = raw.strip_suffix(b"\r").unwrap_or(raw);
        let line = match std::str::from_utf8(raw) {
            Ok(s) => s,
            Err(e) => {
                self.out.rejections.push(Rejection {
                    line: self.line,
                    reason: RejectReason::Malformed,
                    detail: format!("invalid UTF-8: {e}"),
                });
                return;
            }
        };
        if line.trim().is_empty() {
            return;
        }
        match parse_line(line, self.line) {
            Ok(t) => self.out.tweets.push(t),
            Err(r) => self.out.rejections.push(r),
        }
    }

    pub fn finish(mut self) -> Ingested {
        if !self.pending.is_empty() {
            let last = std::mem::take(&mut self.pending);
            self.process(&last);
        }
        self.out
    }
}

pub fn ingest_reader(mut reader: impl Read, path: &Path) -> ToolResult<Ingested> {
    let mut ingestor = TweetIngestor::new();
    let mut buf = vec![0u8; 64 * 1024];
    loop {
        let n = reader.read(&mut buf).map_err(|e| ToolError::io(path, e))?;
        if n == 0 {
            break;
        }
        ingestor.feed(&buf[..n]);
    }
    Ok(ingestor.finish())
}

pub fn ingest_file(path: &Path) -> ToolResult<Ingested> {
    let file = File::open(path).map_err(|e| ToolError::io(path, e))?;
    ingest_reader(file, path)
}

pub fn render_rejections(rejections: &[Rejection]) -> Vec<u8> {
    render_csv(
        &["line", "reason", "detail"],
        rejections.iter().map(|r| [r.line.to_string(), r.reason.to_string(), r.detail.clone()]),
    )
}

/// Canonical dump of accepted posts; used to compare ingestion runs.
pub fn render_tweets(tweets: &[GeoTweet]) -> Vec<u8> {
    render_csv(
        &["tweet_id", "user_id", "timestamp", "lat", "lon", "hashtags", "image_id", "text"],
        tweets.iter().map(|t| {
            [
                t.tweet_id.clone(),
                t.user_id.clone(),
                t.timestamp.to_string(),
                t.lat.to_string(),
                t.lon.to_string(),
                t.hashtags.join(" "),
                t.image_id.clone().unwrap_or_default(),
                t.text.clone(),
            ]
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = r#"{"id": 1, "user_id": "u1", "created_at": "2016-07-08T12:00:00Z", "lat": 40.0, "lon": -75.0, "text": "end #policeshooting", "image_id": "img1"}"#;

    #[test]
    fn good_record() {
        let t = parse_line(GOOD, 1).unwrap();
        assert_eq!(t.tweet_id, "1");
        assert_eq!(t.hashtags, vec!["policeshooting"]);
        assert_eq!(t.image_id.as_deref(), Some("img1"));
        assert_eq!(t.timestamp, 1_467_979_200);
    }

    #[test]
    fn rejection_reasons() {
        let no_gps = r#"{"id": "2", "user_id": "u", "created_at": "2016-07-08T12:00:00Z", "text": "x"}"#;
        assert_eq!(parse_line(no_gps, 4).unwrap_err().reason, RejectReason::NoGps);
        let null_gps = r#"{"id": "2", "user_id": "u", "created_at": "2016-07-08T12:00:00Z", "lat": null, "lon": 3}"#;
        assert_eq!(parse_line(null_gps, 4).unwrap_err().reason, RejectReason::NoGps);
        let range = r#"{"id": "2", "user_id": "u", "created_at": "2016-07-08T12:00:00Z", "lat": 91, "lon": 0}"#;
        assert_eq!(parse_line(range, 4).unwrap_err().reason, RejectReason::Range);
        assert_eq!(parse_line("{not json", 4).unwrap_err().reason, RejectReason::Malformed);
        assert_eq!(parse_line("[1,2]", 4).unwrap_err().reason, RejectReason::Malformed);
        let bad_time = r#"{"id": "2", "user_id": "u", "created_at": "yesterday", "lat": 1, "lon": 0}"#;
        assert_eq!(parse_line(bad_time, 4).unwrap_err().line, 4);
    }

    #[test]
    fn timestamps() {
        assert_eq!(parse_timestamp("1970-01-01T00:00:10Z"), Some(10));
        assert_eq!(parse_timestamp("1970-01-01T01:00:00+01:00"), Some(0));
        assert_eq!(parse_timestamp("1970-01-02"), Some(86_400));
        assert_eq!(parse_timestamp("1970-01-01T00:01:00"), Some(60));
        assert_eq!(parse_timestamp("nope"), None);
    }

    #[test]
    fn chunked_equals_whole() {
        let body = format!("{GOOD}\n\n{{broken\n\u{00e9}{GOOD}\r\n{GOOD}");
        let mut whole = TweetIngestor::new();
        whole.feed(body.as_bytes());
        let whole = whole.finish();
        assert_eq!(whole.tweets.len(), 2);
        assert_eq!(whole.rejections.len(), 2);
        for split in 1..body.len() {
            let mut chunked = TweetIngestor::new();
            let (a, b) = body.as_bytes().split_at(split);
            chunked.feed(a);
            chunked.feed(b);
            assert_eq!(chunked.finish(), whole);
        }
    }

    #[test]
    fn invalid_utf8_is_logged() {
        let mut ing = TweetIngestor::new();
        ing.feed(b"\xff\xfe\n");
        let out = ing.finish();
        assert_eq!(out.rejections[0].reason, RejectReason::Malformed);
    }
}
