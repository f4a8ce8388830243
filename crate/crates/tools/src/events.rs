//! Declarative event definitions (TOML).
//!
//! ```toml
//! [[event]]
//! name = "blm"
//! mode = "hashtag"
//! hashtags = ["BlackLivesMatter"]
//!
//! [[event]]
//! name = "caracas"
//! mode = "region-window"
//! region = "venezuela"
//! start = "2017-04-01"
//! end = "2017-08-01"
//! require_protest = true
//! ```

use std::fs;
use std::path::Path;

use protest_core::geo::{EventMode, EventSpec};
use serde::Deserialize;

use crate::tweets::parse_timestamp;
use crate::{ToolError, ToolResult};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEvent {
    name: String,
    mode: String,
    #[serde(default)]
    hashtags: Vec<String>,
    region: Option<String>,
    start: Option<String>,
    end: Option<String>,
    #[serde(default)]
    require_protest: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    #[serde(default)]
    event: Vec<RawEvent>,
}

fn convert(raw: RawEvent) -> Result<EventSpec, String> {
    let name = raw.name;
    let mode = match raw.mode.as_str() {
        "hashtag" => {
            if raw.region.is_some() || raw.start.is_some() || raw.end.is_some() {
                return Err(format!("event `{name}`: hashtag mode takes no region or dates"));
            }
            if raw.hashtags.is_empty() {
                return Err(format!("event `{name}`: no hashtags"));
            }
            EventMode::Hashtag(
                raw.hashtags.iter().map(|t| t.trim_start_matches('#').to_lowercase()).collect(),
            )
        }
        "region-window" => {
            if !raw.hashtags.is_empty() {
                return Err(format!("event `{name}`: region-window mode takes no hashtags"));
            }
            let region = raw.region.ok_or_else(|| format!("event `{name}`: missing region"))?;
            let instant = |v: Option<String>, which: &str| {
                let v = v.ok_or_else(|| format!("event `{name}`: missing {which}"))?;
                parse_timestamp(&v).ok_or_else(|| format!("event `{name}`: bad {which} `{v}`"))
            };
            let start = instant(raw.start, "start")?;
            let end = instant(raw.end, "end")?;
            if end <= start {
                return Err(format!("event `{name}`: end must be after start"));
            }
            EventMode::RegionWindow { region, start, end, require_protest: raw.require_protest }
        }
        other => return Err(format!("event `{name}`: unknown mode `{other}`")),
    };
    Ok(EventSpec { name, mode })
}

pub fn parse_events(text: &str) -> Result<Vec<EventSpec>, String> {
    let file: RawFile = toml::from_str(text).map_err(|e| e.to_string())?;
    let events: Vec<EventSpec> = file.event.into_iter().map(convert).collect::<Result<_, _>>()?;
    for (i, e) in events.iter().enumerate() {
        if events[..i].iter().any(|o| o.name == e.name) {
            return Err(format!("duplicate event name `{}`", e.name));
        }
    }
    Ok(events)
}

pub fn read_events(path: &Path) -> ToolResult<Vec<EventSpec>> {
    let text = fs::read_to_string(path).map_err(|e| ToolError::io(path, e))?;
    parse_events(&text).map_err(|m| ToolError::format(path, None, m))
}
