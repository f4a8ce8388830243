//! Regions from a GeoJSON `FeatureCollection`.
//!
//! Each feature needs a `name` property and a `Polygon` or `MultiPolygon`
//! geometry. GeoJSON positions are `[lon, lat]`; they are swapped into the
//! `(lat, lon)` order used by the core.

use std::fs;
use std::path::Path;

use protest_core::geo::Region;
use serde_json::Value;

use crate::{ToolError, ToolResult};

fn ring(value: &Value) -> Result<Vec<(f64, f64)>, String> {
    let positions = value.as_array().ok_or("ring is not an array")?;
    positions
        .iter()
        .map(|p| {
            let p = p.as_array().filter(|p| p.len() >= 2).ok_or("position needs [lon, lat]")?;
            let lon = p[0].as_f64().ok_or("longitude is not a number")?;
            let lat = p[1].as_f64().ok_or("latitude is not a number")?;
            Ok((lat, lon))
        })
        .collect()
}

fn polygon_rings(value: &Value) -> Result<Vec<Vec<(f64, f64)>>, String> {
    value.as_array().ok_or("polygon is not an array of rings")?.iter().map(ring).collect()
}

pub fn parse_regions(text: &str) -> Result<Vec<Region>, String> {
    let doc: Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    if doc.get("type").and_then(Value::as_str) != Some("FeatureCollection") {
        return Err("expected a FeatureCollection".into());
    }
    let features = doc.get("features").and_then(Value::as_array).ok_or("missing `features`")?;
    let mut regions: Vec<Region> = Vec::with_capacity(features.len());
    for (i, f) in features.iter().enumerate() {
        let name = f
            .pointer("/properties/name")
            .and_then(Value::as_str)
            .ok_or_else(|| format!("feature {i} has no `name` property"))?;
        if regions.iter().any(|r| r.name == name) {
            return Err(format!("duplicate region name `{name}`"));
        }
        let geometry = f.get("geometry").ok_or_else(|| format!("feature `{name}` has no geometry"))?;
        let coords = geometry.get("coordinates").ok_or_else(|| format!("feature `{name}` has no coordinates"))?;
        let rings = match geometry.get("type").and_then(Value::as_str) {
            Some("Polygon") => polygon_rings(coords),
            Some("MultiPolygon") => coords
                .as_array()
                .ok_or_else(|| "multipolygon is not an array".to_string())
                .and_then(|polys| {
                    polys.iter().map(polygon_rings).collect::<Result<Vec<_>, _>>().map(|v| v.concat())
                }),
            other => Err(format!("unsupported geometry {other:?}")),
        }
        .map_err(|e| format!("feature `{name}`: {e}"))?;
        regions.push(Region::new(name, rings).map_err(|e| e.to_string())?);
    }
    Ok(regions)
}

pub fn read_regions(path: &Path) -> ToolResult<Vec<Region>> {
    let text = fs::read_to_string(path).map_err(|e| ToolError::io(path, e))?;
    parse_regions(&text).map_err(|m| ToolError::Core(protest_core::Error::InvalidRegion(format!("{}: {m}", path.display()))))
}

/// A GeoJSON document for axis-aligned square regions; handy for fixtures.
pub fn squares_geojson(squares: &[(&str, f64, f64, f64)]) -> String {
    let features: Vec<Value> = squares
        .iter()
        .map(|&(name, lat0, lon0, size)| {
            let ring = vec![
                [lon0, lat0],
                [lon0 + size, lat0],
                [lon0 + size, lat0 + size],
                [lon0, lat0 + size],
                [lon0, lat0],
            ];
            serde_json::json!({
                "type": "Feature",
                "properties": {"name": name},
                "geometry": {"type": "Polygon", "coordinates": [ring]},
            })
        })
        .collect();
    serde_json::to_string_pretty(&serde_json::json!({"type": "FeatureCollection", "features": features}))
        .expect("serializable")
}
