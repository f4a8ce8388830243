//! Optional TOML run configuration.
//!
//! Every key mirrors a command-line flag; a flag given on the command line
//! wins over the file, and the file wins over built-in defaults.
//!
//! ```toml
//! seed = 7
//!
//! [fit_bt]
//! pseudo_count = 0.5
//! tol = 1e-9
//! max_iter = 10000
//!
//! [sample_pairs]
//! degree = 10
//! max_restarts = 100
//!
//! [filter]
//! target_recall = 0.9
//! low_cutoff = 0.05
//!
//! [geo]
//! violence_cutoff = 0.5
//! hashtags = ["blacklivesmatter"]
//! bins = 10
//!
//! [eval]
//! alpha = 0.0001
//! ```

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{ToolError, ToolResult};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitBtSection {
    pub pseudo_count: Option<f64>,
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplePairsSection {
    pub degree: Option<usize>,
    pub max_restarts: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterSection {
    pub target_recall: Option<f64>,
    pub low_cutoff: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeoSection {
    pub violence_cutoff: Option<f64>,
    pub hashtags: Option<Vec<String>>,
    pub bins: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalSection {
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub seed: Option<u64>,
    #[serde(default)]
    pub fit_bt: FitBtSection,
    #[serde(default)]
    pub sample_pairs: SamplePairsSection,
    #[serde(default)]
    pub filter: FilterSection,
    #[serde(default)]
    pub geo: GeoSection,
    #[serde(default)]
    pub eval: EvalSection,
}

impl Config {
    pub fn parse(text: &str) -> ToolResult<Self> {
        toml::from_str(text).map_err(|e| ToolError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> ToolResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| ToolError::io(path, e))?;
        Config::parse(&text).map_err(|e| ToolError::Config(format!("{}: {e}", path.display())))
    }
}

/// Flag, then config value, then default.
pub fn resolve<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}
