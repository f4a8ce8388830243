//! Run manifests: what a command read, with which settings, and what it wrote.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::tables::write_atomic;
use crate::{ToolError, ToolResult};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    /// Effective parameters after flag/config/default resolution.
    pub config: Value,
    pub config_hash: String,
    pub seed: u64,
    pub tool_version: String,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub wall_time_secs: f64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn digest_file(path: &Path) -> ToolResult<FileDigest> {
    let bytes = fs::read(path).map_err(|e| ToolError::io(path, e))?;
    Ok(FileDigest { path: path.display().to_string(), sha256: sha256_hex(&bytes) })
}

/// Collects the pieces of a manifest while a command runs.
#[derive(Debug)]
pub struct ManifestBuilder {
    command: String,
    config: Value,
    seed: u64,
    inputs: Vec<FileDigest>,
    outputs: Vec<FileDigest>,
    out_dir: PathBuf,
}

impl ManifestBuilder {
    pub fn new(command: &str, config: Value, seed: u64, out_dir: &Path) -> Self {
        ManifestBuilder {
            command: command.to_string(),
            config,
            seed,
            inputs: Vec::new(),
            outputs: Vec::new(),
            out_dir: out_dir.to_path_buf(),
        }
    }

    pub fn input(&mut self, path: &Path) -> ToolResult<()> {
        self.inputs.push(digest_file(path)?);
        Ok(())
    }

    /// Writes `contents` to `name` under the output directory and records it.
    pub fn output(&mut self, name: &str, contents: &[u8]) -> ToolResult<PathBuf> {
        let path = self.out_dir.join(name);
        write_atomic(&path, contents)?;
        self.outputs.push(FileDigest { path: name.to_string(), sha256: sha256_hex(contents) });
        Ok(path)
    }

    pub fn finish(self, elapsed: Duration) -> ToolResult<RunManifest> {
        // serde_json maps keep keys sorted, so this rendering is canonical.
        let canonical = serde_json::to_vec(&self.config).expect("serializable config");
        let manifest = RunManifest {
            command: self.command,
            config_hash: sha256_hex(&canonical),
            config: self.config,
            seed: self.seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            inputs: self.inputs,
            outputs: self.outputs,
            wall_time_secs: elapsed.as_secs_f64(),
        };
        let mut json = serde_json::to_vec_pretty(&manifest).expect("serializable manifest");
        json.push(b'\n');
        write_atomic(&self.out_dir.join(MANIFEST_FILE), &json)?;
        Ok(manifest)
    }
}
