// Copyright 2026 Herald Contributors
// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::table::Table;
use crate::error::Result;

/// Provenance record written next to every output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub scheme: Option<String>,
    pub parameters: serde_json::Value,
    pub seed: Option<u64>,
    pub started: String,
    pub finished: String,
    pub output: String,
    /// Hex SHA-256 of the output file.
    pub sha256: String,
}

impl RunManifest {
    pub fn new(command: &str, scheme: Option<String>, parameters: serde_json::Value, seed: Option<u64>) -> Self {
        let now = chrono::Utc::now().to_rfc3339();
        Self {
            tool: "herald".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            scheme,
            parameters,
            seed,
            started: now.clone(),
            finished: now,
            output: String::new(),
            sha256: String::new(),
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// `<output>.manifest.json`.
pub fn manifest_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Writes `bytes` to `path` and the manifest beside it; returns the manifest
/// path.
pub fn write_with_manifest(path: &Path, bytes: &[u8], mut manifest: RunManifest) -> Result<PathBuf> {
    std::fs::write(path, bytes)?;
    manifest.output = path.display().to_string();
    manifest.sha256 = sha256_hex(bytes);
    manifest.finished = chrono::Utc::now().to_rfc3339();
    let mpath = manifest_path(path);
    let mut json = serde_json::to_string_pretty(&manifest)?;
    json.push('\n');
    std::fs::write(&mpath, json)?;
    Ok(mpath)
}

pub fn write_table(path: &Path, table: &Table, manifest: RunManifest) -> Result<PathBuf> {
    write_with_manifest(path, table.to_csv_string()?.as_bytes(), manifest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn manifest_sits_beside_output() {
        assert_eq!(
            manifest_path(Path::new("out/a.csv")),
            PathBuf::from("out/a.csv.manifest.json")
        );
    }
}
