//! On-disk cache of reports keyed by a hash of the inputs and the operation.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{CliError, Report, ARTIFACT_VERSION};

pub const CACHE_ENV: &str = "BRAUERLIFT_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub artifact_version: String,
    pub json: String,
    pub text: String,
    pub verdict: Option<bool>,
}

/// SHA-256 over the group and table contents, the operation and the artifact version.
pub fn key(group: &str, table: Option<&str>, op: &str) -> String {
    let mut h = Sha256::new();
    for part in [ARTIFACT_VERSION, group, table.unwrap_or(""), op] {
        h.update((part.len() as u64).to_le_bytes());
        h.update(part.as_bytes());
    }
    hex::encode(h.finalize())
}

/// The cache directory: the explicit one, else the environment variable.
pub fn resolve_dir(explicit: Option<&Path>) -> Option<PathBuf> {
    explicit.map(Path::to_path_buf).or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
}

fn path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

/// A stored report, if present and written by this artifact version.
pub fn load(dir: &Path, key: &str) -> Option<Report> {
    let bytes = std::fs::read(path(dir, key)).ok()?;
    let e: CacheEntry = serde_json::from_slice(&bytes).ok()?;
    (e.key == key && e.artifact_version == ARTIFACT_VERSION).then_some(Report { json: e.json, text: e.text, verdict: e.verdict })
}

/// Writes the entry to a temporary file in `dir` and renames it into place.
pub fn store(dir: &Path, key: &str, report: &Report) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    let entry = CacheEntry {
        key: key.to_string(),
        artifact_version: ARTIFACT_VERSION.to_string(),
        json: report.json.clone(),
        text: report.text.clone(),
        verdict: report.verdict,
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    serde_json::to_writer(&mut tmp, &entry).map_err(|e| CliError::Io(e.to_string()))?;
    tmp.flush().map_err(io)?;
    tmp.persist(path(dir, key)).map_err(|e| io(e.error))?;
    Ok(())
}
