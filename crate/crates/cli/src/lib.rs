//! Command-line front end for `brauerlift-core`: group and character-table
//! files, JSON and text reports, and an on-disk result cache.

pub mod cache;
pub mod commands;
pub mod input;
pub mod json;

use std::path::PathBuf;

pub use commands::{run, Command};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Version of the computations behind cached results.
pub const ARTIFACT_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), "-", env!("CARGO_PKG_VERSION"));

/// Default working precision `N`.
pub const DEFAULT_PRECISION: u32 = 6;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{file}:{line}: {msg}")]
    Parse { file: String, line: usize, msg: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{0}")]
    Compute(String),
    #[error("io error: {0}")]
    Io(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Everything a command needs besides its own arguments.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Fixture name or path to a group file.
    pub group: Option<String>,
    /// Character table overriding the one found next to the group file.
    pub table: Option<PathBuf>,
    pub p: Option<u32>,
    pub precision: u32,
    /// Size of the residue field, overriding the splitting-field choice.
    pub q: Option<u64>,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(group: &str, p: u32) -> Self {
        RunConfig {
            group: Some(group.to_string()),
            table: None,
            p: Some(p),
            precision: DEFAULT_PRECISION,
            q: None,
            seed: 1,
            cache_dir: None,
            format: Format::Json,
        }
    }

    pub fn group(&self) -> Result<&str, CliError> {
        self.group.as_deref().ok_or_else(|| CliError::Config("--group is required".into()))
    }

    /// The prime, checked together with the precision and `q`.
    pub fn prime(&self) -> Result<u32, CliError> {
        let p = self.p.ok_or_else(|| CliError::Config("--p is required".into()))?;
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(CliError::Config(format!("p = {p} is not prime")));
        }
        if self.precision == 0 {
            return Err(CliError::Config("precision must be at least 1".into()));
        }
        if let Some(q) = self.q {
            let mut k = q;
            while k % p as u64 == 0 {
                k /= p as u64;
            }
            if q < p as u64 || k != 1 {
                return Err(CliError::Config(format!("q = {q} is not a power of p = {p}")));
            }
        }
        Ok(p)
    }
}

/// The output of one command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    /// Pretty-printed JSON, newline terminated.
    pub json: String,
    pub text: String,
    /// `Some(false)` for a check that ran and failed.
    pub verdict: Option<bool>,
}

impl Report {
    pub fn render(&self, format: Format) -> &str {
        match format {
            Format::Json => &self.json,
            Format::Text => &self.text,
        }
    }

    /// 0 on success, 2 when a check computed a negative verdict.
    pub fn exit_code(&self) -> i32 {
        if self.verdict == Some(false) {
            2
        } else {
            0
        }
    }
}
