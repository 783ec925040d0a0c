//! Provenance records written next to every CLI output.

use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::io::write_new_atomic;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub run_id: String,
    pub command: String,
    pub tool_version: String,
    /// Fully resolved parameters of the run (generator parameters, fit
    /// settings, cutoffs), whatever the command consumed.
    pub params: serde_json::Value,
    pub seed: Option<u64>,
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
    pub duration_secs: f64,
}

impl RunManifest {
    pub fn new(run_id: impl Into<String>, command: impl Into<String>) -> Self {
        Self {
            run_id: run_id.into(),
            command: command.into(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            params: serde_json::Value::Null,
            seed: None,
            inputs: Vec::new(),
            outputs: Vec::new(),
            duration_secs: 0.0,
        }
    }

    pub fn file_name(run_id: &str) -> String {
        format!("{run_id}.manifest.json")
    }

    pub fn path_in(&self, dir: &Path) -> PathBuf {
        dir.join(Self::file_name(&self.run_id))
    }

    pub fn set_duration(&mut self, elapsed: Duration) {
        self.duration_secs = elapsed.as_secs_f64();
    }

    /// Writes the manifest into `dir`; fails if one with the same run id is
    /// already there.
    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        let path = self.path_in(dir);
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        write_new_atomic(&path, text.as_bytes())?;
        Ok(path)
    }
}
