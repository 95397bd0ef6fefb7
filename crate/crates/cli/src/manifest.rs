//! Run manifest: everything needed to replay a run.

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{AppError, AppResult};
use crate::io::write_atomic;
use crate::scenario_file::BasisSpec;

pub const MANIFEST_FILE: &str = "manifest.json";

/// Command-line settings layered over the scenario file.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub generations: Option<usize>,
    pub population: Option<usize>,
    pub topsis_basis: Option<BasisSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Running,
    Complete,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    pub scenario_path: PathBuf,
    /// SHA-256 of the scenario file bytes, hex.
    pub scenario_sha256: String,
    pub overrides: Overrides,
    /// Seed actually used.
    pub rng_seed: u64,
    pub output_dir: PathBuf,
    /// Worker threads; results do not depend on it.
    pub threads: Option<usize>,
    pub started_unix_s: u64,
    pub finished_unix_s: Option<u64>,
    pub status: RunStatus,
    pub versions: Versions,
    pub files: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Versions {
    pub quietvoyage: String,
    pub manifest_format: u32,
}

impl Versions {
    pub fn current() -> Self {
        Versions {
            quietvoyage: env!("CARGO_PKG_VERSION").to_string(),
            manifest_format: 1,
        }
    }
}

pub fn unix_now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

pub fn sha256_file(path: &Path) -> AppResult<String> {
    let bytes = std::fs::read(path).map_err(|e| AppError::io(path, e))?;
    Ok(Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect())
}

impl RunManifest {
    pub fn write(&self, dir: &Path) -> AppResult<()> {
        let mut text = serde_json::to_string_pretty(self).map_err(|e| AppError::parse(dir, e))?;
        text.push('\n');
        write_atomic(&dir.join(MANIFEST_FILE), text.as_bytes())
    }

    pub fn read(path: &Path) -> AppResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| AppError::parse(path, e))
    }

    /// Fails if the scenario file changed since the manifest was written.
    pub fn check_scenario(&self) -> AppResult<()> {
        let now = sha256_file(&self.scenario_path)?;
        if now != self.scenario_sha256 {
            return Err(AppError::CheckFailed(format!(
                "{} changed since the manifest was written",
                self.scenario_path.display()
            )));
        }
        Ok(())
    }
}
