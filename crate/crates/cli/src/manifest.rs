use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use dipolenet_core::{AntennaConfig, DipoleParams, ScenarioConfig, Scheme, SweepKind};

use crate::error::CliError;

pub const MANIFEST_FILE: &str = "manifest.json";

/// What was run, recorded next to the outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum RunSpec {
    Sweep {
        kind: SweepKind,
        config: ScenarioConfig,
        values: Vec<f64>,
        /// Only for `air-tx`.
        air_tx_values: Vec<f64>,
        schemes: Vec<Scheme>,
    },
    Pattern {
        antenna: AntennaConfig,
        azimuth_step_deg: f64,
        polar_step_deg: f64,
        dipole: DipoleParams,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    /// Seconds since the Unix epoch.
    pub started_at: u64,
    pub run: RunSpec,
    /// Output files, relative to the manifest's directory.
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn new(run: RunSpec) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            started_at: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            run,
            outputs: Vec::new(),
        }
    }

    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self).map_err(anyhow::Error::from)?;
        std::fs::write(dir.join(MANIFEST_FILE), text + "\n")?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read manifest {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("invalid manifest {}: {e}", path.display())))
    }
}
