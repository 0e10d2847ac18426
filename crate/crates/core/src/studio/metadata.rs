//! Key-value sidecar written next to each CSV.

use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::Serialize;

use super::config::SweepConfig;
use crate::error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
struct RunSection<'a> {
    version: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    recipe: Option<&'a str>,
    rows: usize,
    started_unix_seconds: f64,
    elapsed_seconds: f64,
    assumptions: &'a [String],
}

#[derive(Serialize)]
struct Sidecar<'a> {
    run: RunSection<'a>,
    config: &'a SweepConfig,
}

#[derive(Debug, Clone)]
pub struct RunMetadata {
    pub recipe: Option<String>,
    pub assumptions: Vec<String>,
    pub rows: usize,
    pub started: SystemTime,
    pub elapsed: Duration,
    pub config: SweepConfig,
}

impl RunMetadata {
    pub fn render(&self) -> Result<String> {
        let started = self
            .started
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs_f64())
            .unwrap_or(0.0);
        let sidecar = Sidecar {
            run: RunSection {
                version: VERSION,
                recipe: self.recipe.as_deref(),
                rows: self.rows,
                started_unix_seconds: started,
                elapsed_seconds: self.elapsed.as_secs_f64(),
                assumptions: &self.assumptions,
            },
            config: &self.config,
        };
        toml::to_string(&sidecar).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn write(&self, csv_path: &Path) -> Result<PathBuf> {
        let path = sidecar_path(csv_path);
        std::fs::write(&path, self.render()?)?;
        Ok(path)
    }
}

/// `out.csv` -> `out.csv.meta.toml`
pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    let mut name = csv_path.as_os_str().to_owned();
    name.push(".meta.toml");
    PathBuf::from(name)
}
