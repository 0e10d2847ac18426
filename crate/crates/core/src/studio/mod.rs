//! Sweep engine: configuration, figure recipes, CSV emission and run metadata.

mod config;
mod metadata;
mod recipes;
mod sweep;

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;
use std::time::{Instant, SystemTime};

pub use config::{
    Axis, InitialAxes, InputAxes, ModelAxes, OneOrMany, Output, SweepConfig, DEFAULT_GRID_CAP,
};
pub use metadata::{sidecar_path, RunMetadata, VERSION};
pub use recipes::{figure_recipe, recipe_names, FigureRecipe};
pub use sweep::{
    asymptotic_fidelity_curve, format_float, map_states, model_spectrum, run_oracle, run_sweep,
    sweep_rows, Channels, Grid, OracleReport, Outputs, Row, StatePoint, CSV_HEADER,
};

use crate::error::Result;

/// Runs `cfg` into a CSV file at `path` and writes the metadata sidecar beside it.
pub fn sweep_to_file(
    cfg: &SweepConfig,
    path: &Path,
    recipe: Option<&FigureRecipe>,
) -> Result<RunMetadata> {
    let started = SystemTime::now();
    let clock = Instant::now();
    let rows = run_sweep(cfg, BufWriter::new(File::create(path)?))?;
    let meta = RunMetadata {
        recipe: recipe.map(|r| r.name.to_string()),
        assumptions: recipe.map(|r| r.assumptions.clone()).unwrap_or_default(),
        rows,
        started,
        elapsed: clock.elapsed(),
        config: cfg.clone(),
    };
    meta.write(path)?;
    Ok(meta)
}
