//! Sweep configuration: a Cartesian grid over couplings, decoherence rate, time,
//! initial-state angle and teleportation input.
//!
//! Every numeric axis is a scalar, an explicit list, or `{ start, stop, count }`.

use serde::{Deserialize, Serialize};

use crate::dynamics::InitialFamily;
use crate::error::{Error, Result};
use crate::model::Variant;

pub const DEFAULT_GRID_CAP: u64 = 10_000_000;

fn default_grid_cap() -> u64 {
    DEFAULT_GRID_CAP
}

fn is_default_cap(cap: &u64) -> bool {
    *cap == DEFAULT_GRID_CAP
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Axis {
    Scalar(f64),
    List(Vec<f64>),
    Range { start: f64, stop: f64, count: usize },
}

impl Axis {
    pub fn range(start: f64, stop: f64, count: usize) -> Self {
        Axis::Range { start, stop, count }
    }

    pub fn validate(&self, name: &str) -> Result<()> {
        match self {
            Axis::Scalar(x) if !x.is_finite() => {
                Err(Error::InvalidRange(format!("{name}: non-finite value")))
            }
            Axis::List(v) if v.is_empty() => {
                Err(Error::InvalidRange(format!("{name}: empty list")))
            }
            Axis::List(v) if v.iter().any(|x| !x.is_finite()) => {
                Err(Error::InvalidRange(format!("{name}: non-finite value")))
            }
            Axis::Range { start, stop, count } => {
                if !start.is_finite() || !stop.is_finite() {
                    Err(Error::InvalidRange(format!("{name}: non-finite bound")))
                } else if *count == 0 {
                    Err(Error::InvalidRange(format!("{name}: count must be >= 1")))
                } else if start > stop {
                    Err(Error::InvalidRange(format!(
                        "{name}: start {start} > stop {stop}"
                    )))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Axis::Scalar(_) => 1,
            Axis::List(v) => v.len(),
            Axis::Range { count, .. } => *count,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid values. Range endpoints are hit exactly.
    pub fn values(&self) -> Vec<f64> {
        match self {
            Axis::Scalar(x) => vec![*x],
            Axis::List(v) => v.clone(),
            Axis::Range { start, stop, count } => {
                if *count == 1 {
                    return vec![*start];
                }
                let last = count - 1;
                (0..*count)
                    .map(|i| {
                        if i == last {
                            *stop
                        } else {
                            start + (stop - start) * (i as f64) / (last as f64)
                        }
                    })
                    .collect()
            }
        }
    }
}

impl From<f64> for Axis {
    fn from(x: f64) -> Self {
        Axis::Scalar(x)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn values(&self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Output {
    C,
    #[serde(rename = "C_out")]
    COut,
    F,
    #[serde(rename = "F_asymptotic")]
    FAsymptotic,
}

impl Output {
    /// Needs an evolved state at time `t`.
    pub fn needs_time(&self) -> bool {
        !matches!(self, Output::FAsymptotic)
    }

    pub fn needs_input(&self) -> bool {
        !matches!(self, Output::C)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelAxes {
    pub variant: OneOrMany<Variant>,
    #[serde(rename = "J")]
    pub j: Axis,
    pub gamma: Axis,
    #[serde(rename = "Jz")]
    pub jz: Axis,
    #[serde(rename = "D")]
    pub d: Axis,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialAxes {
    pub family: OneOrMany<InitialFamily>,
    pub alpha: Axis,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputAxes {
    pub theta: Axis,
    pub phi: Axis,
}

/// Full sweep description. Grid nesting follows the CSV column order
/// (variant, J, gamma, Jz, D, Gamma, family, alpha, t, theta, phi), last fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub outputs: Vec<Output>,
    #[serde(rename = "Gamma")]
    pub decoherence: Axis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time: Option<Axis>,
    #[serde(default = "default_grid_cap", skip_serializing_if = "is_default_cap")]
    pub grid_cap: u64,
    pub model: ModelAxes,
    pub initial: InitialAxes,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<InputAxes>,
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: SweepConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn wants(&self, out: Output) -> bool {
        self.outputs.contains(&out)
    }

    pub fn validate(&self) -> Result<()> {
        if self.outputs.is_empty() {
            return Err(Error::Config("at least one output is required".into()));
        }
        if matches!(&self.model.variant, OneOrMany::Many(v) if v.is_empty())
            || matches!(&self.initial.family, OneOrMany::Many(v) if v.is_empty())
        {
            return Err(Error::InvalidRange("empty variant or family list".into()));
        }
        self.model.j.validate("J")?;
        self.model.gamma.validate("gamma")?;
        self.model.jz.validate("Jz")?;
        self.model.d.validate("D")?;
        self.decoherence.validate("Gamma")?;
        if self.decoherence.values().iter().any(|g| *g < 0.0) {
            return Err(Error::InvalidRange("Gamma must be >= 0".into()));
        }
        self.initial.alpha.validate("alpha")?;
        match &self.time {
            Some(t) => {
                t.validate("time")?;
                if t.values().iter().any(|x| *x < 0.0) {
                    return Err(Error::InvalidRange("time must be >= 0".into()));
                }
            }
            None if self.outputs.iter().any(Output::needs_time) => {
                return Err(Error::Config(
                    "outputs C, C_out and F need a time axis".into(),
                ));
            }
            None => {}
        }
        match &self.input {
            Some(inp) => {
                inp.theta.validate("theta")?;
                inp.phi.validate("phi")?;
            }
            None if self.outputs.iter().any(Output::needs_input) => {
                return Err(Error::Config(
                    "outputs C_out, F and F_asymptotic need an input section".into(),
                ));
            }
            None => {}
        }
        let points = self.point_count();
        if points > self.grid_cap as u128 {
            return Err(Error::GridTooLarge {
                points,
                cap: self.grid_cap,
            });
        }
        Ok(())
    }

    /// Product of all axis lengths.
    pub fn point_count(&self) -> u128 {
        let lens = [
            self.model.variant.values().len(),
            self.model.j.len(),
            self.model.gamma.len(),
            self.model.jz.len(),
            self.model.d.len(),
            self.decoherence.len(),
            self.initial.family.values().len(),
            self.initial.alpha.len(),
            self.time.as_ref().map_or(1, Axis::len),
            self.input.as_ref().map_or(1, |i| i.theta.len()),
            self.input.as_ref().map_or(1, |i| i.phi.len()),
        ];
        lens.iter().map(|&n| n as u128).product()
    }
}
