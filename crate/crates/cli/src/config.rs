//! TOML scenario files. Every table rejects unknown keys; flags given on the
//! command line override the file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use qiopa::Configuration;
use serde::Deserialize;

use crate::angle::AngleValue;
use crate::error::{usage, CliResult};

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub configuration: Option<Configuration>,
    pub gain: Option<f64>,
    pub mean_photons: Option<f64>,
    pub phi: Option<AngleValue>,
    pub detectors: Option<DetectorsConfig>,
    pub grid: Option<GridConfig>,
    pub sweep: Option<OneOrMany<SweepConfig>>,
    pub verify: Option<VerifyConfig>,
    pub state: Option<StateConfig>,
    pub output: Option<OutputConfig>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectorsConfig {
    pub k1: Option<DetectorConfig>,
    pub k2: Option<DetectorConfig>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectorConfig {
    pub rotator_angle: Option<AngleValue>,
    pub psi_alpha: Option<AngleValue>,
    pub psi_beta: Option<AngleValue>,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeConfig {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub preset: Option<String>,
    /// "slice", "marginal" or "both"
    pub mode: Option<String>,
    pub x_axis: Option<String>,
    pub y_axis: Option<String>,
    pub x: Option<RangeConfig>,
    pub y: Option<RangeConfig>,
    pub fixed: Option<BTreeMap<String, f64>>,
    pub max_samples: Option<usize>,
    pub normalize_check: Option<bool>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub var: String,
    pub start: AngleValue,
    pub stop: AngleValue,
    pub count: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn to_vec(&self) -> Vec<T> {
        match self {
            OneOrMany::One(t) => vec![t.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    pub gains: Option<Vec<f64>>,
    pub convention_scale: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateConfig {
    pub truncation: Option<usize>,
    pub pbs_swap: Option<bool>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: Option<PathBuf>,
    pub stem: Option<String>,
}

pub fn load(path: Option<&Path>) -> CliResult<ScenarioConfig> {
    let Some(path) = path else {
        return Ok(ScenarioConfig::default());
    };
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}
