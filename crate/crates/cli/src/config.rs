//! Resolved per-command settings: defaults, then the config file, then flags.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use gpa_core::analysis::DegreeMode;
use gpa_core::experiments::SweepParam;
use gpa_core::io::GraphFormat;
use gpa_core::validation::DEFAULT_DELTA;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::cli::{GlobalArgs, ValidateMode};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GenerateConfig {
    pub m: usize,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub n: usize,
    pub seed: u64,
    pub format: GraphFormat,
    pub name: String,
}

impl Default for GenerateConfig {
    fn default() -> Self {
        GenerateConfig {
            m: 2,
            a: 0.5,
            d: 0.3,
            n: 100_000,
            seed: 1,
            format: GraphFormat::Text,
            name: "graph".into(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AnalyzeConfig {
    pub input: Option<PathBuf>,
    /// Taken from the sidecar or a binary header when absent.
    pub m: Option<usize>,
    #[serde(rename = "A")]
    pub a: Option<f64>,
    #[serde(rename = "D")]
    pub d: Option<f64>,
    pub degree_mode: DegreeMode,
    pub min_count: u64,
}

impl Default for AnalyzeConfig {
    fn default() -> Self {
        AnalyzeConfig {
            input: None,
            m: None,
            a: None,
            d: None,
            degree_mode: DegreeMode::Multigraph,
            min_count: 10,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TheoryConfig {
    pub m: usize,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub d_max: usize,
    pub rel_tol: f64,
}

impl Default for TheoryConfig {
    fn default() -> Self {
        TheoryConfig {
            m: 2,
            a: 0.5,
            d: 0.3,
            d_max: 100,
            rel_tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    pub param: SweepParam,
    pub values: Vec<f64>,
    pub m: usize,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub n: usize,
    pub replicates: usize,
    pub seed: u64,
    pub rel_tol: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            param: SweepParam::A,
            values: vec![],
            m: 2,
            a: 0.5,
            d: 0.3,
            n: 100_000,
            replicates: 10,
            seed: 1,
            rel_tol: 1e-8,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ValidateConfig {
    pub mode: ValidateMode,
    pub m: usize,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub seed: u64,
    pub trials: u64,
    pub start_n: Option<usize>,
    pub n: usize,
    pub seeds: usize,
    pub n_grid: Vec<usize>,
    pub delta: f64,
    pub d_limit: Option<usize>,
    pub z_max: f64,
    pub cv_n_max: f64,
    pub cv_t_max: f64,
    pub slope_tol: f64,
}

impl Default for ValidateConfig {
    fn default() -> Self {
        ValidateConfig {
            mode: ValidateMode::Transitions,
            m: 2,
            a: 0.5,
            d: 0.3,
            seed: 1,
            trials: 100_000,
            start_n: None,
            n: 100_000,
            seeds: 10,
            n_grid: vec![1_000, 10_000, 100_000],
            delta: DEFAULT_DELTA,
            d_limit: None,
            z_max: 3.0,
            cv_n_max: 0.05,
            cv_t_max: 0.10,
            slope_tol: 0.15,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ClassifyConfig {
    pub m: usize,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "D")]
    pub d: f64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig { m: 2, a: 0.5, d: 0.3 }
    }
}

/// Reads a config file. A graph sidecar is accepted too, in which case its
/// embedded `config` object is used.
pub fn read_config_file(path: &Path) -> Result<Map<String, Value>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("{}", path.display()))?;
    let value: Value =
        serde_json::from_str(&text).with_context(|| format!("{}: invalid JSON", path.display()))?;
    let value = match value {
        Value::Object(mut obj) if obj.contains_key("format_version") => {
            obj.remove("config").unwrap_or(Value::Null)
        }
        v => v,
    };
    match value {
        Value::Object(obj) => Ok(obj),
        _ => bail!("{}: expected a JSON object of settings", path.display()),
    }
}

/// Layers defaults, file settings and flags into `C`. File keys unknown to
/// `C` are rejected; global flags are applied only where `C` has the key.
pub fn resolve<C, F>(global: &GlobalArgs, flags: &F) -> Result<C>
where
    C: Serialize + DeserializeOwned + Default,
    F: Serialize,
{
    let Value::Object(mut merged) = serde_json::to_value(C::default())? else {
        unreachable!("configs serialize to objects")
    };
    let known: Vec<String> = merged.keys().cloned().collect();
    if let Some(path) = &global.config {
        for (k, v) in read_config_file(path)? {
            if !known.contains(&k) {
                bail!("{}: unknown setting {k:?}", path.display());
            }
            merged.insert(k, v);
        }
    }
    let mut overrides = match serde_json::to_value(flags)? {
        Value::Object(obj) => obj,
        _ => Map::new(),
    };
    if let Some(seed) = global.seed {
        overrides.insert("seed".into(), seed.into());
    }
    if let Some(format) = global.format {
        overrides.insert("format".into(), serde_json::to_value(GraphFormat::from(format))?);
    }
    for (k, v) in overrides {
        if known.contains(&k) {
            merged.insert(k, v);
        }
    }
    serde_json::from_value(Value::Object(merged)).context("invalid settings")
}
