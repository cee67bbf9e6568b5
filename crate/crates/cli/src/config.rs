use std::path::Path;

use anyhow::{bail, Context};
use clap::ValueEnum;
use lpequiv_core::{Limits, Settings, Tolerances};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TRange {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl TRange {
    /// Parses `MIN:MAX:STEPS`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, steps] = parts[..] else {
            return Err(format!("expected MIN:MAX:STEPS, got {s:?}"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
        let steps = steps
            .trim()
            .parse::<usize>()
            .map_err(|e| format!("{steps:?}: {e}"))?;
        let r = Self {
            min: num(min)?,
            max: num(max)?,
            steps,
        };
        r.check()?;
        Ok(r)
    }

    fn check(&self) -> Result<(), String> {
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(format!(
                "t range needs min < max, got {}:{}",
                self.min, self.max
            ));
        }
        if self.steps < 2 {
            return Err(format!(
                "t range needs at least 2 steps, got {}",
                self.steps
            ));
        }
        Ok(())
    }
}

/// Settings file read from the path in `LPEQUIV_CONFIG` (or `--config`).
/// Command-line flags take precedence over every field.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub tolerances: Tolerances,
    pub radius_override: Option<f64>,
    pub p_values: Option<Vec<f64>>,
    pub t_range: Option<TRange>,
    pub output_format: Option<Format>,
    pub caps: Limits,
}

impl RunConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let cfg: RunConfig =
            toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> anyhow::Result<()> {
        if !self.tolerances.all_positive() {
            bail!("all tolerances must be positive and finite");
        }
        if let Some(r) = &self.t_range {
            r.check().map_err(anyhow::Error::msg)?;
        }
        if let Some(ps) = &self.p_values {
            if ps.is_empty() {
                bail!("p_values is empty");
            }
        }
        Ok(())
    }

    pub fn settings(&self) -> Settings {
        Settings {
            tol: self.tolerances,
            limits: self.caps,
        }
    }
}

/// Exponent list given as one comma-separated argument.
#[derive(Debug, Clone, PartialEq)]
pub struct PList(pub Vec<f64>);

/// Comma-separated list of exponents; empty lists are rejected.
pub fn parse_p_list(s: &str) -> Result<PList, String> {
    let ps = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    if ps.is_empty() {
        return Err("exponent list is empty".into());
    }
    Ok(PList(ps))
}
