//! JSON run configuration and unit-suffixed flag values.

use serde::Deserialize;
use std::path::{Path, PathBuf};

use super::report::Format;
use super::CliError;
use crate::mobility::DEFAULT_ES_DBM;
use crate::params::{OfdmaConfig, AEROMACS_PROFILE_NAME};
use crate::propagation::{AEROMACS_MAX_PATH_LOSS_DB, EXCESS_LOSS_DEFAULT_DB_PER_KM};
use crate::units::kmh_to_mps;

pub const DEFAULT_CARRIER_FREQ_HZ: f64 = 5.1e9;

/// A profile given by name or spelled out in full.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ProfileRef {
    Named(String),
    Inline(OfdmaConfig),
}

/// Contents of a `--config` file. Every key is optional; flags win.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub profile: Option<ProfileRef>,
    pub carrier_freq_hz: Option<f64>,
    pub es_dbm: Option<f64>,
    pub excess_loss_alpha: Option<f64>,
    pub max_path_loss_db: Option<f64>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Input(format!("cannot read config file {}: {e}", path.display()))
        })?;
        serde_json::from_str(&text).map_err(|e| {
            CliError::Input(format!("invalid config file {}: {e}", path.display()))
        })
    }
}

/// Configuration after merging the file with command-line overrides.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub profile_name: String,
    pub profile: OfdmaConfig,
    pub carrier_freq_hz: f64,
    pub es_dbm: f64,
    pub excess_loss_alpha: f64,
    pub max_path_loss_db: f64,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_file(file: ConfigFile, default_format: Format) -> Result<Self, CliError> {
        let (profile_name, profile) = match file.profile {
            None => (AEROMACS_PROFILE_NAME.to_string(), OfdmaConfig::aeromacs()),
            Some(ProfileRef::Named(name)) => resolve_profile(&name)?,
            Some(ProfileRef::Inline(cfg)) => ("inline".to_string(), cfg),
        };
        Ok(RunConfig {
            profile_name,
            profile,
            carrier_freq_hz: file.carrier_freq_hz.unwrap_or(DEFAULT_CARRIER_FREQ_HZ),
            es_dbm: file.es_dbm.unwrap_or(DEFAULT_ES_DBM),
            excess_loss_alpha: file.excess_loss_alpha.unwrap_or(EXCESS_LOSS_DEFAULT_DB_PER_KM),
            max_path_loss_db: file.max_path_loss_db.unwrap_or(AEROMACS_MAX_PATH_LOSS_DB),
            format: file.format.unwrap_or(default_format),
            output: file.output,
        })
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.profile
            .validate()
            .map_err(|e| CliError::Input(e.to_string()))?;
        positive("carrier_freq_hz", self.carrier_freq_hz)?;
        positive("max_path_loss_db", self.max_path_loss_db)?;
        if !self.es_dbm.is_finite() {
            return Err(CliError::Input("es_dbm must be finite".into()));
        }
        if !(self.excess_loss_alpha.is_finite() && self.excess_loss_alpha >= 0.0) {
            return Err(CliError::Input(
                "excess_loss_alpha must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

pub fn resolve_profile(name: &str) -> Result<(String, OfdmaConfig), CliError> {
    OfdmaConfig::named(name)
        .map(|cfg| (name.to_string(), cfg))
        .ok_or_else(|| {
            CliError::Input(format!(
                "profile: unknown profile {name:?} (known: {AEROMACS_PROFILE_NAME})"
            ))
        })
}

fn positive(field: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::Input(format!("{field} must be positive, got {v}")))
    }
}

fn split_number(s: &str) -> (&str, &str) {
    let idx = s
        .find(|c: char| !(c.is_ascii_digit() || matches!(c, '.' | '-' | '+' | 'e' | 'E')))
        .unwrap_or(s.len());
    (s[..idx].trim(), s[idx..].trim())
}

/// Parses a speed such as `100kmh`, `100km/h`, `27.8mps`, `27.8m/s` or `27.8` (m/s).
pub fn parse_speed(s: &str) -> Result<f64, String> {
    let (num, unit) = split_number(s);
    let value: f64 = num
        .parse()
        .map_err(|_| format!("invalid speed {s:?}"))?;
    let mps = match unit.to_ascii_lowercase().as_str() {
        "" | "mps" | "m/s" => value,
        "kmh" | "km/h" | "kph" => kmh_to_mps(value),
        other => return Err(format!("unknown speed unit {other:?} in {s:?}")),
    };
    if mps.is_finite() {
        Ok(mps)
    } else {
        Err(format!("invalid speed {s:?}"))
    }
}

/// Parses a length such as `2.5km`, `2500m` or `2500` (metres).
pub fn parse_length(s: &str) -> Result<f64, String> {
    let (num, unit) = split_number(s);
    let value: f64 = num
        .parse()
        .map_err(|_| format!("invalid length {s:?}"))?;
    let m = match unit.to_ascii_lowercase().as_str() {
        "" | "m" => value,
        "km" => value * 1000.0,
        "ft" => value * 0.3048,
        other => return Err(format!("unknown length unit {other:?} in {s:?}")),
    };
    if m.is_finite() {
        Ok(m)
    } else {
        Err(format!("invalid length {s:?}"))
    }
}
