//! Run configuration: flat `key = value` or JSON files, merged with
//! command-line flags, resolved to concrete values and echoed into every
//! report.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// Transmit power: a fixed level in dBm or `"psat"` for the technology's
/// saturated-power trend.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TxPowerSetting {
    Dbm(f64),
    Named(String),
}

/// Every configurable key. All fields are optional; unset ones take the
/// command or preset default during resolution.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub freq_ghz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tx_gain_dbi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rx_gain_dbi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tx_power: Option<TxPowerSetting>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cond: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub temperature_k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pressure_pa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub water_vapor_density_g_m3: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tech: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tx_noise_model: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oxygen_lines: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub water_lines: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fractional_bandwidth: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub start_ghz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stop_ghz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step_ghz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance_start_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance_stop_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub log_spacing: Option<bool>,
}

macro_rules! overlay {
    ($base:ident, $top:ident; $($field:ident),* $(,)?) => {
        $( if $top.$field.is_some() { $base.$field = $top.$field.clone(); } )*
    };
}

impl RunConfig {
    /// Fields set in `top` replace those in `self`.
    pub fn overlay(mut self, top: &RunConfig) -> RunConfig {
        overlay!(self, top;
            command, preset, distance_m, freq_ghz, tx_gain_dbi, rx_gain_dbi, tx_power, cond,
            temperature_k, pressure_pa, water_vapor_density_g_m3, tech, tx_noise_model, components,
            oxygen_lines, water_lines, fractional_bandwidth, points, format, out, start_ghz, stop_ghz,
            step_ghz, distance_start_m, distance_stop_m, distance_points, axis, axis2, log_spacing,
        );
        self
    }

    pub fn from_file(path: &Path) -> Result<RunConfig> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// Accepts a JSON object or flat `key = value` lines (`#` comments).
    pub fn parse(text: &str) -> Result<RunConfig> {
        let value = if text.trim_start().starts_with('{') {
            serde_json::from_str(text)?
        } else {
            Value::Object(parse_key_values(text)?)
        };
        Ok(serde_json::from_value(value)?)
    }
}

/// Flat `key = value` text to a JSON object. Values that read as JSON
/// scalars (numbers, booleans) keep that type; anything else is a string.
pub fn parse_key_values(text: &str) -> Result<Map<String, Value>> {
    let mut map = Map::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("line {}: expected `key = value`", i + 1);
        };
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() {
            bail!("line {}: empty key", i + 1);
        }
        let parsed = match serde_json::from_str::<Value>(value) {
            Ok(v @ (Value::Number(_) | Value::Bool(_))) => v,
            _ => Value::String(value.trim_matches('"').to_string()),
        };
        if map.insert(key.to_string(), parsed).is_some() {
            bail!("line {}: duplicate key `{key}`", i + 1);
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_value_file() {
        let c = RunConfig::parse(
            "# link\npreset = medium\nfreq_ghz = 140\ntx_power = psat\nlog_spacing = true\n",
        )
        .unwrap();
        assert_eq!(c.preset.as_deref(), Some("medium"));
        assert_eq!(c.freq_ghz, Some(140.0));
        assert_eq!(c.tx_power, Some(TxPowerSetting::Named("psat".into())));
        assert_eq!(c.log_spacing, Some(true));
        let c = RunConfig::parse("tx_power = -3.5").unwrap();
        assert_eq!(c.tx_power, Some(TxPowerSetting::Dbm(-3.5)));
    }

    #[test]
    fn json_file() {
        let c = RunConfig::parse(r#"{"points": 101, "cond": "cold_dry"}"#).unwrap();
        assert_eq!(c.points, Some(101));
        assert_eq!(c.cond.as_deref(), Some("cold_dry"));
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(RunConfig::parse("frequency_ghz = 140").is_err());
        assert!(RunConfig::parse(r#"{"pionts": 3}"#).is_err());
        assert!(RunConfig::parse("points = 3\npoints = 5").is_err());
        assert!(RunConfig::parse("just words").is_err());
        assert!(RunConfig::parse("points = many").is_err());
    }

    #[test]
    fn overlay_prefers_top() {
        let base = RunConfig::parse("points = 101\ncond = hot").unwrap();
        let top = RunConfig {
            cond: Some("moderate".into()),
            ..Default::default()
        };
        let m = base.overlay(&top);
        assert_eq!(m.points, Some(101));
        assert_eq!(m.cond.as_deref(), Some("moderate"));
    }

    #[test]
    fn serialised_config_reads_back() {
        let c = RunConfig {
            command: Some("sweep".into()),
            distance_m: Some(0.001),
            tx_power: Some(TxPowerSetting::Dbm(0.0)),
            log_spacing: Some(false),
            ..Default::default()
        };
        let text = serde_json::to_string_pretty(&c).unwrap();
        assert_eq!(RunConfig::parse(&text).unwrap(), c);
    }
}
