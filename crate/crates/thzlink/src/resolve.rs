//! Turns a merged [`RunConfig`] into concrete model inputs and the fully
//! populated config that is echoed into reports.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde::Deserialize;
use thzlink_core::atmosphere::{
    lines, Atmosphere, AtmosphericConditions, ConditionPreset, LineCatalog,
};
use thzlink_core::linkbudget::{
    AxisKind, GridAxis, LinkModel, LinkScenario, ScenarioPreset, TxPowerMode,
};
use thzlink_core::quantities::GHZ;
use thzlink_core::txchain::{ComponentTable, Technology, TxNoiseModel};

use crate::config::{RunConfig, TxPowerSetting};

/// Marks the built-in data tables in echoed configs.
pub const BUNDLED: &str = "bundled";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

const BASE_KEYS: &[&str] = &["command", "format", "out"];
const COND_KEYS: &[&str] = &[
    "cond",
    "temperature_k",
    "pressure_pa",
    "water_vapor_density_g_m3",
];
const LINE_KEYS: &[&str] = &["oxygen_lines", "water_lines"];
const RANGE_KEYS: &[&str] = &["start_ghz", "stop_ghz", "step_ghz"];
const SCENARIO_KEYS: &[&str] = &[
    "preset",
    "distance_m",
    "freq_ghz",
    "tx_gain_dbi",
    "rx_gain_dbi",
    "tx_power",
    "tech",
    "tx_noise_model",
    "components",
    "fractional_bandwidth",
    "points",
];

fn allowed_keys(command: &str) -> Vec<&'static str> {
    let groups: &[&[&str]] = match command {
        "absorption" => &[BASE_KEYS, COND_KEYS, LINE_KEYS, RANGE_KEYS],
        "txnf" => &[BASE_KEYS, RANGE_KEYS, &["tech", "components"]],
        "casestudy" => &[
            BASE_KEYS,
            COND_KEYS,
            LINE_KEYS,
            SCENARIO_KEYS,
            RANGE_KEYS,
            &["distance_start_m", "distance_stop_m", "distance_points"],
        ],
        "sensitivity" => &[BASE_KEYS, LINE_KEYS, SCENARIO_KEYS, RANGE_KEYS],
        "dominance" => &[
            BASE_KEYS,
            COND_KEYS,
            LINE_KEYS,
            SCENARIO_KEYS,
            &["axis", "axis2", "log_spacing"],
        ],
        "sweep" => &[
            BASE_KEYS,
            COND_KEYS,
            LINE_KEYS,
            SCENARIO_KEYS,
            &["axis", "log_spacing"],
        ],
        _ => &[],
    };
    groups.iter().flat_map(|g| g.iter().copied()).collect()
}

/// One sweep or grid axis in engine units (Hz for frequency).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisSpec {
    pub kind: AxisKind,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl AxisSpec {
    /// Parses `kind:start:stop:steps`, frequency in GHz.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').map(str::trim).collect();
        let [kind, start, stop, steps] = parts[..] else {
            bail!("axis `{text}`: expected kind:start:stop:steps");
        };
        let kind: AxisKind = kind.parse()?;
        let scale = if kind == AxisKind::Frequency {
            GHZ
        } else {
            1.0
        };
        let num = |s: &str| -> Result<f64> {
            s.parse()
                .with_context(|| format!("axis `{text}`: bad number `{s}`"))
        };
        let steps: usize = steps
            .parse()
            .with_context(|| format!("axis `{text}`: bad step count `{steps}`"))?;
        let spec = Self {
            kind,
            start: num(start)? * scale,
            stop: num(stop)? * scale,
            steps,
        };
        spec.grid()?;
        Ok(spec)
    }

    pub fn grid(&self) -> Result<GridAxis> {
        Ok(GridAxis::new(self.kind, self.start, self.stop, self.steps)?)
    }

    pub fn values(&self, log: bool) -> Result<Vec<f64>> {
        if !log {
            return Ok(self.grid()?.values()?);
        }
        if self.start.is_nan() || self.start <= 0.0 {
            bail!("log spacing needs a positive axis start");
        }
        let exp = GridAxis::new(self.kind, self.start.log10(), self.stop.log10(), self.steps)?;
        Ok(exp.values()?.into_iter().map(|e| 10f64.powf(e)).collect())
    }
}

/// Resolved run inputs.
#[derive(Debug, Clone)]
pub struct Resolved {
    /// Fully populated config, written into every report.
    pub config: RunConfig,
    pub model: LinkModel,
    pub conditions: AtmosphericConditions,
    pub format: Format,
    pub out: PathBuf,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConditionsFile {
    temperature_k: f64,
    pressure_pa: f64,
    water_vapor_density_g_m3: f64,
}

fn load_conditions_file(path: &Path) -> Result<AtmosphericConditions> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading conditions {}", path.display()))?;
    let value = if text.trim_start().starts_with('{') {
        serde_json::from_str(&text)?
    } else {
        serde_json::Value::Object(crate::config::parse_key_values(&text)?)
    };
    let c: ConditionsFile = serde_json::from_value(value)
        .with_context(|| format!("parsing conditions {}", path.display()))?;
    Ok(AtmosphericConditions {
        temperature_k: c.temperature_k,
        pressure_pa: c.pressure_pa,
        water_vapor_density_g_m3: c.water_vapor_density_g_m3,
    })
}

fn read_table(path: &str) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {path}"))
}

fn is_bundled(path: &Option<String>) -> bool {
    path.as_deref().is_none_or(|p| p == BUNDLED)
}

fn scenario_preset(c: &RunConfig) -> Result<ScenarioPreset> {
    let name = c
        .preset
        .as_deref()
        .ok_or_else(|| anyhow!("missing preset"))?;
    Ok(name.parse()?)
}

/// Merges the optional config file under the flag layer and resolves all
/// defaults for `command`.
pub fn resolve(flags: &RunConfig, config_file: Option<&Path>) -> Result<Resolved> {
    let command = flags
        .command
        .clone()
        .ok_or_else(|| anyhow!("missing command"))?;
    let merged = match config_file {
        Some(path) => {
            let file = RunConfig::from_file(path)?;
            if let Some(c) = &file.command {
                if *c != command {
                    bail!("config file is for `{c}`, not `{command}`");
                }
            }
            file.overlay(flags)
        }
        None => flags.clone(),
    };

    let allowed = allowed_keys(&command);
    if let serde_json::Value::Object(map) = serde_json::to_value(&merged)? {
        if let Some(key) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
            bail!("`{key}` does not apply to {command}");
        }
    }

    let mut c = merged;
    let format = match c.format.get_or_insert_with(|| "csv".into()).as_str() {
        "csv" => Format::Csv,
        "json" => Format::Json,
        other => bail!("unknown format `{other}` (csv or json)"),
    };
    let out = PathBuf::from(
        c.out
            .clone()
            .ok_or_else(|| anyhow!("missing output path (--out)"))?,
    );

    let uses = |key: &str| allowed.contains(&key);

    let mut conditions = AtmosphericConditions::hot();
    if uses("cond") {
        let cond = c.cond.get_or_insert_with(|| "hot".into()).clone();
        conditions = match cond.parse::<ConditionPreset>() {
            Ok(p) => p.conditions(),
            Err(_) => load_conditions_file(Path::new(&cond))?,
        };
        conditions.temperature_k = *c.temperature_k.get_or_insert(conditions.temperature_k);
        conditions.pressure_pa = *c.pressure_pa.get_or_insert(conditions.pressure_pa);
        conditions.water_vapor_density_g_m3 = *c
            .water_vapor_density_g_m3
            .get_or_insert(conditions.water_vapor_density_g_m3);
        conditions.validate()?;
    }

    let atmosphere =
        if uses("oxygen_lines") && !(is_bundled(&c.oxygen_lines) && is_bundled(&c.water_lines)) {
            let ox = match &c.oxygen_lines {
                Some(p) if p != BUNDLED => read_table(p)?,
                _ => lines::OXYGEN_CSV.to_string(),
            };
            let wv = match &c.water_lines {
                Some(p) if p != BUNDLED => read_table(p)?,
                _ => lines::WATER_CSV.to_string(),
            };
            Atmosphere::new(LineCatalog::from_csv(&ox, &wv)?)
        } else {
            Atmosphere::itu_p676()
        };
    if uses("oxygen_lines") {
        c.oxygen_lines.get_or_insert_with(|| BUNDLED.into());
        c.water_lines.get_or_insert_with(|| BUNDLED.into());
    }

    let components = if is_bundled(&c.components) {
        ComponentTable::bundled()
    } else {
        ComponentTable::from_csv(&read_table(c.components.as_deref().unwrap_or_default())?)?
    };
    if uses("components") {
        c.components.get_or_insert_with(|| BUNDLED.into());
    }

    match command.as_str() {
        "absorption" => {
            c.start_ghz.get_or_insert(30.0);
            c.stop_ghz.get_or_insert(500.0);
            c.step_ghz.get_or_insert(0.1);
        }
        "txnf" => {
            let tech = c.tech.get_or_insert_with(|| "all".into());
            if tech != "all" {
                tech.parse::<Technology>()?;
            }
            c.start_ghz.get_or_insert(30.0);
            c.stop_ghz.get_or_insert(500.0);
            c.step_ghz.get_or_insert(1.0);
        }
        _ => {}
    }

    if uses("preset") {
        let default_preset = match command.as_str() {
            "casestudy" => None,
            "sensitivity" => Some("long"),
            _ => Some("short"),
        };
        if c.preset.is_none() {
            c.preset = default_preset.map(Into::into);
        }
        let preset = scenario_preset(&c).context("casestudy needs --preset short|medium|long")?;
        let template = preset.scenario(300.0 * GHZ);
        c.freq_ghz
            .get_or_insert(template.carrier_frequency_hz / GHZ);
        c.distance_m.get_or_insert(template.distance_m());
        c.tx_gain_dbi.get_or_insert(template.geometry.tx_gain_dbi);
        c.rx_gain_dbi.get_or_insert(template.geometry.rx_gain_dbi);
        c.tx_power.get_or_insert(match template.tx_power_mode {
            TxPowerMode::Fixed { dbm } => TxPowerSetting::Dbm(dbm),
            TxPowerMode::SaturatedModel => TxPowerSetting::Named("psat".into()),
        });
        c.tech
            .get_or_insert_with(|| template.technology.name().into());
        c.tx_noise_model
            .get_or_insert_with(|| template.tx_noise_model.name().into());
        c.fractional_bandwidth
            .get_or_insert(template.fractional_bandwidth);
        c.points.get_or_insert(template.integration_points);

        if uses("start_ghz") {
            c.start_ghz.get_or_insert(30.0);
            c.stop_ghz.get_or_insert(500.0);
            c.step_ghz.get_or_insert(1.0);
        }
        if uses("distance_start_m") && preset == ScenarioPreset::Short {
            c.distance_start_m.get_or_insert(1e-3);
            c.distance_stop_m.get_or_insert(1.0);
            c.distance_points.get_or_insert(61);
        }
        if uses("axis") {
            let user_axis = c.axis.is_some();
            c.axis.get_or_insert_with(|| match preset {
                ScenarioPreset::Short => "distance:0.001:1:61".into(),
                _ => "frequency:30:500:471".into(),
            });
            let log_default = !user_axis && preset == ScenarioPreset::Short && c.axis2.is_none();
            c.log_spacing.get_or_insert(log_default);
        }
    }

    let resolved = Resolved {
        config: c,
        model: LinkModel::new(atmosphere, components),
        conditions,
        format,
        out,
    };
    if uses("preset") {
        resolved.scenario()?.validate()?;
        if uses("axis") {
            resolved.axes()?;
        }
    }
    Ok(resolved)
}

impl Resolved {
    pub fn command(&self) -> &str {
        self.config.command.as_deref().unwrap_or_default()
    }

    pub fn preset(&self) -> Result<ScenarioPreset> {
        scenario_preset(&self.config)
    }

    pub fn tx_noise_model(&self) -> Result<Option<TxNoiseModel>> {
        Ok(match &self.config.tx_noise_model {
            Some(m) => Some(m.parse()?),
            None => None,
        })
    }

    /// Scenario template for scenario commands.
    pub fn scenario(&self) -> Result<LinkScenario> {
        let c = &self.config;
        let need = |v: Option<f64>, key: &str| v.ok_or_else(|| anyhow!("missing {key}"));
        let mut s = self.preset()?.scenario(need(c.freq_ghz, "freq_ghz")? * GHZ);
        s.geometry.distance_m = need(c.distance_m, "distance_m")?;
        s.geometry.tx_gain_dbi = need(c.tx_gain_dbi, "tx_gain_dbi")?;
        s.geometry.rx_gain_dbi = need(c.rx_gain_dbi, "rx_gain_dbi")?;
        s.tx_power_mode = match &c.tx_power {
            Some(TxPowerSetting::Dbm(dbm)) => TxPowerMode::Fixed { dbm: *dbm },
            Some(TxPowerSetting::Named(n)) if n == "psat" => TxPowerMode::SaturatedModel,
            Some(TxPowerSetting::Named(n)) => bail!("tx_power `{n}`: expected dBm or psat"),
            None => bail!("missing tx_power"),
        };
        s.conditions = self.conditions;
        s.technology = c.tech.as_deref().unwrap_or("cmos").parse()?;
        s.tx_noise_model = self.tx_noise_model()?.unwrap_or_default();
        s.fractional_bandwidth = need(c.fractional_bandwidth, "fractional_bandwidth")?;
        s.integration_points = c.points.ok_or_else(|| anyhow!("missing points"))?;
        Ok(s)
    }

    /// Frequency grid in GHz from start/stop/step.
    pub fn frequency_grid_ghz(&self) -> Result<Vec<f64>> {
        let c = &self.config;
        let (Some(a), Some(b), Some(h)) = (c.start_ghz, c.stop_ghz, c.step_ghz) else {
            bail!("missing frequency range");
        };
        Ok(thzlink_core::atmosphere::regular_grid(a, b, h)?)
    }

    pub fn axes(&self) -> Result<(AxisSpec, Option<AxisSpec>)> {
        let c = &self.config;
        let a1 = AxisSpec::parse(c.axis.as_deref().ok_or_else(|| anyhow!("missing axis"))?)?;
        let a2 = c.axis2.as_deref().map(AxisSpec::parse).transpose()?;
        if let Some(a2) = &a2 {
            if a2.kind == a1.kind {
                bail!("both axes vary {}", a1.kind);
            }
            if c.log_spacing == Some(true) {
                bail!("log_spacing applies to one-axis sweeps");
            }
        }
        Ok((a1, a2))
    }
}
