//! Report envelopes and file output.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use thzlink_core::noise::{
    DOMINANCE_RATIO, DOMINANCE_RATIO_REPORT, DOMINANCE_THRESHOLD_DB, DOMINANCE_THRESHOLD_REPORT_DB,
    TIER_BOUNDARIES_DB,
};
use thzlink_core::quantities::{BOLTZMANN, SPEED_OF_LIGHT};

use crate::config::RunConfig;
use crate::resolve::Format;
use crate::table::Table;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub boltzmann_j_per_k: f64,
    pub speed_of_light_m_per_s: f64,
    /// Unrounded `10^0.1 − 1`, used in every comparison.
    pub dominance_ratio: f64,
    pub dominance_threshold_db: f64,
    /// Rounded values as quoted in design tables.
    pub dominance_ratio_report: f64,
    pub dominance_threshold_report_db: f64,
    pub tier_boundaries_db: [f64; 3],
}

impl Default for Constants {
    fn default() -> Self {
        Self {
            boltzmann_j_per_k: BOLTZMANN,
            speed_of_light_m_per_s: SPEED_OF_LIGHT,
            dominance_ratio: DOMINANCE_RATIO,
            dominance_threshold_db: DOMINANCE_THRESHOLD_DB,
            dominance_ratio_report: DOMINANCE_RATIO_REPORT,
            dominance_threshold_report_db: DOMINANCE_THRESHOLD_REPORT_DB,
            tier_boundaries_db: TIER_BOUNDARIES_DB,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelNotes {
    /// Placement of the noise integration band relative to the carrier.
    pub band_placement: String,
    /// Path loss applied to the thermal-only signal.
    pub thermal_only_signal: String,
    pub degradation: String,
}

impl Default for ModelNotes {
    fn default() -> Self {
        Self {
            band_placement: "centered".into(),
            thermal_only_signal: "free-space loss only".into(),
            degradation: "band-integrated snr_baseline - snr_baseline_plus_tx; dominance columns at the carrier".into(),
        }
    }
}

/// One report file. CSV output carries the envelope minus the payload in a
/// `.meta.json` sidecar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub tool_version: String,
    pub name: String,
    pub resolved_config: RunConfig,
    pub tx_noise_model: Option<String>,
    pub constants: Constants,
    pub model: ModelNotes,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payload: Option<Table>,
}

impl ReportEnvelope {
    pub fn new(name: &str, config: &RunConfig, table: Table) -> Self {
        Self {
            tool_version: TOOL_VERSION.into(),
            name: name.into(),
            resolved_config: config.clone(),
            tx_noise_model: config.tx_noise_model.clone(),
            constants: Constants::default(),
            model: ModelNotes::default(),
            payload: Some(table),
        }
    }
}

/// Sidecar path for a CSV file: `x.csv` becomes `x.meta.json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("meta.json")
}

/// Writes one report at `path`, returning the files created.
pub fn write_report(
    path: &Path,
    format: Format,
    envelope: &ReportEnvelope,
) -> Result<Vec<PathBuf>> {
    let write = |p: &Path, bytes: &[u8]| {
        fs::write(p, bytes).with_context(|| format!("writing {}", p.display()))
    };
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(envelope)?;
            text.push('\n');
            write(path, text.as_bytes())?;
            Ok(vec![path.to_path_buf()])
        }
        Format::Csv => {
            let table = envelope.payload.as_ref().context("report has no payload")?;
            let mut buf = Vec::new();
            table.write_csv(&mut buf)?;
            write(path, &buf)?;
            let meta = ReportEnvelope {
                payload: None,
                ..envelope.clone()
            };
            let mut text = serde_json::to_string_pretty(&meta)?;
            text.push('\n');
            let side = sidecar_path(path);
            write(&side, text.as_bytes())?;
            Ok(vec![path.to_path_buf(), side])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::Cell;

    #[test]
    fn envelope_round_trip() {
        let mut t = Table::new(["f_ghz", "tier"]);
        t.push(vec![Cell::from(300.0), Cell::from("onset")])
            .unwrap();
        let cfg = RunConfig {
            command: Some("sweep".into()),
            tx_noise_model: Some("output_referred".into()),
            ..Default::default()
        };
        let e = ReportEnvelope::new("sweep", &cfg, t);
        let text = serde_json::to_string(&e).unwrap();
        assert_eq!(serde_json::from_str::<ReportEnvelope>(&text).unwrap(), e);
        assert_eq!(e.constants.tier_boundaries_db, [1.0, 3.0, 5.0]);
        assert_eq!(e.constants.dominance_threshold_report_db, -5.9);
    }

    #[test]
    fn sidecar_names() {
        assert_eq!(
            sidecar_path(Path::new("out/a.csv")),
            PathBuf::from("out/a.meta.json")
        );
        assert_eq!(sidecar_path(Path::new("b")), PathBuf::from("b.meta.json"));
    }
}
