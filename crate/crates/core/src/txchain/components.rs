//! Per-band component noise figures and gains.
//!
//! `components.csv` rows are `technology,stage,band_low_ghz,band_high_ghz,
//! nf_db,gain_db,provenance_note`. Provenance notes are carried along but
//! never enter the arithmetic.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{PowerModel, StageKind, Technology, TechnologyProfile};
use crate::error::{Error, Result};

const COMPONENTS_CSV: &str = include_str!("../../data/components.csv");

const HEADER: [&str; 7] = [
    "technology",
    "stage",
    "band_low_ghz",
    "band_high_ghz",
    "nf_db",
    "gain_db",
    "provenance_note",
];

/// Low and high edge of the frequency span every stage must cover, GHz.
pub const COVERAGE_GHZ: (f64, f64) = (30.0, 500.0);

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BandValue {
    pub low_ghz: f64,
    pub high_ghz: f64,
    pub noise_figure_db: f64,
    pub gain_db: f64,
    pub provenance: String,
}

impl BandValue {
    /// Interpolation anchor: the arithmetic band centre.
    pub fn center_ghz(&self) -> f64 {
        0.5 * (self.low_ghz + self.high_ghz)
    }
}

/// One stage's band table, sorted and contiguous.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ComponentBandSpec {
    pub kind: StageKind,
    pub bands: Vec<BandValue>,
}

impl ComponentBandSpec {
    pub fn new(kind: StageKind, mut bands: Vec<BandValue>) -> Result<Self> {
        let table_err = |reason: String| Error::Table {
            table: "component",
            line: 0,
            reason,
        };
        if bands.is_empty() {
            return Err(table_err(format!("no bands for {}", kind.name())));
        }
        bands.sort_by(|a, b| a.low_ghz.total_cmp(&b.low_ghz));
        for b in &bands {
            if b.noise_figure_db.is_nan()
                || b.noise_figure_db <= 0.0
                || !b.gain_db.is_finite()
                || b.high_ghz.is_nan()
                || b.low_ghz.is_nan()
                || b.high_ghz <= b.low_ghz
            {
                return Err(table_err(format!(
                    "{} band {}-{} GHz: need nf_db > 0, finite gain, low < high",
                    kind.name(),
                    b.low_ghz,
                    b.high_ghz
                )));
            }
        }
        for pair in bands.windows(2) {
            if pair[0].high_ghz != pair[1].low_ghz {
                return Err(table_err(format!(
                    "{} bands are not contiguous at {} / {} GHz",
                    kind.name(),
                    pair[0].high_ghz,
                    pair[1].low_ghz
                )));
            }
        }
        let (lo, hi) = (bands[0].low_ghz, bands[bands.len() - 1].high_ghz);
        if lo > COVERAGE_GHZ.0 || hi < COVERAGE_GHZ.1 {
            return Err(table_err(format!(
                "{} bands cover {lo}-{hi} GHz, need at least 30-500 GHz",
                kind.name()
            )));
        }
        Ok(Self { kind, bands })
    }

    /// Piecewise-linear (NF dB, gain dB) through the band centres, with the
    /// end segments extended linearly. No range check.
    pub fn at(&self, f_ghz: f64) -> (f64, f64) {
        let b = &self.bands;
        if b.len() == 1 {
            return (b[0].noise_figure_db, b[0].gain_db);
        }
        // Segment index: first segment whose right anchor is at or beyond f,
        // clamped so the outer segments extrapolate.
        let seg = b[1..b.len() - 1]
            .iter()
            .position(|band| f_ghz <= band.center_ghz())
            .unwrap_or(b.len() - 2);
        let (left, right) = (&b[seg], &b[seg + 1]);
        let t = (f_ghz - left.center_ghz()) / (right.center_ghz() - left.center_ghz());
        let lerp = |a: f64, z: f64| a + (z - a) * t;
        (
            lerp(left.noise_figure_db, right.noise_figure_db),
            lerp(left.gain_db, right.gain_db),
        )
    }
}

/// All technology profiles known to a run.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentTable {
    profiles: Vec<TechnologyProfile>,
}

impl Default for ComponentTable {
    fn default() -> Self {
        Self::bundled()
    }
}

impl ComponentTable {
    /// The CMOS and SiGe component survey shipped with the crate.
    pub fn bundled() -> Self {
        Self::from_csv(COMPONENTS_CSV).expect("bundled component table is valid")
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let err = |line: usize, reason: String| Error::Table {
            table: "component",
            line,
            reason,
        };
        let mut rows = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
            .filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = rows
            .next()
            .ok_or_else(|| err(1, "empty table".to_string()))?;
        let cols: Vec<_> = header.split(',').map(str::trim).collect();
        if cols != HEADER {
            return Err(err(hl, format!("expected header `{}`", HEADER.join(","))));
        }

        let mut entries: Vec<(Technology, StageKind, BandValue)> = Vec::new();
        for (line, row) in rows {
            let fields: Vec<_> = row.splitn(7, ',').map(str::trim).collect();
            if fields.len() < 6 {
                return Err(err(
                    line,
                    format!("expected 7 fields, found {}", fields.len()),
                ));
            }
            let technology: Technology = fields[0]
                .parse()
                .map_err(|e: Error| err(line, e.to_string()))?;
            let stage: StageKind = fields[1]
                .parse()
                .map_err(|e: Error| err(line, e.to_string()))?;
            let num = |i: usize| {
                fields[i]
                    .parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| {
                        err(
                            line,
                            format!("{} `{}` is not a number", HEADER[i], fields[i]),
                        )
                    })
            };
            entries.push((
                technology,
                stage,
                BandValue {
                    low_ghz: num(2)?,
                    high_ghz: num(3)?,
                    noise_figure_db: num(4)?,
                    gain_db: num(5)?,
                    provenance: fields.get(6).map(|s| s.to_string()).unwrap_or_default(),
                },
            ));
        }

        let mut profiles = Vec::new();
        for tech in Technology::ALL {
            if !entries.iter().any(|(t, _, _)| *t == tech) {
                continue;
            }
            let spec = |kind: StageKind| {
                let bands = entries
                    .iter()
                    .filter(|(t, k, _)| *t == tech && *k == kind)
                    .map(|(_, _, b)| b.clone())
                    .collect();
                ComponentBandSpec::new(kind, bands).map_err(|e| match e {
                    Error::Table { reason, .. } => err(0, format!("{}: {reason}", tech.name())),
                    other => other,
                })
            };
            profiles.push(TechnologyProfile {
                technology: tech,
                mixer: spec(StageKind::MixerPlusIf)?,
                power_amplifier: spec(StageKind::PowerAmplifier)?,
                power_model: PowerModel::for_technology(tech),
            });
        }
        if profiles.is_empty() {
            return Err(err(hl, "table has no rows".to_string()));
        }
        Ok(Self { profiles })
    }

    pub fn profiles(&self) -> &[TechnologyProfile] {
        &self.profiles
    }

    pub fn profile(&self, technology: Technology) -> Result<&TechnologyProfile> {
        self.profiles
            .iter()
            .find(|p| p.technology == technology)
            .ok_or_else(|| Error::UnknownName {
                kind: "technology in component table",
                name: technology.name().to_string(),
            })
    }
}
