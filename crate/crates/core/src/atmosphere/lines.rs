//! Spectroscopic line tables for the line-by-line gas model.
//!
//! Each table is a small CSV: one header row, then `f0_ghz` followed by six
//! shape coefficients per line (`a1..a6` for oxygen, `b1..b6` for water
//! vapour) in the units of the published ITU-R P.676 annex tables.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Bundled oxygen line table.
pub const OXYGEN_CSV: &str = include_str!("../../data/oxygen_lines.csv");
/// Bundled water-vapour line table.
pub const WATER_CSV: &str = include_str!("../../data/water_lines.csv");

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpectroscopicLine {
    pub center_ghz: f64,
    pub coefficients: [f64; 6],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Species {
    Oxygen,
    WaterVapour,
}

impl Species {
    fn table_name(self) -> &'static str {
        match self {
            Species::Oxygen => "oxygen line",
            Species::WaterVapour => "water-vapour line",
        }
    }

    fn coefficient_prefix(self) -> char {
        match self {
            Species::Oxygen => 'a',
            Species::WaterVapour => 'b',
        }
    }
}

/// Immutable oxygen and water-vapour line tables plus the dry-air
/// continuum switch.
#[derive(Debug, Clone, PartialEq)]
pub struct LineCatalog {
    oxygen: Vec<SpectroscopicLine>,
    water: Vec<SpectroscopicLine>,
    dry_continuum: bool,
}

impl LineCatalog {
    /// The ITU-R P.676-10 Annex 1 tables shipped with the crate.
    pub fn itu_p676() -> Self {
        Self::from_csv(OXYGEN_CSV, WATER_CSV).expect("bundled line tables are valid")
    }

    pub fn from_csv(oxygen_csv: &str, water_csv: &str) -> Result<Self> {
        Ok(Self {
            oxygen: parse_table(oxygen_csv, Species::Oxygen)?,
            water: parse_table(water_csv, Species::WaterVapour)?,
            dry_continuum: true,
        })
    }

    /// No lines and no continuum: a transparent medium.
    pub fn vacuum() -> Self {
        Self {
            oxygen: Vec::new(),
            water: Vec::new(),
            dry_continuum: false,
        }
    }

    pub fn oxygen(&self) -> &[SpectroscopicLine] {
        &self.oxygen
    }

    pub fn water(&self) -> &[SpectroscopicLine] {
        &self.water
    }

    pub fn has_dry_continuum(&self) -> bool {
        self.dry_continuum
    }
}

pub fn parse_table(text: &str, species: Species) -> Result<Vec<SpectroscopicLine>> {
    let table = species.table_name();
    let err = |line: usize, reason: alloc::string::String| Error::Table {
        table,
        line,
        reason,
    };

    let mut rows = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = rows
        .next()
        .ok_or_else(|| err(1, "empty table".to_string()))?;
    let prefix = species.coefficient_prefix();
    let expected: Vec<_> = core::iter::once("f0_ghz".to_string())
        .chain((1..=6).map(|i| format!("{prefix}{i}")))
        .collect();
    let got: Vec<_> = header.split(',').map(str::trim).collect();
    if got != expected {
        return Err(err(
            header_line,
            format!("expected header `{}`, found `{header}`", expected.join(",")),
        ));
    }

    let mut lines = Vec::new();
    for (line_no, row) in rows {
        let mut fields = [0.0; 7];
        let mut count = 0;
        for (i, field) in row.split(',').enumerate() {
            if i >= 7 {
                return Err(err(line_no, "more than 7 fields".to_string()));
            }
            fields[i] = field
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| {
                    err(
                        line_no,
                        format!("field {} `{}` is not a number", i + 1, field.trim()),
                    )
                })?;
            count += 1;
        }
        if count != 7 {
            return Err(err(line_no, format!("expected 7 fields, found {count}")));
        }
        if fields[0] <= 0.0 {
            return Err(err(
                line_no,
                "center frequency must be positive".to_string(),
            ));
        }
        let mut coefficients = [0.0; 6];
        coefficients.copy_from_slice(&fields[1..]);
        lines.push(SpectroscopicLine {
            center_ghz: fields[0],
            coefficients,
        });
    }
    if lines.is_empty() {
        return Err(err(header_line, "table has no lines".to_string()));
    }
    Ok(lines)
}
