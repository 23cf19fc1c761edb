use core::fmt;
use core::str::FromStr;

use alloc::string::ToString;
use alloc::vec::Vec;

use super::{LinkModel, LinkScenario};
use crate::error::{domain, Error, Result};

/// Scenario parameter varied along a sweep or grid axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum AxisKind {
    /// Carrier frequency, Hz.
    Frequency,
    /// Link distance, m.
    Distance,
    /// TX noise figure in dB replacing the cascaded chain value.
    NfDbOverride,
    /// Total path loss in dB replacing free-space plus absorption.
    TotalPathlossDbOverride,
}

impl AxisKind {
    pub const ALL: [AxisKind; 4] = [
        Self::Frequency,
        Self::Distance,
        Self::NfDbOverride,
        Self::TotalPathlossDbOverride,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Frequency => "frequency",
            Self::Distance => "distance",
            Self::NfDbOverride => "nf_db_override",
            Self::TotalPathlossDbOverride => "total_pathloss_db_override",
        }
    }
}

impl fmt::Display for AxisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxisKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "axis",
                name: s.to_string(),
            })
    }
}

/// Returns `template` with the axis parameter set to `value`.
pub fn apply_axis(template: &LinkScenario, axis: AxisKind, value: f64) -> Result<LinkScenario> {
    let mut s = *template;
    match axis {
        AxisKind::Frequency => s.carrier_frequency_hz = value,
        AxisKind::Distance => s.geometry.distance_m = value,
        AxisKind::NfDbOverride => s.tx_noise_figure_override_db = Some(value),
        AxisKind::TotalPathlossDbOverride => s.path_loss_override_db = Some(value),
    }
    s.validate()?;
    Ok(s)
}

/// Evenly spaced axis, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GridAxis {
    pub kind: AxisKind,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl GridAxis {
    pub fn new(kind: AxisKind, start: f64, stop: f64, steps: usize) -> Result<Self> {
        let axis = Self {
            kind,
            start,
            stop,
            steps,
        };
        axis.values()?;
        Ok(axis)
    }

    pub fn values(&self) -> Result<Vec<f64>> {
        if !self.start.is_finite() {
            return Err(domain("axis start", self.start, "finite"));
        }
        if !self.stop.is_finite() {
            return Err(domain("axis stop", self.stop, "finite"));
        }
        match self.steps {
            0 => Err(Error::Degenerate {
                what: "grid axis",
                reason: "zero steps",
            }),
            1 if self.start == self.stop => Ok(alloc::vec![self.start]),
            1 => Err(Error::Degenerate {
                what: "grid axis",
                reason: "a single step needs start == stop",
            }),
            n if self.start < self.stop => {
                let h = (self.stop - self.start) / (n - 1) as f64;
                Ok((0..n)
                    .map(|i| {
                        if i == n - 1 {
                            self.stop
                        } else {
                            self.start + h * i as f64
                        }
                    })
                    .collect())
            }
            _ => Err(Error::Degenerate {
                what: "grid axis",
                reason: "start must be below stop",
            }),
        }
    }
}

/// Carrier-frequency degradation over a two-parameter grid, row-major with
/// `axis1` as the outer index.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DegradationGrid {
    pub axis1: GridAxis,
    pub axis2: GridAxis,
    pub axis1_values: Vec<f64>,
    pub axis2_values: Vec<f64>,
    pub degradation_db: Vec<f64>,
}

impl DegradationGrid {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.degradation_db[i * self.axis2_values.len() + j]
    }
}

impl LinkModel {
    /// Spot degradation for one cell.
    pub fn grid_cell(
        &self,
        template: &LinkScenario,
        axes: (&GridAxis, &GridAxis),
        values: (f64, f64),
    ) -> Result<f64> {
        let s = apply_axis(template, axes.0.kind, values.0)?;
        let s = apply_axis(&s, axes.1.kind, values.1)?;
        Ok(self.dominance_check(&s)?.spot_degradation_db)
    }

    /// Validates the axes and returns their sample values.
    pub fn grid_values(axis1: &GridAxis, axis2: &GridAxis) -> Result<(Vec<f64>, Vec<f64>)> {
        if axis1.kind == axis2.kind {
            return Err(Error::Degenerate {
                what: "parametric grid",
                reason: "both axes vary the same parameter",
            });
        }
        Ok((axis1.values()?, axis2.values()?))
    }

    pub fn parametric_grid(
        &self,
        template: &LinkScenario,
        axis1: GridAxis,
        axis2: GridAxis,
    ) -> Result<DegradationGrid> {
        let (v1, v2) = Self::grid_values(&axis1, &axis2)?;
        let mut degradation_db = Vec::with_capacity(v1.len() * v2.len());
        for &a in &v1 {
            for &b in &v2 {
                degradation_db.push(self.grid_cell(template, (&axis1, &axis2), (a, b))?);
            }
        }
        Ok(DegradationGrid {
            axis1,
            axis2,
            axis1_values: v1,
            axis2_values: v2,
            degradation_db,
        })
    }
}
