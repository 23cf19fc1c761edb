use alloc::boxed::Box;
use alloc::vec::Vec;

use super::{apply_axis, AxisKind, LinkEvaluation, LinkModel, LinkScenario};
use crate::error::{Error, Result};
use crate::txchain::TxNoiseModel;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepRow {
    pub axis_value: f64,
    pub evaluation: LinkEvaluation,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepResult {
    pub axis: AxisKind,
    pub tx_noise_model: TxNoiseModel,
    pub rows: Vec<SweepRow>,
}

impl LinkModel {
    /// Evaluates one sweep point. Errors carry the row index and value.
    pub fn sweep_row(
        &self,
        template: &LinkScenario,
        axis: AxisKind,
        index: usize,
        value: f64,
    ) -> Result<SweepRow> {
        let wrap = |error: Error| Error::SweepRow {
            index,
            value,
            error: Box::new(error),
        };
        let scenario = apply_axis(template, axis, value).map_err(wrap)?;
        let evaluation = self.evaluate(&scenario).map_err(wrap)?;
        Ok(SweepRow {
            axis_value: value,
            evaluation,
        })
    }

    /// Assembles a result from rows evaluated elsewhere (for example in
    /// parallel), keeping the given order.
    pub fn collect_sweep(
        template: &LinkScenario,
        axis: AxisKind,
        rows: impl IntoIterator<Item = Result<SweepRow>>,
    ) -> Result<SweepResult> {
        let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Err(Error::Degenerate {
                what: "sweep",
                reason: "no axis values",
            });
        }
        Ok(SweepResult {
            axis,
            tx_noise_model: template.tx_noise_model,
            rows,
        })
    }

    pub fn sweep(
        &self,
        template: &LinkScenario,
        axis: AxisKind,
        values: &[f64],
    ) -> Result<SweepResult> {
        let rows = values
            .iter()
            .enumerate()
            .map(|(i, &v)| self.sweep_row(template, axis, i, v));
        Self::collect_sweep(template, axis, rows)
    }

    pub fn sweep_distance(
        &self,
        template: &LinkScenario,
        distances_m: &[f64],
    ) -> Result<SweepResult> {
        self.sweep(template, AxisKind::Distance, distances_m)
    }

    pub fn sweep_frequency(
        &self,
        template: &LinkScenario,
        frequencies_hz: &[f64],
    ) -> Result<SweepResult> {
        self.sweep(template, AxisKind::Frequency, frequencies_hz)
    }
}
