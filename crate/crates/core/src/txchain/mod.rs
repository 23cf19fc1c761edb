//! Transmitter chain: component survey, frequency interpolation, Friis
//! cascade, output noise PSD and saturated output power.
//!
//! The chain is an up-conversion mixer (with its IF/baseband load) feeding
//! a power amplifier. Stage values are tabulated per band and interpolated
//! linearly in dB against frequency through the band centres.

mod components;

use alloc::string::ToString;
use core::fmt;
use core::str::FromStr;

use crate::error::{domain, ensure_within, Error, Result};
use crate::quantities::{from_db, to_db, BOLTZMANN, GHZ};

pub use components::{BandValue, ComponentBandSpec, ComponentTable, COVERAGE_GHZ};

/// Carrier range accepted by the chain model, Hz.
pub const MIN_FREQUENCY_HZ: f64 = 30.0 * GHZ;
pub const MAX_FREQUENCY_HZ: f64 = 500.0 * GHZ;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Technology {
    Cmos,
    Sige,
}

impl Technology {
    pub const ALL: [Technology; 2] = [Technology::Cmos, Technology::Sige];

    pub fn name(self) -> &'static str {
        match self {
            Technology::Cmos => "cmos",
            Technology::Sige => "sige",
        }
    }
}

impl fmt::Display for Technology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Technology {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cmos" => Ok(Technology::Cmos),
            "sige" => Ok(Technology::Sige),
            _ => Err(Error::UnknownName {
                kind: "technology",
                name: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum StageKind {
    MixerPlusIf,
    PowerAmplifier,
}

impl StageKind {
    pub fn name(self) -> &'static str {
        match self {
            StageKind::MixerPlusIf => "mixer_plus_if",
            StageKind::PowerAmplifier => "power_amplifier",
        }
    }
}

impl FromStr for StageKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mixer_plus_if" => Ok(StageKind::MixerPlusIf),
            "power_amplifier" => Ok(StageKind::PowerAmplifier),
            _ => Err(Error::UnknownName {
                kind: "stage",
                name: s.to_string(),
            }),
        }
    }
}

/// How the transmitter's output noise PSD is formed from the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum TxNoiseModel {
    /// `k·T·F_TX`: input-referred, no chain gain.
    PaperEq2,
    /// `k·T·F_TX·G_chain`: noise as it leaves the PA.
    #[default]
    OutputReferred,
}

impl TxNoiseModel {
    pub fn name(self) -> &'static str {
        match self {
            TxNoiseModel::PaperEq2 => "paper_eq2",
            TxNoiseModel::OutputReferred => "output_referred",
        }
    }
}

impl fmt::Display for TxNoiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TxNoiseModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper_eq2" => Ok(TxNoiseModel::PaperEq2),
            "output_referred" => Ok(TxNoiseModel::OutputReferred),
            _ => Err(Error::UnknownName {
                kind: "tx noise model",
                name: s.to_string(),
            }),
        }
    }
}

/// Linear noise factor and gain of one stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StageParams {
    pub noise_factor: f64,
    pub gain: f64,
}

impl StageParams {
    pub fn new(noise_factor: f64, gain: f64) -> Result<Self> {
        if !(noise_factor >= 1.0 && noise_factor.is_finite()) {
            return Err(domain("noise_factor", noise_factor, "finite and >= 1"));
        }
        if !(gain > 0.0 && gain.is_finite()) {
            return Err(domain("gain", gain, "finite and > 0"));
        }
        Ok(Self { noise_factor, gain })
    }

    pub fn from_db(noise_figure_db: f64, gain_db: f64) -> Result<Self> {
        Self::new(from_db(noise_figure_db)?, from_db(gain_db)?)
    }
}

/// Friis cascade `F = F1 + (F2 − 1)/G1 + (F3 − 1)/(G1·G2) + …`.
pub fn cascaded_noise_factor(stages: &[StageParams]) -> Result<f64> {
    let (first, rest) = stages.split_first().ok_or(Error::Degenerate {
        what: "stage list",
        reason: "empty",
    })?;
    let mut total = first.noise_factor;
    let mut gain = first.gain;
    for s in rest {
        total += (s.noise_factor - 1.0) / gain;
        gain *= s.gain;
    }
    Ok(total)
}

/// Saturated output power trend `intercept − slope·ln(f_GHz)`, dBm.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PowerModel {
    pub intercept_dbm: f64,
    pub slope_dbm_per_ln_ghz: f64,
}

impl PowerModel {
    pub const CMOS: PowerModel = PowerModel {
        intercept_dbm: 53.902,
        slope_dbm_per_ln_ghz: 7.815,
    };

    /// SiGe anchor points (GHz, dBm).
    pub const SIGE_ANCHORS: [(f64, f64); 2] = [(30.0, 25.0), (300.0, 6.0)];

    /// The log-linear trend passing through two (GHz, dBm) points.
    pub fn through_anchors((f1, p1): (f64, f64), (f2, p2): (f64, f64)) -> Result<Self> {
        if !(f1 > 0.0 && f2 > 0.0) || f1 == f2 {
            return Err(Error::Degenerate {
                what: "power model anchors",
                reason: "need two distinct positive frequencies",
            });
        }
        let slope = (p1 - p2) / (libm::log(f2) - libm::log(f1));
        Ok(Self {
            intercept_dbm: p1 + slope * libm::log(f1),
            slope_dbm_per_ln_ghz: slope,
        })
    }

    pub fn for_technology(technology: Technology) -> Self {
        match technology {
            Technology::Cmos => Self::CMOS,
            Technology::Sige => {
                let [a, b] = Self::SIGE_ANCHORS;
                Self::through_anchors(a, b).expect("anchors are distinct")
            }
        }
    }

    pub fn saturated_power_dbm(&self, f_ghz: f64) -> f64 {
        self.intercept_dbm - self.slope_dbm_per_ln_ghz * libm::log(f_ghz)
    }
}

fn check_frequency(f_hz: f64) -> Result<f64> {
    ensure_within(
        "frequency_hz",
        f_hz,
        MIN_FREQUENCY_HZ,
        MAX_FREQUENCY_HZ,
        "30..=500 GHz",
    )
}

/// Stage tables and power trend for one semiconductor technology. Stage
/// order is fixed: mixer first, PA second.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TechnologyProfile {
    pub technology: Technology,
    pub mixer: ComponentBandSpec,
    pub power_amplifier: ComponentBandSpec,
    pub power_model: PowerModel,
}

impl TechnologyProfile {
    fn spec(&self, kind: StageKind) -> &ComponentBandSpec {
        match kind {
            StageKind::MixerPlusIf => &self.mixer,
            StageKind::PowerAmplifier => &self.power_amplifier,
        }
    }

    /// Interpolated (noise figure dB, gain dB) of one stage.
    pub fn interpolate_stage(&self, kind: StageKind, f_hz: f64) -> Result<(f64, f64)> {
        Ok(self.spec(kind).at(check_frequency(f_hz)? / GHZ))
    }

    pub fn cascaded_tx_noise_figure(&self, f_hz: f64) -> Result<f64> {
        self.cascaded_tx_noise_figure_extrapolated(check_frequency(f_hz)?)
    }

    pub fn chain_gain(&self, f_hz: f64) -> Result<f64> {
        Ok(self.chain_gain_extrapolated(check_frequency(f_hz)?))
    }

    /// TX output noise PSD, W/Hz, at ambient temperature `t_env_k`.
    pub fn tx_noise_psd(&self, f_hz: f64, t_env_k: f64, model: TxNoiseModel) -> Result<f64> {
        self.tx_noise_psd_extrapolated(check_frequency(f_hz)?, t_env_k, model)
    }

    pub fn tx_saturated_power_dbm(&self, f_hz: f64) -> Result<f64> {
        Ok(self
            .power_model
            .saturated_power_dbm(check_frequency(f_hz)? / GHZ))
    }

    // The *_extrapolated variants skip the 30-500 GHz check. Band
    // integration around a carrier near either end reaches a little past
    // the tabulated range; the end segments are extended linearly there.

    pub(crate) fn cascaded_tx_noise_figure_extrapolated(&self, f_hz: f64) -> Result<f64> {
        let f_ghz = f_hz / GHZ;
        let stages = [self.mixer.at(f_ghz), self.power_amplifier.at(f_ghz)]
            .map(|(nf, g)| StageParams::from_db(nf, g));
        let [a, b] = stages;
        to_db(cascaded_noise_factor(&[a?, b?])?)
    }

    pub(crate) fn chain_gain_extrapolated(&self, f_hz: f64) -> f64 {
        let f_ghz = f_hz / GHZ;
        self.mixer.at(f_ghz).1 + self.power_amplifier.at(f_ghz).1
    }

    pub(crate) fn tx_noise_psd_extrapolated(
        &self,
        f_hz: f64,
        t_env_k: f64,
        model: TxNoiseModel,
    ) -> Result<f64> {
        if !(t_env_k > 0.0 && t_env_k.is_finite()) {
            return Err(domain("t_env_k", t_env_k, "finite and > 0"));
        }
        let nf_db = self.cascaded_tx_noise_figure_extrapolated(f_hz)?;
        let excess_db = match model {
            TxNoiseModel::PaperEq2 => nf_db,
            TxNoiseModel::OutputReferred => nf_db + self.chain_gain_extrapolated(f_hz),
        };
        Ok(BOLTZMANN * t_env_k * from_db(excess_db)?)
    }
}

#[cfg(test)]
mod tests;
