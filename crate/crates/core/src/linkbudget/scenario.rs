use core::fmt;
use core::str::FromStr;

use alloc::string::ToString;

use crate::atmosphere::AtmosphericConditions;
use crate::channel::LinkGeometry;
use crate::error::{domain, Error, Result};
use crate::txchain::{self, Technology, TxNoiseModel};

pub const DEFAULT_FRACTIONAL_BANDWIDTH: f64 = 0.25;
pub const DEFAULT_INTEGRATION_POINTS: usize = 1001;

/// How the carrier-frequency transmit power is obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "mode", rename_all = "snake_case"))]
pub enum TxPowerMode {
    Fixed {
        dbm: f64,
    },
    /// Saturated output power of the technology's PA trend.
    SaturatedModel,
}

/// Which noise sources enter the receiver noise floor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum NoiseScenario {
    /// `k·T` only, with a pure free-space signal path.
    ThermalOnly,
    /// Thermal plus atmospheric re-emission.
    Baseline,
    /// Baseline plus propagated transmitter noise.
    BaselinePlusTx,
}

impl NoiseScenario {
    pub const ALL: [NoiseScenario; 3] = [Self::ThermalOnly, Self::Baseline, Self::BaselinePlusTx];

    pub fn name(self) -> &'static str {
        match self {
            Self::ThermalOnly => "thermal_only",
            Self::Baseline => "baseline",
            Self::BaselinePlusTx => "baseline_plus_tx",
        }
    }
}

impl fmt::Display for NoiseScenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One value per noise scenario.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PerScenario<T> {
    pub thermal_only: T,
    pub baseline: T,
    pub baseline_plus_tx: T,
}

impl<T: Copy> PerScenario<T> {
    pub fn get(&self, scenario: NoiseScenario) -> T {
        match scenario {
            NoiseScenario::ThermalOnly => self.thermal_only,
            NoiseScenario::Baseline => self.baseline,
            NoiseScenario::BaselinePlusTx => self.baseline_plus_tx,
        }
    }

    pub fn map<U>(self, mut f: impl FnMut(T) -> U) -> PerScenario<U> {
        PerScenario {
            thermal_only: f(self.thermal_only),
            baseline: f(self.baseline),
            baseline_plus_tx: f(self.baseline_plus_tx),
        }
    }
}

/// The three distance classes of the case study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ScenarioPreset {
    Short,
    Medium,
    Long,
}

impl ScenarioPreset {
    pub const ALL: [ScenarioPreset; 3] = [Self::Short, Self::Medium, Self::Long];

    pub fn name(self) -> &'static str {
        match self {
            Self::Short => "short",
            Self::Medium => "medium",
            Self::Long => "long",
        }
    }

    /// Preset scenario at `carrier_hz`. The short preset starts at 1 mm.
    pub fn scenario(self, carrier_hz: f64) -> LinkScenario {
        match self {
            Self::Short => LinkScenario::short_range(1e-3, carrier_hz),
            Self::Medium => LinkScenario::medium_range(carrier_hz),
            Self::Long => LinkScenario::long_range(carrier_hz),
        }
    }
}

impl fmt::Display for ScenarioPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "short" => Ok(Self::Short),
            "medium" => Ok(Self::Medium),
            "long" => Ok(Self::Long),
            _ => Err(Error::UnknownName {
                kind: "scenario preset",
                name: s.to_string(),
            }),
        }
    }
}

/// A complete point-to-point link description.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LinkScenario {
    pub geometry: LinkGeometry,
    pub carrier_frequency_hz: f64,
    pub conditions: AtmosphericConditions,
    pub technology: Technology,
    pub tx_power_mode: TxPowerMode,
    pub tx_noise_model: TxNoiseModel,
    pub fractional_bandwidth: f64,
    pub integration_points: usize,
    /// Replaces the cascaded TX noise figure; the chain gain is then left
    /// out regardless of `tx_noise_model`.
    pub tx_noise_figure_override_db: Option<f64>,
    /// Replaces free-space plus absorption loss at every frequency.
    pub path_loss_override_db: Option<f64>,
}

impl LinkScenario {
    fn with_defaults(
        geometry: LinkGeometry,
        carrier_frequency_hz: f64,
        tx_power_mode: TxPowerMode,
    ) -> Self {
        Self {
            geometry,
            carrier_frequency_hz,
            conditions: AtmosphericConditions::hot(),
            technology: Technology::Cmos,
            tx_power_mode,
            tx_noise_model: TxNoiseModel::default(),
            fractional_bandwidth: DEFAULT_FRACTIONAL_BANDWIDTH,
            integration_points: DEFAULT_INTEGRATION_POINTS,
            tx_noise_figure_override_db: None,
            path_loss_override_db: None,
        }
    }

    /// Isotropic antennas and a fixed 0 dBm transmitter.
    pub fn short_range(distance_m: f64, carrier_hz: f64) -> Self {
        let geometry = LinkGeometry {
            distance_m,
            tx_gain_dbi: 0.0,
            rx_gain_dbi: 0.0,
        };
        Self::with_defaults(geometry, carrier_hz, TxPowerMode::Fixed { dbm: 0.0 })
    }

    /// 100 m with 40 dBi antennas at both ends.
    pub fn medium_range(carrier_hz: f64) -> Self {
        let geometry = LinkGeometry {
            distance_m: 100.0,
            tx_gain_dbi: 40.0,
            rx_gain_dbi: 40.0,
        };
        Self::with_defaults(geometry, carrier_hz, TxPowerMode::SaturatedModel)
    }

    /// 1 km with 56 dBi antennas at both ends.
    pub fn long_range(carrier_hz: f64) -> Self {
        let geometry = LinkGeometry {
            distance_m: 1000.0,
            tx_gain_dbi: 56.0,
            rx_gain_dbi: 56.0,
        };
        Self::with_defaults(geometry, carrier_hz, TxPowerMode::SaturatedModel)
    }

    pub fn distance_m(&self) -> f64 {
        self.geometry.distance_m
    }

    pub fn with_distance(mut self, distance_m: f64) -> Self {
        self.geometry.distance_m = distance_m;
        self
    }

    pub fn with_carrier(mut self, carrier_hz: f64) -> Self {
        self.carrier_frequency_hz = carrier_hz;
        self
    }

    pub fn with_conditions(mut self, conditions: AtmosphericConditions) -> Self {
        self.conditions = conditions;
        self
    }

    pub fn with_technology(mut self, technology: Technology) -> Self {
        self.technology = technology;
        self
    }

    pub fn with_tx_noise_model(mut self, model: TxNoiseModel) -> Self {
        self.tx_noise_model = model;
        self
    }

    pub fn with_integration_points(mut self, points: usize) -> Self {
        self.integration_points = points;
        self
    }

    /// Signal bandwidth `Δf = fractional_bandwidth · f_c`, Hz.
    pub fn bandwidth_hz(&self) -> f64 {
        self.fractional_bandwidth * self.carrier_frequency_hz
    }

    /// Integration band edges, centred on the carrier.
    pub fn band_hz(&self) -> (f64, f64) {
        let half = self.bandwidth_hz() / 2.0;
        (
            self.carrier_frequency_hz - half,
            self.carrier_frequency_hz + half,
        )
    }

    pub fn validate(&self) -> Result<()> {
        self.geometry.validate()?;
        self.conditions.validate()?;
        let fc = self.carrier_frequency_hz;
        if !(txchain::MIN_FREQUENCY_HZ..=txchain::MAX_FREQUENCY_HZ).contains(&fc) {
            return Err(domain("carrier_frequency_hz", fc, "30..=500 GHz"));
        }
        let fb = self.fractional_bandwidth;
        if !(fb > 0.0 && fb <= 0.5) {
            return Err(domain("fractional_bandwidth", fb, "0 < fb <= 0.5"));
        }
        let n = self.integration_points;
        if n < 3 || n.is_multiple_of(2) {
            return Err(domain("integration_points", n as f64, "odd and >= 3"));
        }
        if let TxPowerMode::Fixed { dbm } = self.tx_power_mode {
            if !dbm.is_finite() {
                return Err(domain("tx_power_dbm", dbm, "finite"));
            }
        }
        if let Some(nf) = self.tx_noise_figure_override_db {
            if !(nf >= 0.0 && nf.is_finite()) {
                return Err(domain("tx_noise_figure_override_db", nf, "finite and >= 0"));
            }
        }
        if let Some(pl) = self.path_loss_override_db {
            if !pl.is_finite() {
                return Err(domain("path_loss_override_db", pl, "finite"));
            }
        }
        Ok(())
    }
}
